#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "elastica/geometry.hpp"

namespace elastica::analysis {

// h(alpha) = (sqrt(cos alpha) / sin alpha) int_0^alpha sqrt(cos t) dt,
// the endpoint curvature of the optimal arc; always in (0, 1].
double h_alpha(double alpha);

// E'(alpha) = h (2 - h).
double E_prime(double alpha);

// E''(alpha) = (2 cos a / sin a)(1-h)(1 - h (1 + tan^2 a / 2)), evaluated in
// the algebraically equivalent form
//   (2 cos a / sin a)(1-h)^2 - (1-h) K sin a / sqrt(cos a)
// which stays finite-precision friendly up to pi/2 (where the true value
// diverges to -inf). Strictly negative on (0, pi/2].
double E_second(double alpha);

// R(alpha) = int_0^alpha sqrt(cos) - 2 sin a cos^{3/2} a / (1 + cos^2 a),
// the stabilized form of the concavity certificate; >= 0 with R(0) = 0.
double R_alpha(double alpha);

// R'(alpha) = 16 sin^2 a sqrt(cos a) / (cos 2a + 3)^2 >= 0.
double R_prime(double alpha);

struct EAlphaRow {
    double alpha, E, Ep_analytic, Ep_fd, Esecond, h, R;
};

// One row per alpha on the grid alpha_i = i (pi/2) / grid_n, i = 1..grid_n.
// The finite-difference E' column is central except at pi/2 (one-sided).
std::vector<EAlphaRow> ealpha_table(int grid_n);

struct SubadditivityReport {
    double min_gap = 0.0;  // min of E(a) + E(b) - E(a+b), positive
    double argmin_alpha = 0.0, argmin_beta = 0.0;
    long pairs = 0;
};

// Scans all grid pairs with alpha, beta > 0 and alpha + beta <= pi/2 (the
// domain of E). A violated pair is reported, not thrown.
SubadditivityReport subadditivity_scan(int grid_n);

struct ContactSplit {
    double t_min = 0.0;  // minimizer of e(t) = E(t) + E(gamma - t)
    double e_min = 0.0;
};

// Minimizes e(t) over t in [gamma - pi/2, pi/2] for gamma in [pi/2, pi] by a
// grid with golden refinement. Asserts (throws InvariantViolation) that the
// minimizer is an interval endpoint and that e rises then falls about
// gamma/2, the concavity consequence the contact-splitting argument uses.
ContactSplit contact_split(double gamma, int grid_n = 512);

struct InequalityRow {
    std::string name;  // "EP", "E2A", "ED", "ER", "Er"
    double product = 0.0, bound = 0.0, deficit = 0.0;
    bool pass = false;
    bool equality = false;  // |deficit| within the discretization tolerance
};

struct InequalityReport {
    geom::FunctionalsReport functionals;
    std::array<InequalityRow, 5> rows;
    double max_turning = 0.0;
    bool all_pass = false;
};

// The five sharp scale-invariant inequalities: E P >= 2 pi^2, E^2 A >= pi^2,
// E D >= 2 pi, E R >= pi, and E r >= 2 (int_0^{pi/2} sqrt(cos))^2. Pass/fail
// is judged at 1e-3 relative tolerance against the discretization error of
// finely sampled bodies. Refuses bodies with max turning angle > 0.6 rad.
InequalityReport inequality_suite(const geom::ConvexBody& body);

struct ShapeFamily {
    enum class Kind { Ellipse, Fourier };
    Kind kind = Kind::Fourier;
    double a = 2.0, b = 1.0;  // ellipse semi-axes
    int max_harmonic = 4;     // Fourier support-function harmonics (>= 2)

    static ShapeFamily ellipse(double a, double b);
    static ShapeFamily fourier(int max_harmonic);
};

// Deterministic seeded generator of smooth strictly convex bodies via
// support-function Fourier series with positive curvature radius.
geom::ConvexBody random_smooth_body(std::uint64_t seed, int n, const ShapeFamily& family);

}  // namespace elastica::analysis
