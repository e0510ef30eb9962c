#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "elastica/geometry.hpp"

namespace elastica::solver {

// Discretized constrained minimization of 1/2 int theta'^2 over arcs joining
// the two contact tangency conditions: pinned ends theta(0) = 0,
// theta(L) = 2 alpha and the two endpoint integral constraints
//   int cos theta = sin 2 alpha,  int sin theta = 1 - cos 2 alpha.
struct ElasticaProblem {
    double alpha = kHalfPi;        // in (0, pi/2]
    double L = 0.0;                // fixed arc length, > chord 2 sin alpha
    int n = 800;                   // grid cells, >= 32
    bool enforce_convexity = true; // project onto nondecreasing theta
};

struct ElasticaSolution {
    double alpha = 0.0;
    double L = 0.0;
    Eigen::VectorXd theta;           // n+1 grid values
    double energy = 0.0;
    double r_cos = 0.0, r_sin = 0.0; // integral-constraint residuals
    Eigen::Vector3d multiplier_fit{0, 0, 0};  // (c0, c1, c2) affine fit
    double kkt = 0.0;                // kkt_residual of the iterate
    bool converged = false;
    long iterations = 0;
    std::string message;

    geom::TangentAngleArc arc() const;
};

// Thrown when the inner loop exhausts its budget; carries the best iterate.
struct NonConvergence : std::runtime_error {
    NonConvergence(const std::string& msg, ElasticaSolution best)
        : std::runtime_error(msg), best(std::move(best)) {}
    ElasticaSolution best;
};

// Exact Euclidean projection onto the cone of nondecreasing sequences
// (pool-adjacent-violators), in place.
void project_nondecreasing(Eigen::VectorXd& v);

// Augmented Lagrangian outer loop with a projected-gradient inner loop
// (Barzilai-Borwein steps; PAV projection when convexity is enforced).
// Deterministic linear initialization. Terminates when both constraint
// residuals are < 1e-8 and the projected-gradient norm is < 1e-7.
ElasticaSolution solve_fixed_length(const ElasticaProblem& problem);

// Golden-section search of solve_fixed_length energy over L (tolerance 1e-6
// in L); returns the best solution found.
ElasticaSolution solve_free_length(double alpha, std::pair<double, double> L_bracket,
                                   int n = 800, bool enforce_convexity = true);

// First-order pendulum form of the optimality ODE,
// theta'(s) = sqrt(c^2 - a0 sin theta), integrated from theta(0) = 0 by
// adaptive fourth-order stepping until theta = pi or s = L_max.
struct ShootResult {
    enum class Status { HitPi, LMaxExhausted, Stalled };
    Status status = Status::LMaxExhausted;
    std::vector<double> s, theta;  // path nodes
    double L_hit = 0.0;            // defined when status == HitPi
    double integral_sin = 0.0;     // int sin(theta) ds along the path
    double energy = 0.0;           // 1/2 int theta'^2 ds along the path
};

ShootResult shoot_pendulum(double c, double a0, double L_max);

// Two-unknown shooting for the alpha = pi/2 boundary value problem at fixed
// L > pi: damped Newton for (c, a0) such that the hitting length equals L
// and int_0^{pi/2} sin u / sqrt(c^2 - a0 sin u) du = 1. Real solutions exist
// for L up to the closed-form length L0 (c -> 0); beyond it the limiting
// c = 0 solution is returned with converged = false and the length residual
// reported.
struct ShootingSolution {
    double c = 0.0, a0 = 0.0;
    double energy = 0.0;        // c^2 L / 2 - a0, cross-checked vs the integral
    double res_length = 0.0;    // hitting-length residual
    double res_constraint = 0.0;
    bool converged = false;
    int newton_iterations = 0;
};

ShootingSolution solve_bvp_via_shooting(double L);

// Normalized RMS residual of the first-order optimality form: the best fit
// theta' ~ max(0, c0 + c1 (y+1) + c2 x) over the reconstructed arc, combined
// with the strictly-convex free-length identity
// theta'^2 / 2 = -lambda2 sin theta - lambda1 cos theta (no free constant;
// this is the part a fixed-length critical point such as the half circle
// fails). Fitted constants have free signs.
double kkt_residual(const geom::TangentAngleArc& arc, Eigen::Vector3d* fit_out = nullptr);

}  // namespace elastica::solver
