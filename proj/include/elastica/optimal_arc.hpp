#pragma once

#include "elastica/geometry.hpp"

namespace elastica::arc {

// Constants of the energy-minimizing arc between two contact points
// subtending the half-angle alpha. The arc satisfies the autonomous ODE
// theta'(s) = K sqrt(cos(theta - alpha)) with theta(0) = 0, theta(L) = 2 alpha,
// which degenerates to theta' = a sqrt(sin theta) at alpha = pi/2.
struct OptimalArcSpec {
    double alpha = 0.0;    // half the contact angle, in (0, pi/2]
    double K = 0.0;        // curvature scale (1/sin a) int_0^a sqrt(cos)
    double lambda1 = 0.0;  // Lagrange multipliers of the endpoint constraints
    double lambda2 = 0.0;  // lambda2 = lambda1 tan(alpha); lambda1 -> 0 at pi/2
    double length = 0.0;   // arc length L_alpha

    static OptimalArcSpec make(double alpha);
    // Endpoint curvature theta'(0) = theta'(L) = K sqrt(cos alpha) <= 1.
    double endpoint_curvature() const;
};

// (lambda1, lambda2) for the arc at the given half-angle.
std::pair<double, double> multipliers(double alpha);

// E(alpha) = (1 / sin alpha) (int_0^alpha sqrt(cos t) dt)^2.
double energy_closed_form(double alpha);

// L_alpha = (2 / K_alpha) int_0^alpha dt / sqrt(cos t).
double arc_length(double alpha);

// Arclength at tangent angle theta in [0, 2 alpha] along the closed-form arc.
double arc_s_of_theta(double alpha, double theta);

// Curvature of the closed-form arc at tangent angle theta.
double curvature_of_theta(double alpha, double theta);

// Samples the closed-form arc on a uniform arclength grid by inverting
// s(theta). The ODE right side vanishes at one or both endpoints, so monotone
// inversion of the quadrature form replaces forward stepping. n >= 16.
geom::TangentAngleArc build_arc(double alpha, int n);

// The optimal inradius-1 domain: the alpha = pi/2 arc on x >= 0 mirrored
// across x = 0, optionally split at the poles by horizontal segments of
// half-length h >= 0 (the "stadium" family, which changes neither the energy
// nor the inradius).
struct OptimalDomain {
    geom::ConvexBody body;
    OptimalArcSpec spec;
    double segment_half_length = 0.0;
};

OptimalDomain build_omega_star(int n, double segment_half_length = 0.0);

}  // namespace elastica::arc
