#pragma once

#include <functional>

#include "elastica/common.hpp"

namespace elastica::quad {

struct QuadResult {
    double value = 0;
    double est_error = 0;
    long evaluations = 0;
};

// Adaptive Simpson with absolute tolerance. The estimated error is the sum of
// the Richardson estimates of the accepted leaves, so est_error < abs_tol on
// return (QuadratureError otherwise).
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, int max_depth = 64);

// int_0^alpha sqrt(cos t) dt for alpha in [0, pi/2], abs tol 1e-12. The
// integrand is bounded; its derivative singularity at pi/2 is absorbed by the
// adaptive recursion.
double int_sqrt_cos(double alpha);

// int_0^alpha dt / sqrt(cos t) for alpha in [0, pi/2], abs tol 1e-10. The
// integrand blows up at pi/2; the tail beyond pi/2 - 1e-3 is computed with
// the substitution t = pi/2 - v^2, which maps it to the bounded smooth
// integrand 2v / sqrt(sin(v^2)).
double int_inv_sqrt_cos(double alpha);

// Same integral by a fixed 512-panel composite Simpson rule on the
// substituted integrand. Slightly less accurate (~1e-12) but its error varies
// smoothly with alpha, so results can be finite-differenced without noise
// amplification. Used by the arc sampler, whose output is differentiated
// twice in the shape-derivative checks.
double int_inv_sqrt_cos_smooth(double alpha);

// Solve f(x) = target for strictly increasing f on [lo, hi]. Bisection
// refined by Newton when a derivative is supplied. Stops when
// |f(x) - target| <= 1e-12 |target| + 1e-14 or the bracket collapses.
double invert_monotone(const std::function<double(double)>& f, double target,
                       double lo, double hi,
                       const std::function<double(double)>& df = nullptr);

// Incomplete elliptic integral of the first kind in the parameter convention
// F(phi | m) = int_0^phi dt / sqrt(1 - m sin^2 t). Note m (not the modulus k)
// and that m = 2 is deliberately supported: the real branch then requires
// |phi| <= pi/4, with an integrable endpoint singularity at |phi| = pi/4.
double elliptic_F(double phi, double m);

// Jacobi amplitude am(u | m), the inverse of F(. | m), on the real branch
// where F is defined (|phi| <= asin(1/sqrt(m)) for m > 1).
double jacobi_am(double u, double m);

}  // namespace elastica::quad
