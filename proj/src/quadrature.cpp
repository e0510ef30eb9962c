#include "elastica/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace elastica::quad {

namespace {

struct AdaptState {
    const std::function<double(double)>& f;
    long evals = 0;
    double err_acc = 0;
};

double recurse(AdaptState& st, double a, double b, double fa, double fm, double fb,
               double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = st.f(lm);
    const double frm = st.f(rm);
    st.evals += 2;
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    const double width_floor = 16.0 * 2.220446049250313e-16 * std::max({std::abs(a), std::abs(b), 1.0});
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol || (b - a) <= width_floor) {
        st.err_acc += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    return recurse(st, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           recurse(st, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// Regularized tail integrand of 1/sqrt(cos): after t = pi/2 - v^2 the
// integrand becomes 2v / sqrt(sin(v^2)) = 2 / sqrt(sinc(v^2)), bounded and
// smooth through v = 0.
double inv_sqrt_cos_sub(double v) {
    const double w = v * v;
    if (w < 1e-8) {
        // sin(w)/w = 1 - w^2/6 + ...
        return 2.0 / std::sqrt(1.0 - w * w / 6.0);
    }
    return 2.0 * v / std::sqrt(std::sin(w));
}

double check_range_half_pi(double alpha, const char* op) {
    const double slack = 8.0 * 2.220446049250313e-16;
    if (!(alpha >= -slack && alpha <= kHalfPi + slack)) {
        throw DomainError(std::string(op) + ": alpha outside [0, pi/2]");
    }
    return std::clamp(alpha, 0.0, kHalfPi);
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, int max_depth) {
    if (!(b >= a)) throw DomainError("integrate: b < a");
    QuadResult res;
    if (a == b) return res;
    AdaptState st{f};
    const double fa = f(a);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double fb = f(b);
    st.evals = 3;
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    res.value = recurse(st, a, b, fa, fm, fb, whole, abs_tol, max_depth);
    res.est_error = st.err_acc;
    res.evaluations = st.evals;
    if (!(res.est_error < abs_tol) || !std::isfinite(res.value)) {
        throw QuadratureError("adaptive Simpson failed to reach tolerance");
    }
    return res;
}

double int_sqrt_cos(double alpha) {
    alpha = check_range_half_pi(alpha, "int_sqrt_cos");
    if (alpha == 0.0) return 0.0;
    auto f = [](double t) { return std::sqrt(std::max(std::cos(t), 0.0)); };
    return integrate(f, 0.0, alpha, 1e-12).value;
}

double int_inv_sqrt_cos(double alpha) {
    alpha = check_range_half_pi(alpha, "int_inv_sqrt_cos");
    if (alpha == 0.0) return 0.0;
    const double split = kHalfPi - 1e-3;
    auto direct = [](double t) { return 1.0 / std::sqrt(std::cos(t)); };
    if (alpha <= split) {
        return integrate(direct, 0.0, alpha, 1e-10).value;
    }
    const double head = integrate(direct, 0.0, split, 5e-11).value;
    // Tail over t in [split, alpha] maps to v in [sqrt(pi/2 - alpha), sqrt(1e-3)].
    const double v_hi = std::sqrt(kHalfPi - split);
    const double v_lo = std::sqrt(std::max(kHalfPi - alpha, 0.0));
    const double tail = integrate(inv_sqrt_cos_sub, v_lo, v_hi, 5e-11).value;
    return head + tail;
}

double int_inv_sqrt_cos_smooth(double alpha) {
    alpha = check_range_half_pi(alpha, "int_inv_sqrt_cos_smooth");
    const double v_lo = std::sqrt(std::max(kHalfPi - alpha, 0.0));
    const double v_hi = std::sqrt(kHalfPi);
    constexpr int kPanels = 512;
    const double h = (v_hi - v_lo) / kPanels;
    if (h <= 0.0) return 0.0;
    double ends = inv_sqrt_cos_sub(v_lo) + inv_sqrt_cos_sub(v_hi);
    double inner = 0.0, mid = 0.0;
    for (int i = 1; i < kPanels; ++i) {
        inner += inv_sqrt_cos_sub(v_lo + i * h);
    }
    for (int i = 0; i < kPanels; ++i) {
        mid += inv_sqrt_cos_sub(v_lo + (i + 0.5) * h);
    }
    return (ends + 2.0 * inner + 4.0 * mid) * h / 6.0;
}

double invert_monotone(const std::function<double(double)>& f, double target,
                       double lo, double hi, const std::function<double(double)>& df) {
    if (!(hi >= lo)) throw BracketViolation("invert_monotone: empty bracket");
    double flo = f(lo), fhi = f(hi);
    const double slack = 1e-9 * (std::abs(fhi - flo) + std::abs(target)) + 1e-13;
    if (target < flo - slack || target > fhi + slack) {
        throw BracketViolation("invert_monotone: target outside f(bracket)");
    }
    const double ftol = 1e-12 * std::abs(target) + 1e-14;
    if (std::abs(flo - target) <= ftol) return lo;
    if (std::abs(fhi - target) <= ftol) return hi;
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double fx = f(x);
        if (std::abs(fx - target) <= ftol) return x;
        if (fx < target) lo = x; else hi = x;
        double next = 0.5 * (lo + hi);
        if (df) {
            const double d = df(x);
            if (d > 0.0 && std::isfinite(d)) {
                const double newton = x - (fx - target) / d;
                if (newton > lo && newton < hi) next = newton;
            }
        }
        if (hi - lo <= 8.0 * 2.220446049250313e-16 * std::max(std::abs(lo), std::abs(hi))) {
            return next;
        }
        x = next;
    }
    return x;
}

double elliptic_F(double phi, double m) {
    if (phi < 0.0) return -elliptic_F(-phi, m);
    if (phi == 0.0) return 0.0;
    auto direct = [m](double t) {
        const double p = 1.0 - m * std::sin(t) * std::sin(t);
        return 1.0 / std::sqrt(p);
    };
    if (m < 1.0) {
        // 1 - m sin^2 t >= 1 - m > 0: smooth everywhere
        return integrate(direct, 0.0, phi, 1e-10).value;
    }
    // t* is where the integrand becomes singular
    const double tstar = std::asin(std::sqrt(1.0 / m));
    const double slack = 8.0 * 2.220446049250313e-16 * (1.0 + tstar);
    if (phi > tstar + slack) {
        throw DomainError("elliptic_F: 1 - m sin^2 t < 0 inside the range");
    }
    const double p = std::min(phi, tstar);
    const double split = tstar - 1e-3;
    if (p <= split) {
        return integrate(direct, 0.0, p, 1e-10).value;
    }
    double acc = (split > 0.0) ? integrate(direct, 0.0, split, 5e-11).value : 0.0;
    // Near t*, use 1 - m sin^2 t = m sin(t* + t) sin(t* - t) (exact since
    // sin^2 t* = 1/m) and substitute t = t* - v^2.
    auto tail = [m, tstar](double v) {
        const double w = v * v;
        const double s = (w < 1e-8) ? (1.0 - w * w / 6.0) : std::sin(w) / w;
        return 2.0 / std::sqrt(m * std::sin(tstar + tstar - w) * s);
    };
    const double v_hi = std::sqrt(tstar - split);
    // phi at the singular endpoint itself: snap, otherwise the ulp gap
    // between phi and the computed t* costs sqrt(ulp) accuracy
    const double gap = tstar - p;
    const double v_lo = (gap <= 16.0 * 2.220446049250313e-16 * tstar) ? 0.0 : std::sqrt(gap);
    acc += integrate(tail, v_lo, v_hi, 5e-11).value;
    return acc;
}

double jacobi_am(double u, double m) {
    if (u == 0.0) return 0.0;
    if (u < 0.0) return -jacobi_am(-u, m);
    if (m == 1.0) {
        // F(.|1) diverges logarithmically at pi/2; this inverse branch is
        // out of scope
        throw DomainError("jacobi_am: the m = 1 branch is not supported");
    }
    const double phi_max = (m > 1.0) ? std::asin(std::sqrt(1.0 / m)) : kHalfPi;
    const double u_max = elliptic_F(phi_max, m);
    if (!(u <= u_max * (1.0 + 1e-12) + 1e-14)) {
        throw DomainError("jacobi_am: argument beyond the real branch of F(.|m)");
    }
    auto F = [m](double p) { return elliptic_F(p, m); };
    auto dF = [m](double p) {
        const double q = 1.0 - m * std::sin(p) * std::sin(p);
        return (q > 0.0) ? 1.0 / std::sqrt(q) : 0.0;
    };
    return invert_monotone(F, std::min(u, u_max), 0.0, phi_max, dF);
}

}  // namespace elastica::quad
