#include "elastica/solver.hpp"

#include <algorithm>
#include <cmath>

#include "elastica/quadrature.hpp"

namespace elastica::solver {

namespace {

constexpr double kResidualTol = 1e-8;
constexpr double kGradTol = 1e-7;
constexpr long kInnerBudget = 100000;

struct Discretization {
    double alpha, L, h;
    int n;  // cells; theta has n+1 points
    double target_cos, target_sin;
};

double energy_of(const Eigen::VectorXd& theta, double h) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i + 1 < theta.size(); ++i) {
        const double d = theta[i + 1] - theta[i];
        acc += d * d;
    }
    return 0.5 * acc / h;
}

void constraint_residuals(const Discretization& d, const Eigen::VectorXd& theta,
                          double& g_cos, double& g_sin) {
    const Eigen::Index n = theta.size();
    double sc = 0.0, ss = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        sc += w * std::cos(theta[i]);
        ss += w * std::sin(theta[i]);
    }
    g_cos = d.h * sc - d.target_cos;
    g_sin = d.h * ss - d.target_sin;
}

}  // namespace

geom::TangentAngleArc ElasticaSolution::arc() const {
    geom::TangentAngleArc a;
    a.length = L;
    a.theta = theta;
    a.start = geom::Point(0.0, -1.0);
    return a;
}

void project_nondecreasing(Eigen::VectorXd& v) {
    const Eigen::Index n = v.size();
    if (n < 2) return;
    // pool-adjacent-violators with uniform weights
    std::vector<double> value(static_cast<std::size_t>(n));
    std::vector<long> count(static_cast<std::size_t>(n));
    std::size_t top = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        value[top] = v[i];
        count[top] = 1;
        ++top;
        while (top > 1 && value[top - 2] > value[top - 1]) {
            const long c = count[top - 2] + count[top - 1];
            value[top - 2] = (value[top - 2] * double(count[top - 2]) +
                              value[top - 1] * double(count[top - 1])) / double(c);
            count[top - 2] = c;
            --top;
        }
    }
    Eigen::Index k = 0;
    for (std::size_t b = 0; b < top; ++b) {
        for (long j = 0; j < count[b]; ++j) v[k++] = value[b];
    }
}

ElasticaSolution solve_fixed_length(const ElasticaProblem& problem) {
    if (!(problem.alpha > 0.0 && problem.alpha <= kHalfPi + 1e-12)) {
        throw DomainError("solve_fixed_length: alpha outside (0, pi/2]");
    }
    if (problem.n < 32) throw DomainError("solve_fixed_length: n < 32");
    const double alpha = std::min(problem.alpha, kHalfPi);
    const double chord = 2.0 * std::sin(alpha);
    if (problem.L < chord * (1.0 + 1e-9)) {
        throw InfeasibleLength("solve_fixed_length: L below the chord length 2 sin(alpha)");
    }

    Discretization d;
    d.alpha = alpha;
    d.L = problem.L;
    d.n = problem.n;
    d.h = problem.L / problem.n;
    d.target_cos = std::sin(2.0 * alpha);
    d.target_sin = 1.0 - std::cos(2.0 * alpha);

    const Eigen::Index m = d.n + 1;
    Eigen::VectorXd theta(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        theta[i] = 2.0 * alpha * double(i) / double(d.n);  // deterministic linear start
    }

    auto project = [&](Eigen::VectorXd& th) {
        th[0] = 0.0;
        th[m - 1] = 2.0 * alpha;
        if (problem.enforce_convexity) {
            Eigen::VectorXd interior = th.segment(1, m - 2);
            project_nondecreasing(interior);
            th.segment(1, m - 2) =
                interior.cwiseMax(0.0).cwiseMin(2.0 * alpha);
        }
    };
    project(theta);

    double mu_cos = 0.0, mu_sin = 0.0;
    double rho = 10.0;
    double g_cos = 0.0, g_sin = 0.0;

    auto grad = [&](const Eigen::VectorXd& th, Eigen::VectorXd& g) {
        constraint_residuals(d, th, g_cos, g_sin);
        const double wc = mu_cos + rho * g_cos;
        const double ws = mu_sin + rho * g_sin;
        g.setZero();
        for (Eigen::Index i = 1; i < m - 1; ++i) {
            g[i] = (2.0 * th[i] - th[i - 1] - th[i + 1]) / d.h +
                   d.h * (-wc * std::sin(th[i]) + ws * std::cos(th[i]));
        }
    };
    ElasticaSolution out;
    out.alpha = alpha;
    out.L = problem.L;

    long total_inner = 0;
    Eigen::VectorXd g(m), g_prev(m), theta_prev(m), trial(m);
    double pg_norm = 1.0;
    bool done = false;
    double res_prev_outer = std::numeric_limits<double>::infinity();

    for (int outer = 0; outer < 60 && !done; ++outer) {
        grad(theta, g);
        double step = d.h / 4.0;  // ~1/Lip of the stiffness part

        for (long inner = 0; inner < 20000; ++inner) {
            ++total_inner;
            trial = theta - step * g;
            project(trial);

            // natural residual at unit step for the stopping test
            Eigen::VectorXd unit = theta - g;
            project(unit);
            pg_norm = (theta - unit).lpNorm<Eigen::Infinity>();

            theta_prev = theta;
            g_prev = g;
            theta = trial;
            grad(theta, g);
            if (!theta.allFinite()) {
                theta = theta_prev;
                grad(theta, g);
                step = d.h / 4.0;
                continue;
            }

            // Barzilai-Borwein step, alternating forms, safeguarded
            const Eigen::VectorXd s = theta - theta_prev;
            const Eigen::VectorXd y = g - g_prev;
            const double sy = s.dot(y);
            if (sy > 0.0) {
                step = (inner & 1) ? sy / y.dot(y) : s.dot(s) / sy;
                step = std::clamp(step, 1e-9, 1e3);
            } else {
                step = d.h / 4.0;
            }

            if (pg_norm < kGradTol) break;
            if (total_inner >= kInnerBudget) break;
        }

        constraint_residuals(d, theta, g_cos, g_sin);
        const double res = std::max(std::abs(g_cos), std::abs(g_sin));
        if (res < kResidualTol && pg_norm < kGradTol) {
            done = true;
            break;
        }
        if (total_inner >= kInnerBudget) break;

        mu_cos += rho * g_cos;
        mu_sin += rho * g_sin;
        // grow the penalty only when multiplier updates alone stall
        if (res > 0.25 * res_prev_outer) rho = std::min(rho * 2.0, 1e6);
        res_prev_outer = res;
    }

    constraint_residuals(d, theta, g_cos, g_sin);
    out.theta = theta;
    out.energy = energy_of(theta, d.h);
    out.r_cos = g_cos;
    out.r_sin = g_sin;
    out.iterations = total_inner;
    out.converged = done;
    out.kkt = kkt_residual(out.arc(), &out.multiplier_fit);
    if (!done) {
        out.message = "inner iteration budget exhausted";
        throw NonConvergence("solve_fixed_length: no convergence within budget", out);
    }
    return out;
}

ElasticaSolution solve_free_length(double alpha, std::pair<double, double> L_bracket,
                                   int n, bool enforce_convexity) {
    const double chord = 2.0 * std::sin(std::min(alpha, kHalfPi));
    double lo = L_bracket.first, hi = L_bracket.second;
    if (!(hi > lo) || lo < chord) {
        throw BracketViolation("solve_free_length: bad L bracket");
    }

    auto energy_at = [&](double L) {
        ElasticaProblem p;
        p.alpha = alpha;
        p.L = L;
        p.n = n;
        p.enforce_convexity = enforce_convexity;
        return solve_fixed_length(p);
    };

    // golden-section to 1e-6 in L
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    ElasticaSolution s1 = energy_at(x1);
    ElasticaSolution s2 = energy_at(x2);
    while (hi - lo > 1e-6) {
        if (s1.energy <= s2.energy) {
            hi = x2;
            x2 = x1;
            s2 = s1;
            x1 = hi - gr * (hi - lo);
            s1 = energy_at(x1);
        } else {
            lo = x1;
            x1 = x2;
            s1 = s2;
            x2 = lo + gr * (hi - lo);
            s2 = energy_at(x2);
        }
    }
    ElasticaSolution best = (s1.energy <= s2.energy) ? s1 : s2;
    if (best.L <= L_bracket.first + 2e-6 || best.L >= L_bracket.second - 2e-6) {
        throw BracketViolation("solve_free_length: minimizer at bracket boundary");
    }
    return best;
}

namespace {

double pendulum_speed(double c, double a0, double th) {
    return std::sqrt(std::max(c * c - a0 * std::sin(th), 0.0));
}

// Integrand of the sqrt-substituted length integral near a degenerate end:
// with u = v^2 the kernel 1/sqrt(c^2 - a0 sin u) du becomes
// 2v / sqrt(c^2 - a0 v^2 sinc(v^2)) dv, bounded even as c -> 0.
double length_sub_kernel(double c, double a0, double v) {
    const double u = v * v;
    const double sc = (u < 1e-8) ? 1.0 - u * u / 6.0 : std::sin(u) / u;
    if (v == 0.0) {
        return (c > 0.0) ? 0.0 : 2.0 / std::sqrt(-a0 * sc);
    }
    return 2.0 * v / std::sqrt(c * c - a0 * u * sc);
}

// int_{th0}^{th1} du / sqrt(c^2 - a0 sin u) with substitution u = v^2 /
// u = pi - v^2 near the degenerate ends (needed as c -> 0 with a0 < 0).
double length_between(double c, double a0, double th0, double th1) {
    auto direct = [&](double u) { return 1.0 / pendulum_speed(c, a0, u); };
    double acc = 0.0;
    const double cut = 0.25;
    double lo = th0, hi = th1;
    if (lo < cut && a0 < 0.0) {
        const double upper = std::min(hi, cut);
        auto sub = [&](double v) { return length_sub_kernel(c, a0, v); };
        acc += quad::integrate(sub, std::sqrt(lo), std::sqrt(upper), 1e-11).value;
        lo = upper;
    }
    if (hi > kPi - cut && a0 < 0.0 && hi > lo) {
        const double lower = std::max(lo, kPi - cut);
        auto sub = [&](double v) { return length_sub_kernel(c, a0, v); };
        acc += quad::integrate(sub, std::sqrt(kPi - hi), std::sqrt(kPi - lower), 1e-11).value;
        hi = lower;
    }
    if (hi > lo) acc += quad::integrate(direct, lo, hi, 1e-11).value;
    return acc;
}

}  // namespace

ShootResult shoot_pendulum(double c, double a0, double L_max) {
    if (c * c < a0 - 1e-12) throw DomainError("shoot_pendulum: needs c^2 >= a0");
    if (!(L_max > 0.0)) throw DomainError("shoot_pendulum: L_max must be positive");

    ShootResult out;
    double s = 0.0, th = 0.0, isin = 0.0, ien = 0.0;
    out.s.push_back(0.0);
    out.theta.push_back(0.0);

    auto f = [&](double u) { return pendulum_speed(c, a0, u); };
    double h = std::min(1e-3, L_max / 16.0);
    const double tol = 1e-11;

    // RK4 step on the augmented state (theta, int sin theta, int theta'^2);
    // the auxiliary integrals ride along at the same order.
    auto rk4 = [&](double th0, double dt, double& dsin, double& den) {
        const double k1 = f(th0);
        const double t2 = th0 + 0.5 * dt * k1;
        const double k2 = f(t2);
        const double t3 = th0 + 0.5 * dt * k2;
        const double k3 = f(t3);
        const double t4 = th0 + dt * k3;
        const double k4 = f(t4);
        dsin = dt / 6.0 * (std::sin(th0) + 2.0 * std::sin(t2) + 2.0 * std::sin(t3) + std::sin(t4));
        den = dt / 6.0 * (k1 * k1 + 2.0 * k2 * k2 + 2.0 * k3 * k3 + k4 * k4);
        return th0 + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };

    const double turn_scale = std::max({std::abs(c), std::sqrt(std::abs(a0)), 1e-9});
    long guard = 0;
    while (s < L_max) {
        if (++guard > 4000000) break;
        const double speed = f(th);
        const double slope = -a0 * std::cos(th);
        if (speed < 1e-9 * turn_scale && slope <= 0.0 && th < kPi - 1e-9) {
            out.status = ShootResult::Status::Stalled;
            out.integral_sin = isin;
            out.energy = 0.5 * ien;
            return out;
        }
        // switch to the exact quadrature tail once past the last turning risk
        if (th > kPi - 0.2 && a0 * std::cos(th) <= 0.0) {
            const double rem = length_between(c, a0, th, kPi);
            if (s + rem <= L_max) {
                auto g_sin = [&](double u) { return std::sin(u) / f(u); };
                auto g_en = [&](double u) { return f(u); };
                isin += quad::integrate(g_sin, th, kPi, 1e-11).value;
                ien += quad::integrate(g_en, th, kPi, 1e-11).value;
                s += rem;
                th = kPi;
                out.s.push_back(s);
                out.theta.push_back(th);
                out.status = ShootResult::Status::HitPi;
                out.L_hit = s;
                out.integral_sin = isin;
                out.energy = 0.5 * ien;
                return out;
            }
        }
        h = std::min(h, L_max - s);
        if (h <= 0.0) break;
        // step doubling error control on theta
        double dsin_f, den_f, dsin_1, den_1, dsin_2, den_2;
        const double full = rk4(th, h, dsin_f, den_f);
        const double mid = rk4(th, 0.5 * h, dsin_1, den_1);
        const double half = rk4(mid, 0.5 * h, dsin_2, den_2);
        const double err = std::abs(full - half) / 15.0;
        const double tol_here = tol * (1.0 + std::abs(th));
        if (err > tol_here && h > 1e-12) {
            h *= std::clamp(0.9 * std::pow(tol_here / (err + 1e-300), 0.2), 0.2, 1.0);
            continue;
        }
        th = std::min(half + (half - full) / 15.0, kPi);
        isin += dsin_1 + dsin_2;
        ien += den_1 + den_2;
        s += h;
        out.s.push_back(s);
        out.theta.push_back(th);
        if (err < 0.25 * tol_here) h = std::min(h * 1.7, 0.05);
        if (th >= kPi) {
            out.status = ShootResult::Status::HitPi;
            out.L_hit = s;
            break;
        }
    }
    if (out.status != ShootResult::Status::HitPi) {
        out.status = ShootResult::Status::LMaxExhausted;
    }
    out.integral_sin = isin;
    out.energy = 0.5 * ien;
    return out;
}

ShootingSolution solve_bvp_via_shooting(double L) {
    if (!(L > kPi * (1.0 + 1e-9))) {
        throw DomainError("solve_bvp_via_shooting: needs L > pi");
    }

    auto length_of = [](double c, double a0) { return length_between(c, a0, 0.0, kPi); };
    auto constraint_of = [](double c, double a0) {
        auto g = [&](double u) {
            return std::sin(u) / std::sqrt(std::max(c * c - a0 * std::sin(u), 1e-300));
        };
        return quad::integrate(g, 0.0, kHalfPi, 1e-11).value - 1.0;
    };

    // Solve the constraint for a0 at fixed c (monotone in a0) to start Newton.
    auto a0_for = [&](double c) {
        double lo = -4.0, hi = c * c - 1e-12;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (constraint_of(c, mid) > 0.0) hi = mid; else lo = mid;
        }
        return 0.5 * (lo + hi);
    };

    const double a_const = quad::int_sqrt_cos(kHalfPi);
    const double L0 = 2.0 * quad::int_inv_sqrt_cos(kHalfPi) / a_const;
    double c = std::clamp(1.0 - (L - kPi) / (L0 - kPi), 1e-3, 0.999);
    double a0 = a0_for(c);

    ShootingSolution sol;
    double f1 = length_of(c, a0) - L;
    double f2 = constraint_of(c, a0);
    double fn = std::hypot(f1, f2);
    for (int it = 0; it < 60; ++it) {
        sol.newton_iterations = it;
        if (fn < 1e-11) {
            sol.converged = true;
            break;
        }
        const double dc = 1e-6, da = 1e-6;
        const double cp = (c - dc >= 0.0) ? c - dc : c + dc;
        const double j11 = (length_of(c + dc, a0) - length_of(cp, a0)) / (c + dc - cp);
        const double j12 = (length_of(c, a0 + da) - length_of(c, a0 - da)) / (2.0 * da);
        const double j21 = (constraint_of(c + dc, a0) - constraint_of(cp, a0)) / (c + dc - cp);
        const double j22 = (constraint_of(c, a0 + da) - constraint_of(c, a0 - da)) / (2.0 * da);
        const double det = j11 * j22 - j12 * j21;
        if (std::abs(det) < 1e-14) break;
        const double step_c = (-f1 * j22 + f2 * j12) / det;
        const double step_a = (-j11 * f2 + j21 * f1) / det;
        double lambda = 1.0;
        bool improved = false;
        for (int bt = 0; bt < 30; ++bt) {
            const double cn = std::max(c + lambda * step_c, 0.0);
            const double an = std::min(a0 + lambda * step_a, cn * cn - 1e-15);
            const double g1 = length_of(cn, an) - L;
            const double g2 = constraint_of(cn, an);
            const double gn = std::hypot(g1, g2);
            if (gn < fn) {
                c = cn;
                a0 = an;
                f1 = g1;
                f2 = g2;
                fn = gn;
                improved = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!improved) break;
    }

    sol.c = c;
    sol.a0 = a0;
    sol.res_length = f1;
    sol.res_constraint = f2;
    sol.energy = c * c * L / 2.0 - a0;
    if (fn < 1e-9) sol.converged = true;

    // Eq.-form energy must agree with the direct integral 1/2 int theta'^2 ds
    // evaluated in the angle variable.
    auto wdu = [&](double u) { return std::sqrt(std::max(c * c - a0 * std::sin(u), 0.0)); };
    const double direct = 0.5 * quad::integrate(wdu, 0.0, kPi, 1e-11).value;
    const double closed = c * c * length_of(c, a0) / 2.0 - a0;
    if (sol.converged && std::abs(direct - closed) > 1e-7 * std::max(1.0, std::abs(closed))) {
        throw InvariantViolation("solve_bvp_via_shooting: energy identity violated");
    }
    return sol;
}

double kkt_residual(const geom::TangentAngleArc& arc, Eigen::Vector3d* fit_out) {
    arc.validate();
    const Eigen::Index n = arc.n();
    const double h = arc.ds();
    const std::vector<geom::Point> pts = reconstruct_curve(arc);

    Eigen::VectorXd dtheta(n);
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
        dtheta[i] = (arc.theta[i + 1] - arc.theta[i - 1]) / (2.0 * h);
    }
    dtheta[0] = (-3.0 * arc.theta[0] + 4.0 * arc.theta[1] - arc.theta[2]) / (2.0 * h);
    dtheta[n - 1] =
        (3.0 * arc.theta[n - 1] - 4.0 * arc.theta[n - 2] + arc.theta[n - 3]) / (2.0 * h);

    const double mean_k = std::max(dtheta.mean(), 1e-12);

    // Fit A: theta' ~ max(0, c0 + c1 (y+1) + c2 x)  (first-order form)
    Eigen::MatrixXd X(n, 3);
    for (Eigen::Index i = 0; i < n; ++i) {
        X(i, 0) = 1.0;
        X(i, 1) = pts[std::size_t(i)].y() + 1.0;
        X(i, 2) = pts[std::size_t(i)].x();
    }
    const Eigen::Vector3d coef = X.colPivHouseholderQr().solve(dtheta);
    double ss_a = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double fit = std::max(0.0, coef[0] + coef[1] * X(i, 1) + coef[2] * X(i, 2));
        const double r = dtheta[i] - fit;
        ss_a += r * r;
    }
    const double res_a = std::sqrt(ss_a / double(n)) / mean_k;

    // Fit B: theta'^2/2 ~ -lambda2 sin theta - lambda1 cos theta, no constant.
    Eigen::MatrixXd B(n, 2);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        B(i, 0) = -std::cos(arc.theta[i]);
        B(i, 1) = -std::sin(arc.theta[i]);
        rhs[i] = 0.5 * dtheta[i] * dtheta[i];
    }
    const Eigen::Vector2d lam = B.colPivHouseholderQr().solve(rhs);
    const double mean_e = std::max(rhs.mean(), 1e-12);
    const double res_b = std::sqrt((B * lam - rhs).squaredNorm() / double(n)) / mean_e;

    if (fit_out) *fit_out = coef;
    return std::max(res_a, res_b);
}

}  // namespace elastica::solver
