#include "elastica/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "elastica/optimal_arc.hpp"
#include "elastica/quadrature.hpp"

namespace elastica::analysis {

namespace {

double check_alpha(double alpha, const char* op) {
    const double slack = 8.0 * 2.220446049250313e-16;
    if (!(alpha > 0.0 && alpha <= kHalfPi + slack)) {
        throw DomainError(std::string(op) + ": alpha outside (0, pi/2]");
    }
    return std::min(alpha, kHalfPi);
}

// E with the continuous extension E(0) = 0, for split scans only.
double E_ext(double t) { return t <= 0.0 ? 0.0 : arc::energy_closed_form(t); }

}  // namespace

double h_alpha(double alpha) {
    alpha = check_alpha(alpha, "h_alpha");
    const double h = std::sqrt(std::max(std::cos(alpha), 0.0)) / std::sin(alpha) *
                     quad::int_sqrt_cos(alpha);
    if (!(h <= 1.0 + 1e-12)) throw InvariantViolation("h_alpha: h > 1");
    return h;
}

double E_prime(double alpha) {
    const double h = h_alpha(alpha);
    return h * (2.0 - h);
}

double E_second(double alpha) {
    alpha = check_alpha(alpha, "E_second");
    const double h = h_alpha(alpha);
    const double s = std::sin(alpha);
    const double c = std::cos(alpha);
    const double K = quad::int_sqrt_cos(alpha) / s;
    return 2.0 * c / s * (1.0 - h) * (1.0 - h) - (1.0 - h) * K * s / std::sqrt(c);
}

double R_alpha(double alpha) {
    alpha = check_alpha(alpha, "R_alpha");
    const double c = std::cos(alpha);
    // 2 sin a / (sqrt(cos a)(2 + tan^2 a)) = 2 sin a cos^{3/2} a / (1 + cos^2 a)
    return quad::int_sqrt_cos(alpha) -
           2.0 * std::sin(alpha) * c * std::sqrt(c) / (1.0 + c * c);
}

double R_prime(double alpha) {
    alpha = check_alpha(alpha, "R_prime");
    const double s = std::sin(alpha);
    const double d = std::cos(2.0 * alpha) + 3.0;
    return 16.0 * s * s * std::sqrt(std::max(std::cos(alpha), 0.0)) / (d * d);
}

std::vector<EAlphaRow> ealpha_table(int grid_n) {
    if (grid_n < 2) throw DomainError("ealpha_table: grid too small");
    std::vector<EAlphaRow> rows;
    rows.reserve(std::size_t(grid_n));
    const double step = kHalfPi / grid_n;
    const double fd = 1e-5;
    for (int i = 1; i <= grid_n; ++i) {
        const double a = (i == grid_n) ? kHalfPi : i * step;
        EAlphaRow row;
        row.alpha = a;
        row.E = arc::energy_closed_form(a);
        row.Ep_analytic = E_prime(a);
        if (a + fd <= kHalfPi) {
            row.Ep_fd = (arc::energy_closed_form(a + fd) - arc::energy_closed_form(a - fd)) /
                        (2.0 * fd);
        } else {
            // one-sided second-order difference at the right endpoint
            row.Ep_fd = (3.0 * arc::energy_closed_form(a) -
                         4.0 * arc::energy_closed_form(a - fd) +
                         arc::energy_closed_form(a - 2.0 * fd)) / (2.0 * fd);
        }
        row.Esecond = E_second(a);
        row.h = h_alpha(a);
        row.R = R_alpha(a);
        rows.push_back(row);
    }
    return rows;
}

SubadditivityReport subadditivity_scan(int grid_n) {
    if (grid_n < 2) throw DomainError("subadditivity_scan: grid too small");
    const double step = kHalfPi / grid_n;
    std::vector<double> E(std::size_t(grid_n) + 1);
    for (int i = 1; i <= grid_n; ++i) {
        E[std::size_t(i)] = arc::energy_closed_form(std::min(i * step, kHalfPi));
    }
    SubadditivityReport rep;
    rep.min_gap = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= grid_n; ++i) {
        for (int j = i; i + j <= grid_n; ++j) {
            const double gap = E[std::size_t(i)] + E[std::size_t(j)] - E[std::size_t(i + j)];
            ++rep.pairs;
            if (gap < rep.min_gap) {
                rep.min_gap = gap;
                rep.argmin_alpha = i * step;
                rep.argmin_beta = j * step;
            }
        }
    }
    return rep;
}

ContactSplit contact_split(double gamma, int grid_n) {
    if (!(gamma >= kHalfPi - 1e-12 && gamma <= kPi + 1e-12)) {
        throw DomainError("contact_split: gamma outside [pi/2, pi]");
    }
    gamma = std::clamp(gamma, kHalfPi, kPi);
    const double lo = gamma - kHalfPi, hi = kHalfPi;
    auto e = [&](double t) { return E_ext(t) + E_ext(gamma - t); };

    ContactSplit out;
    if (hi - lo < 1e-12) {
        out.t_min = hi;
        out.e_min = e(hi);
        return out;
    }
    grid_n = std::max(grid_n, 16);
    int argmin = 0;
    double emin = std::numeric_limits<double>::infinity();
    std::vector<double> vals(std::size_t(grid_n) + 1);
    for (int i = 0; i <= grid_n; ++i) {
        const double t = lo + (hi - lo) * double(i) / grid_n;
        vals[std::size_t(i)] = e(t);
        if (vals[std::size_t(i)] < emin) {
            emin = vals[std::size_t(i)];
            argmin = i;
        }
    }
    // golden refinement around the grid minimizer
    double a = lo + (hi - lo) * double(std::max(argmin - 1, 0)) / grid_n;
    double b = lo + (hi - lo) * double(std::min(argmin + 1, grid_n)) / grid_n;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double e1 = e(x1), e2 = e(x2);
    while (b - a > 1e-9) {
        if (e1 <= e2) {
            b = x2; x2 = x1; e2 = e1;
            x1 = b - gr * (b - a);
            e1 = e(x1);
        } else {
            a = x1; x1 = x2; e1 = e2;
            x2 = a + gr * (b - a);
            e2 = e(x2);
        }
    }
    out.t_min = 0.5 * (a + b);
    out.e_min = e(out.t_min);

    if (std::min(out.t_min - lo, hi - out.t_min) > 1e-6) {
        throw InvariantViolation("contact_split: minimizer not at an interval endpoint");
    }
    // e must rise toward gamma/2 and fall after it (concavity of E)
    const double mid = 0.5 * gamma;
    for (int i = 0; i < grid_n; ++i) {
        const double t0 = lo + (hi - lo) * double(i) / grid_n;
        const double t1 = lo + (hi - lo) * double(i + 1) / grid_n;
        if (t1 <= mid && vals[std::size_t(i + 1)] < vals[std::size_t(i)] - 1e-12) {
            throw InvariantViolation("contact_split: e not increasing before gamma/2");
        }
        if (t0 >= mid && vals[std::size_t(i + 1)] > vals[std::size_t(i)] + 1e-12) {
            throw InvariantViolation("contact_split: e not decreasing after gamma/2");
        }
    }
    return out;
}

InequalityReport inequality_suite(const geom::ConvexBody& body) {
    body.validate();
    InequalityReport rep;
    rep.max_turning = geom::max_turning_angle(body);
    if (rep.max_turning > 0.6) {
        throw DomainError("inequality_suite: sampling too coarse (max turning angle > 0.6 rad)");
    }
    rep.functionals = geom::functionals(body);
    const geom::FunctionalsReport& f = rep.functionals;

    const double a = quad::int_sqrt_cos(kHalfPi);
    const double bounds[5] = {2.0 * kPi * kPi, kPi * kPi, 2.0 * kPi, kPi, 2.0 * a * a};
    const double products[5] = {f.EP, f.E2A, f.ED, f.ER, f.Er};
    const char* names[5] = {"EP", "E2A", "ED", "ER", "Er"};
    const double tol = 1e-3;

    rep.all_pass = true;
    for (int i = 0; i < 5; ++i) {
        InequalityRow& row = rep.rows[std::size_t(i)];
        row.name = names[i];
        row.product = products[i];
        row.bound = bounds[i];
        row.deficit = products[i] - bounds[i];
        row.pass = row.deficit >= -tol * bounds[i];
        row.equality = std::abs(row.deficit) <= tol * bounds[i];
        rep.all_pass = rep.all_pass && row.pass;
    }
    return rep;
}

ShapeFamily ShapeFamily::ellipse(double a, double b) {
    ShapeFamily f;
    f.kind = Kind::Ellipse;
    f.a = a;
    f.b = b;
    return f;
}

ShapeFamily ShapeFamily::fourier(int max_harmonic) {
    ShapeFamily f;
    f.kind = Kind::Fourier;
    f.max_harmonic = max_harmonic;
    return f;
}

geom::ConvexBody random_smooth_body(std::uint64_t seed, int n, const ShapeFamily& family) {
    if (n < 16) throw DomainError("random_smooth_body: n < 16");
    geom::ConvexBody body;
    body.vertices.reserve(std::size_t(n));

    if (family.kind == ShapeFamily::Kind::Ellipse) {
        if (!(family.a > 0.0 && family.b > 0.0)) {
            throw DomainError("random_smooth_body: ellipse semi-axes must be positive");
        }
        for (int i = 0; i < n; ++i) {
            const double t = 2.0 * kPi * double(i) / n;
            body.vertices.emplace_back(family.a * std::cos(t), family.b * std::sin(t));
        }
        body.validate();
        return body;
    }

    const int kmax = std::max(family.max_harmonic, 2);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::vector<double> A(std::size_t(kmax) + 1, 0.0), B(std::size_t(kmax) + 1, 0.0);
        double budget = 0.0;  // sum (k^2 - 1)|coef|, bounds the curvature dip
        for (int k = 2; k <= kmax; ++k) {
            A[std::size_t(k)] = unit(rng) / double(k * k * k);
            B[std::size_t(k)] = unit(rng) / double(k * k * k);
            budget += (k * k - 1.0) * std::hypot(A[std::size_t(k)], B[std::size_t(k)]);
        }
        if (budget <= 0.0) continue;
        // rescale so the body is never near-circular nor near-degenerate
        std::uniform_real_distribution<double> amp(0.10, 0.30);
        const double target = amp(rng);
        for (int k = 2; k <= kmax; ++k) {
            A[std::size_t(k)] *= target / budget;
            B[std::size_t(k)] *= target / budget;
        }
        auto support = [&](double phi, double& h, double& hpp) {
            h = 1.0;
            hpp = 0.0;
            for (int k = 2; k <= kmax; ++k) {
                const double ck = std::cos(k * phi), sk = std::sin(k * phi);
                h += A[std::size_t(k)] * ck + B[std::size_t(k)] * sk;
                hpp += -double(k) * double(k) * (A[std::size_t(k)] * ck + B[std::size_t(k)] * sk);
            }
        };
        bool positive = true;
        for (int i = 0; i < 4 * n && positive; ++i) {
            double h, hpp;
            support(2.0 * kPi * double(i) / (4 * n), h, hpp);
            positive = (h + hpp) > 0.02;
        }
        if (!positive) continue;

        body.vertices.clear();
        for (int i = 0; i < n; ++i) {
            const double phi = 2.0 * kPi * double(i) / n;
            double h, hpp;
            support(phi, h, hpp);
            double hp = 0.0;
            for (int k = 2; k <= kmax; ++k) {
                hp += double(k) * (-A[std::size_t(k)] * std::sin(k * phi) +
                                   B[std::size_t(k)] * std::cos(k * phi));
            }
            body.vertices.emplace_back(h * std::cos(phi) - hp * std::sin(phi),
                                       h * std::sin(phi) + hp * std::cos(phi));
        }
        body.validate();
        return body;
    }
    throw InvariantViolation("random_smooth_body: curvature positivity failed repeatedly");
}

}  // namespace elastica::analysis
