#include "elastica/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "elastica/analysis.hpp"
#include "elastica/common.hpp"
#include "elastica/geometry.hpp"
#include "elastica/io.hpp"
#include "elastica/optimal_arc.hpp"
#include "elastica/quadrature.hpp"
#include "elastica/solver.hpp"

namespace elastica::verify {

namespace {

struct Ctx {
    const Options& opt;
    std::vector<CriterionResult> results;
    std::ostream* progress = nullptr;

    void run(int id, const std::string& name,
             const std::function<void(CriterionResult&)>& body) {
        CriterionResult res;
        res.id = id;
        res.name = name;
        try {
            body(res);
        } catch (const std::exception& e) {
            res.pass = false;
            res.detail = std::string("exception: ") + e.what();
        }
        if (progress) {
            (*progress) << (res.pass ? "[PASS] " : "[FAIL] ") << id << ". " << name << ": "
                        << res.detail << "\n";
        }
        results.push_back(res);
    }

    // int_0^{pi/2} sqrt(cos), with the fault-injection hook applied
    double a_quad() const { return quad::int_sqrt_cos(kHalfPi) + opt.quadrature_fault; }
};

bool close(double x, double y, double tol) { return std::abs(x - y) <= tol; }

geom::ConvexBody disk_polygon(int n) {
    geom::ConvexBody body;
    body.vertices.reserve(std::size_t(n));
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * kPi * double(i) / n;
        body.vertices.emplace_back(std::cos(t), std::sin(t));
    }
    return body;
}

double shape_identity_max_residual(int n) {
    // max over the interior of |k'' + k^3/2| with k from second differences
    const geom::TangentAngleArc arc = arc::build_arc(kHalfPi, n);
    const double h = arc.ds();
    const Eigen::Index m = arc.n();
    Eigen::VectorXd k(m);
    for (Eigen::Index i = 1; i + 1 < m; ++i) {
        k[i] = (arc.theta[i + 1] - arc.theta[i - 1]) / (2.0 * h);
    }
    double worst = 0.0;
    for (Eigen::Index i = 2; i + 2 < m; ++i) {
        const double kpp = (k[i + 1] - 2.0 * k[i] + k[i - 1]) / (h * h);
        worst = std::max(worst, std::abs(kpp + 0.5 * k[i] * k[i] * k[i]));
    }
    return worst;
}

}  // namespace

bool all_pass(const std::vector<CriterionResult>& results) {
    for (const CriterionResult& r : results) {
        if (!r.pass) return false;
    }
    return true;
}

std::vector<CriterionResult> run_suite(const Options& options, std::ostream* progress) {
    Ctx ctx{options, {}, progress};
    const bool full = options.full;

    ctx.run(1, "omega-star-energy", [&](CriterionResult& res) {
        const auto t0 = std::chrono::steady_clock::now();
        const int n = full ? 4000 : 800;
        const arc::OptimalDomain dom = arc::build_omega_star(n);
        const double E = geom::polygon_energy(dom.body);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        res.measured = E;
        res.pass = close(E, 2.87110, 1e-3) && secs < 5.0;
        std::ostringstream d;
        d << "E = " << fmt9(E) << " vs 2.87110 +- 1e-3, built in " << fmt9(secs) << " s";
        res.detail = d.str();
    });

    ctx.run(2, "constant-a-gamma-identity", [&](CriterionResult& res) {
        const double a = ctx.a_quad();
        const double oracle = std::sqrt(kPi) / 2.0 * std::tgamma(0.75) / std::tgamma(1.25);
        res.measured = a;
        res.pass = close(a, oracle, 1e-10);
        res.detail = "a = " + fmt9(a) + ", gamma oracle " + fmt9(oracle) +
                     ", |diff| = " + fmt9(std::abs(a - oracle));
    });

    ctx.run(3, "arc-length-two-routes", [&](CriterionResult& res) {
        const double a = ctx.a_quad();
        const double L = arc::arc_length(kHalfPi) + options.quadrature_fault;
        const double gamma_route =
            2.0 * (std::sqrt(kPi) / 2.0 * std::tgamma(0.25) / std::tgamma(0.75)) /
            (std::sqrt(kPi) / 2.0 * std::tgamma(0.75) / std::tgamma(1.25));
        const double elliptic_route = -4.0 * quad::elliptic_F(-kPi / 4.0, 2.0) / a;
        res.measured = L;
        res.pass = close(L, gamma_route, 1e-8) && close(L, elliptic_route, 1e-8);
        res.detail = "L0 = " + fmt9(L) + ", gamma " + fmt9(gamma_route) + ", elliptic " +
                     fmt9(elliptic_route);
    });

    ctx.run(4, "omega-star-inradius", [&](CriterionResult& res) {
        const int n = full ? 4000 : 800;
        const arc::OptimalDomain dom = arc::build_omega_star(n);
        const geom::InradiusResult ir = geom::inradius(dom.body);
        res.measured = ir.radius;
        res.pass = close(ir.radius, 1.0, 1e-4) && std::abs(ir.center.x()) < 1e-6 &&
                   std::abs(ir.center.y()) < 1e-6;
        res.detail = "r = " + fmt9(ir.radius) + ", center (" + fmt9(ir.center.x()) + ", " +
                     fmt9(ir.center.y()) + ")";
    });

    ctx.run(5, "disk-baseline", [&](CriterionResult& res) {
        const geom::FunctionalsReport f = geom::functionals(disk_polygon(10000));
        const double targets[5] = {2.0 * kPi * kPi, kPi * kPi * kPi, 2.0 * kPi, kPi, kPi};
        const double products[5] = {f.EP, f.E2A, f.ED, f.ER, f.Er};
        bool ok = true;
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
            const double rel = std::abs(products[i] - targets[i]) / targets[i];
            worst = std::max(worst, rel);
            ok = ok && rel <= 1e-3;
        }
        const double a = ctx.a_quad();
        ok = ok && (f.Er - 2.0 * a * a > 0.25);  // strict gap pi > 2 a^2
        res.measured = worst;
        res.pass = ok;
        res.detail = "max relative deviation " + fmt9(worst) + ", E*r - 2a^2 = " +
                     fmt9(f.Er - 2.0 * a * a);
    });

    ctx.run(6, "solver-vs-closed-form", [&](CriterionResult& res) {
        const std::vector<double> alphas =
            full ? std::vector<double>{0.2, 0.5, kPi / 4.0, 1.2, kHalfPi}
                 : std::vector<double>{kPi / 4.0, kHalfPi};
        bool ok = true;
        double worst = 0.0;
        std::ostringstream d;
        for (double alpha : alphas) {
            const double closed = arc::energy_closed_form(alpha) + options.quadrature_fault;
            const double chord = 2.0 * std::sin(alpha);
            const solver::ElasticaSolution sol = solver::solve_free_length(
                alpha, {chord * (1.0 + 1e-4), chord + kPi}, 800);
            const double rel = (sol.energy - closed) / closed;
            worst = std::max(worst, std::abs(rel));
            ok = ok && std::abs(rel) <= 5e-4 && rel >= -5e-4;
            d << fmt9(alpha) << ":" << fmt9(rel) << " ";
        }
        res.measured = worst;
        res.pass = ok;
        res.detail = "relative gaps " + d.str();
    });

    ctx.run(7, "kkt-form", [&](CriterionResult& res) {
        const int n = full ? 4000 : 1000;
        bool ok = true;
        double worst_closed = 0.0, worst_pointwise = 0.0;
        for (double alpha : {0.2, 0.5, kPi / 4.0, 1.2, kHalfPi}) {
            const geom::TangentAngleArc a = arc::build_arc(alpha, n);
            worst_closed = std::max(worst_closed, solver::kkt_residual(a));
            // pointwise Eq. (37) residual with the analytic curvature
            const auto [l1, l2] = arc::multipliers(alpha);
            for (Eigen::Index i = 0; i < a.n(); ++i) {
                const double k = arc::curvature_of_theta(alpha, a.theta[i]);
                const double r = 0.5 * k * k + l2 * std::sin(a.theta[i]) +
                                 l1 * std::cos(a.theta[i]);
                worst_pointwise = std::max(worst_pointwise, std::abs(r));
            }
        }
        ok = ok && worst_closed < 1e-4 && worst_pointwise < 1e-8;
        // negative control: the half circle is feasible but not optimal
        geom::TangentAngleArc circle;
        circle.length = kPi;
        circle.theta.setLinSpaced(n, 0.0, kPi);
        circle.start = geom::Point(0.0, -1.0);
        const double circle_res = solver::kkt_residual(circle);
        ok = ok && circle_res > 1e-2;
        res.measured = worst_closed;
        res.pass = ok;
        res.detail = "closed-form residual " + fmt9(worst_closed) + ", pointwise " +
                     fmt9(worst_pointwise) + ", circle control " + fmt9(circle_res);
    });

    ctx.run(8, "shape-derivative-decay", [&](CriterionResult& res) {
        const int n1 = full ? 1000 : 500;
        const int n2 = full ? 4000 : 2000;
        const double r1 = shape_identity_max_residual(n1);
        const double r2 = shape_identity_max_residual(n2);
        const double order = std::log(r1 / r2) / std::log(double(n2 - 1) / double(n1 - 1));
        res.measured = order;
        res.pass = order > 1.6 && order < 2.6;
        res.detail = "max residual " + fmt9(r1) + " -> " + fmt9(r2) + ", order " + fmt9(order);
    });

    ctx.run(9, "ealpha-calculus", [&](CriterionResult& res) {
        bool ok = true;
        double worst_fd = 0.0;
        // E' analytic vs central differences away from the endpoint blowups
        for (int i = 0; i <= 1000; ++i) {
            const double a = 0.01 + (kHalfPi - 0.02) * double(i) / 1000.0;
            const double fd = (arc::energy_closed_form(a + 1e-5) -
                               arc::energy_closed_form(a - 1e-5)) / 2e-5;
            worst_fd = std::max(worst_fd, std::abs(fd - analysis::E_prime(a)));
        }
        ok = ok && worst_fd < 1e-6;
        // E'' < 0, R >= 0, h <= 1 on the full grid
        for (int i = 1; i <= 1000; ++i) {
            const double a = kHalfPi * double(i) / 1000.0;
            ok = ok && analysis::E_second(a) < 0.0;
            ok = ok && analysis::R_alpha(a) >= -1e-12;
            ok = ok && analysis::h_alpha(a) <= 1.0 + 1e-12;
        }
        // R' formula vs central differences of R
        double worst_rp = 0.0;
        for (int i = 0; i <= 1000; ++i) {
            const double a = 1e-3 + (kHalfPi - 0.05 - 1e-3) * double(i) / 1000.0;
            const double fd = (analysis::R_alpha(a + 1e-4) - analysis::R_alpha(a - 1e-4)) / 2e-4;
            worst_rp = std::max(worst_rp, std::abs(fd - analysis::R_prime(a)));
        }
        ok = ok && worst_rp < 1e-6;
        res.measured = worst_fd;
        res.pass = ok;
        res.detail = "E' fd dev " + fmt9(worst_fd) + ", R' fd dev " + fmt9(worst_rp);
    });

    ctx.run(10, "subadditivity", [&](CriterionResult& res) {
        const analysis::SubadditivityReport rep = analysis::subadditivity_scan(full ? 200 : 100);
        res.measured = rep.min_gap;
        res.pass = rep.min_gap > 0.0;
        res.detail = "min gap " + fmt9(rep.min_gap) + " at (" + fmt9(rep.argmin_alpha) + ", " +
                     fmt9(rep.argmin_beta) + ") over " + std::to_string(rep.pairs) + " pairs";
    });

    ctx.run(11, "contact-split", [&](CriterionResult& res) {
        bool ok = true;
        std::ostringstream d;
        for (double gamma : {kHalfPi + 0.1, 3.0 * kPi / 4.0, kPi - 0.1}) {
            const analysis::ContactSplit cs = analysis::contact_split(gamma);
            const double lo = gamma - kHalfPi, hi = kHalfPi;
            const double edge = std::min(cs.t_min - lo, hi - cs.t_min);
            ok = ok && edge <= 1e-6;
            d << "gamma " << fmt9(gamma) << " -> t " << fmt9(cs.t_min) << "; ";
        }
        res.pass = ok;
        res.detail = d.str();
    });

    ctx.run(12, "fuzz-inequalities", [&](CriterionResult& res) {
        const int bodies = full ? 100 : 30;
        const int n = full ? 4000 : 1500;
        int violations = 0;
        double min_deficit = std::numeric_limits<double>::infinity();
        for (int seed = 0; seed < bodies; ++seed) {
            const geom::ConvexBody body = analysis::random_smooth_body(
                std::uint64_t(seed), n, analysis::ShapeFamily::fourier(4));
            const analysis::InequalityReport rep = analysis::inequality_suite(body);
            for (const analysis::InequalityRow& row : rep.rows) {
                min_deficit = std::min(min_deficit, row.deficit);
                if (row.deficit <= 0.0) ++violations;
            }
        }
        res.measured = double(violations);
        res.pass = violations == 0;
        res.detail = std::to_string(bodies) + " bodies, " + std::to_string(violations) +
                     " violations, min deficit " + fmt9(min_deficit);
    });

    ctx.run(13, "stadium-invariance", [&](CriterionResult& res) {
        const int n = full ? 4000 : 1000;
        const arc::OptimalDomain base = arc::build_omega_star(n);
        const double E0 = geom::polygon_energy(base.body);
        const double r0 = geom::inradius(base.body).radius;
        bool ok = true;
        double worst_e = 0.0, worst_r = 0.0;
        for (double h : {0.25, 0.5, 1.0}) {
            const arc::OptimalDomain dom = arc::build_omega_star(n, h);
            const double E = geom::polygon_energy(dom.body);
            const double r = geom::inradius(dom.body).radius;
            worst_e = std::max(worst_e, std::abs(E - E0));
            worst_r = std::max(worst_r, std::abs(r - r0));
        }
        ok = worst_e <= 1e-6 && worst_r <= 1e-4;
        res.measured = worst_e;
        res.pass = ok;
        res.detail = "max |dE| " + fmt9(worst_e) + ", max |dr| " + fmt9(worst_r);
    });

    return ctx.results;
}

std::string suite_json(const std::vector<CriterionResult>& results, bool full) {
    std::ostringstream out;
    out << "{\"level\":\"" << (full ? "full" : "quick") << "\",\"criteria\":[";
    for (std::size_t i = 0; i < results.size(); ++i) {
        const CriterionResult& r = results[i];
        std::string detail = r.detail;
        for (char& c : detail) {
            if (c == '"') c = '\'';
        }
        out << (i ? "," : "") << "{\"id\":" << r.id << ",\"name\":\"" << r.name
            << "\",\"pass\":" << (r.pass ? "true" : "false") << ",\"measured\":" << fmt9(r.measured)
            << ",\"detail\":\"" << detail << "\"}";
    }
    out << "],\"all_pass\":" << (all_pass(results) ? "true" : "false") << "}";
    return out.str();
}

}  // namespace elastica::verify
