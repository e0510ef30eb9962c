#include <doctest.h>

#include <cmath>

#include "elastica/geometry.hpp"
#include "elastica/optimal_arc.hpp"
#include "elastica/quadrature.hpp"
#include "oracles.hpp"

using namespace elastica;

namespace {
constexpr double kA = 1.19814023473559221;    // int_0^{pi/2} sqrt(cos)
constexpr double kASq = 1.43554002209226;     // a^2 = E(pi/2)
constexpr double kL0 = 4.37687923045295;      // arc length at alpha = pi/2
constexpr double kEQuarter = 0.783456034195213;   // E(pi/4)
constexpr double kLQuarter = 1.57874490889610;    // L(pi/4)
constexpr double kLambda1Quarter = -0.391728017097606;
}  // namespace

TEST_CASE("multipliers") {
    SUBCASE("alpha = pi/2: lambda1 vanishes, lambda2 = -a^2/2") {
        const auto [l1, l2] = arc::multipliers(kHalfPi);
        CHECK(std::abs(l1) < 1e-15);
        CHECK(std::abs(l2 + kASq / 2.0) < 1e-10);
        CHECK(std::abs(l2 + 0.717770011046130) < 1e-10);
    }
    SUBCASE("alpha = pi/4: lambda2 = lambda1 tan(alpha) = lambda1") {
        const auto [l1, l2] = arc::multipliers(kPi / 4.0);
        CHECK(std::abs(l1 - kLambda1Quarter) < 1e-10);
        CHECK(l2 == doctest::Approx(l1).epsilon(1e-12));
    }
    SUBCASE("alpha -> 0: -lambda1 -> 1/2") {
        const auto [l1, l2] = arc::multipliers(1e-3);
        CHECK(std::abs(-l1 - 0.5) < 1e-5);
        CHECK(std::abs(l2 - l1 * std::tan(1e-3)) < 1e-12);
    }
    CHECK_THROWS_AS(arc::multipliers(0.0), DomainError);
    CHECK_THROWS_AS(arc::multipliers(2.0), DomainError);
}

TEST_CASE("energy_closed_form") {
    CHECK(std::abs(arc::energy_closed_form(kHalfPi) - kASq) < 1e-10);
    CHECK(std::abs(arc::energy_closed_form(kPi / 4.0) - kEQuarter) < 1e-10);
    // strictly below the circular arc energy alpha
    CHECK(arc::energy_closed_form(kPi / 4.0) < kPi / 4.0);
    // circular-arc limit E(alpha)/alpha -> 1
    CHECK(std::abs(arc::energy_closed_form(1e-3) / 1e-3 - 1.0) < 1e-6);
}

TEST_CASE("arc_length") {
    CHECK(std::abs(arc::arc_length(kHalfPi) - kL0) < 1e-8);
    CHECK(std::abs(arc::arc_length(kPi / 4.0) - kLQuarter) < 1e-10);
    // longer than the chord 2 sin(alpha)
    for (double a : {0.2, 0.7, kPi / 4.0, 1.3, kHalfPi}) {
        CHECK(arc::arc_length(a) > 2.0 * std::sin(a));
    }
    // unit-circle limit L/(2 alpha) -> 1
    CHECK(std::abs(arc::arc_length(1e-3) / 2e-3 - 1.0) < 1e-6);
}

TEST_CASE("build_arc") {
    SUBCASE("pi/2 arc: endpoints and the closed-form x(theta)") {
        const geom::TangentAngleArc a = arc::build_arc(kHalfPi, 4000);
        CHECK(a.theta[0] == 0.0);
        CHECK(a.theta[a.n() - 1] == doctest::Approx(kPi).epsilon(1e-15));
        const auto pts = geom::reconstruct_curve(a);
        CHECK((pts.front() - geom::Point(0.0, -1.0)).norm() == 0.0);
        CHECK((pts.back() - geom::Point(0.0, 1.0)).norm() < 1e-6);
        // x(s) = (2/a) sqrt(sin theta(s)), the constraint-consistent display
        double worst = 0.0;
        for (Eigen::Index i = 0; i < a.n(); ++i) {
            const double x_closed = 2.0 / kA * std::sqrt(std::max(std::sin(a.theta[i]), 0.0));
            worst = std::max(worst, std::abs(pts[std::size_t(i)].x() - x_closed));
        }
        CHECK(worst < 1e-6);
        // the adopted ODE normalization integrates to sin-constraint 2:
        // trapezoid of sin(theta) over the arc
        double isin = 0.0;
        for (Eigen::Index i = 0; i + 1 < a.n(); ++i) {
            isin += 0.5 * a.ds() * (std::sin(a.theta[i]) + std::sin(a.theta[i + 1]));
        }
        CHECK(std::abs(isin - 2.0) < 1e-6);
    }
    SUBCASE("pi/4 arc ends at B = (sin 2a, -cos 2a)") {
        const geom::TangentAngleArc a = arc::build_arc(kPi / 4.0, 2000);
        const auto pts = geom::reconstruct_curve(a);
        CHECK((pts.back() - geom::Point(1.0, 0.0)).norm() < 1e-6);
    }
    SUBCASE("discrete energy matches the closed form") {
        for (double alpha : {0.2, kPi / 4.0, 1.2, kHalfPi}) {
            const geom::TangentAngleArc a = arc::build_arc(alpha, 4000);
            const double rel = std::abs(geom::elastic_energy(a) - arc::energy_closed_form(alpha)) /
                               arc::energy_closed_form(alpha);
            CHECK(rel < 1e-5);
        }
    }
    SUBCASE("midpoint symmetry theta(L/2) = alpha") {
        for (double alpha : {0.15, 0.6, kPi / 4.0, 1.25, kHalfPi}) {
            const geom::TangentAngleArc a = arc::build_arc(alpha, 4001);  // odd: exact midpoint
            CHECK(std::abs(a.theta[(a.n() - 1) / 2] - alpha) < 1e-10);
        }
    }
    SUBCASE("pointwise optimality ODE residual (Eq.-37 form)") {
        for (double alpha : {0.2, kPi / 4.0, kHalfPi}) {
            const auto [l1, l2] = arc::multipliers(alpha);
            const geom::TangentAngleArc a = arc::build_arc(alpha, 2000);
            double worst = 0.0;
            for (Eigen::Index i = 0; i < a.n(); ++i) {
                const double k = arc::curvature_of_theta(alpha, a.theta[i]);
                worst = std::max(worst, std::abs(0.5 * k * k + l2 * std::sin(a.theta[i]) +
                                                 l1 * std::cos(a.theta[i])));
            }
            CHECK(worst < 1e-8);
        }
    }
    SUBCASE("strict convexity and equal endpoint curvatures") {
        for (double alpha : {0.3, kPi / 4.0, kHalfPi}) {
            const geom::TangentAngleArc a = arc::build_arc(alpha, 1500);
            for (Eigen::Index i = 0; i + 1 < a.n(); ++i) {
                CHECK(a.theta[i + 1] > a.theta[i]);
            }
            const arc::OptimalArcSpec spec = arc::OptimalArcSpec::make(alpha);
            CHECK(spec.endpoint_curvature() <= 1.0);
            CHECK(arc::curvature_of_theta(alpha, 0.0) ==
                  doctest::Approx(arc::curvature_of_theta(alpha, 2.0 * alpha)).epsilon(1e-12));
        }
    }
    SUBCASE("inversion matches the direct s(theta) quadrature") {
        const double s = arc::arc_s_of_theta(kPi / 4.0, kPi / 4.0);
        CHECK(std::abs(s - arc::arc_length(kPi / 4.0) / 2.0) < 1e-12);
        const double th = quad::invert_monotone(
            [&](double t) { return arc::arc_s_of_theta(kHalfPi, t); },
            arc::arc_length(kHalfPi) / 2.0, 0.0, kPi);
        CHECK(std::abs(th - kHalfPi) < 1e-10);
    }
    CHECK_THROWS_AS(arc::build_arc(kHalfPi, 8), DomainError);
    CHECK_THROWS_AS(arc::build_arc(-1.0, 100), DomainError);
}

TEST_CASE("shape-derivative identity k'' + k^3/2 = 0 at second order") {
    auto residual = [](int n) {
        const geom::TangentAngleArc a = arc::build_arc(kHalfPi, n);
        const double h = a.ds();
        Eigen::VectorXd k(a.n());
        for (Eigen::Index i = 1; i + 1 < a.n(); ++i) {
            k[i] = (a.theta[i + 1] - a.theta[i - 1]) / (2.0 * h);
        }
        double worst = 0.0;
        for (Eigen::Index i = 2; i + 2 < a.n(); ++i) {
            const double kpp = (k[i + 1] - 2.0 * k[i] + k[i - 1]) / (h * h);
            worst = std::max(worst, std::abs(kpp + 0.5 * k[i] * k[i] * k[i]));
        }
        return worst;
    };
    const double r1 = residual(1000);
    const double r2 = residual(4000);
    const double order = std::log(r1 / r2) / std::log(3999.0 / 999.0);
    CHECK(order > 1.6);
    CHECK(order < 2.6);
}

TEST_CASE("build_omega_star") {
    SUBCASE("canonical domain: energy, inradius, diameter, height") {
        const arc::OptimalDomain dom = arc::build_omega_star(4000);
        const double E = geom::polygon_energy(dom.body);
        CHECK(std::abs(E - 2.8711) < 1e-3);
        CHECK(std::abs(E - 2.0 * kASq) < 1e-4);

        const geom::InradiusResult ir = geom::inradius(dom.body);
        CHECK(std::abs(ir.radius - 1.0) < 1e-4);
        CHECK(ir.center.norm() < 1e-6);

        CHECK(std::abs(geom::diameter(dom.body) - 4.0 / kA) < 1e-4);
        CHECK(std::abs(geom::diameter(dom.body) - oracles::brute_force_diameter(dom.body)) == 0.0);
        double ymin = 1e9, ymax = -1e9;
        for (const geom::Point& p : dom.body.vertices) {
            ymin = std::min(ymin, p.y());
            ymax = std::max(ymax, p.y());
        }
        CHECK(ymin == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(ymax == doctest::Approx(1.0).epsilon(1e-12));

        CHECK(std::abs(geom::perimeter(dom.body) - 2.0 * kL0) < 1e-4);
        CHECK(std::abs(geom::circumradius(dom.body) - 2.0 / kA) < 1e-4);
    }
    SUBCASE("mirror symmetry about x = 0") {
        const arc::OptimalDomain dom = arc::build_omega_star(512);
        double xsum = 0.0;
        for (const geom::Point& p : dom.body.vertices) xsum += p.x();
        CHECK(std::abs(xsum) < 1e-12 * dom.body.vertices.size());
    }
    SUBCASE("stadium insertion changes neither energy nor inradius") {
        const arc::OptimalDomain base = arc::build_omega_star(4000);
        const double E0 = geom::polygon_energy(base.body);
        const double r0 = geom::inradius(base.body).radius;
        for (double h : {0.25, 0.5, 1.0}) {
            const arc::OptimalDomain dom = arc::build_omega_star(4000, h);
            CHECK(std::abs(geom::polygon_energy(dom.body) - E0) < 1e-6);
            CHECK(std::abs(geom::inradius(dom.body).radius - r0) < 1e-4);
            // E * r independent of h
            CHECK(std::abs(geom::polygon_energy(dom.body) * geom::inradius(dom.body).radius -
                           E0 * r0) < 1e-6);
        }
    }
    CHECK_THROWS_AS(arc::build_omega_star(32), DomainError);
    CHECK_THROWS_AS(arc::build_omega_star(100, -0.5), DomainError);
}
