#include <doctest.h>

#include <cmath>

#include "elastica/quadrature.hpp"
#include "oracles.hpp"

using namespace elastica;

namespace {
// frozen oracle values (Gamma identities / high-resolution composite rules)
constexpr double kA = 1.19814023473559221;         // int_0^{pi/2} sqrt(cos)
constexpr double kC = 2.62205755429211981;         // int_0^{pi/2} 1/sqrt(cos)
constexpr double kIQuarter = 0.744303079760492875; // int_0^{pi/4} sqrt(cos)
constexpr double kCQuarter = 0.830896216180937471; // int_0^{pi/4} 1/sqrt(cos)
constexpr double kB = -1.31102877714605991;        // F(-pi/4 | 2) = -C/2
}  // namespace

TEST_CASE("adaptive Simpson basics") {
    auto f = [](double x) { return std::sin(x); };
    const quad::QuadResult r = quad::integrate(f, 0.0, kPi, 1e-12);
    CHECK(std::abs(r.value - 2.0) < 1e-12);
    CHECK(r.est_error < 1e-12);
    CHECK(r.evaluations > 0);
    CHECK_THROWS_AS(quad::integrate(f, 1.0, 0.0, 1e-12), DomainError);
}

TEST_CASE("int_sqrt_cos endpoints and gamma identity") {
    CHECK(quad::int_sqrt_cos(0.0) == 0.0);

    const double a = quad::int_sqrt_cos(kHalfPi);
    const double gamma_oracle =
        std::sqrt(kPi) / 2.0 * oracles::lanczos_gamma(0.75) / oracles::lanczos_gamma(1.25);
    CHECK(std::abs(a - gamma_oracle) < 1e-10);
    CHECK(std::abs(a - kA) < 1e-11);

    const double mid = oracles::midpoint_integral(
        [](double t) { return std::sqrt(std::cos(t)); }, 0.0, kPi / 4.0, 1000000);
    CHECK(std::abs(quad::int_sqrt_cos(kPi / 4.0) - mid) < 1e-9);
    CHECK(std::abs(quad::int_sqrt_cos(kPi / 4.0) - kIQuarter) < 1e-11);

    CHECK_THROWS_AS(quad::int_sqrt_cos(-0.1), DomainError);
    CHECK_THROWS_AS(quad::int_sqrt_cos(kHalfPi + 0.1), DomainError);
}

TEST_CASE("int_inv_sqrt_cos handles the endpoint singularity") {
    CHECK(quad::int_inv_sqrt_cos(0.0) == 0.0);

    const double c = quad::int_inv_sqrt_cos(kHalfPi);
    const double gamma_oracle =
        std::sqrt(kPi) / 2.0 * oracles::lanczos_gamma(0.25) / oracles::lanczos_gamma(0.75);
    CHECK(std::abs(c - gamma_oracle) < 1e-10);
    CHECK(std::abs(c - kC) < 1e-10);

    // composite oracle on the regularized substitution t = pi/2 - v^2
    // (v runs from sqrt(pi/2 - alpha) to sqrt(pi/2) as t runs alpha -> 0)
    const double sub = oracles::midpoint_integral(
        [](double v) { return 2.0 * v / std::sqrt(std::sin(v * v)); },
        std::sqrt(kHalfPi - kPi / 4.0), std::sqrt(kHalfPi), 1000000);
    CHECK(std::abs(quad::int_inv_sqrt_cos(kPi / 4.0) - sub) < 1e-8);
    CHECK(std::abs(quad::int_inv_sqrt_cos(kPi / 4.0) - kCQuarter) < 1e-10);

    // the fixed-rule variant agrees with the adaptive one
    for (double x : {0.0, 0.3, 1.0, kHalfPi - 1e-4, kHalfPi}) {
        CHECK(std::abs(quad::int_inv_sqrt_cos_smooth(x) - quad::int_inv_sqrt_cos(x)) < 5e-11);
    }
}

TEST_CASE("integral functions are strictly increasing and Cauchy-Schwarz bounded") {
    double prev_s = -1.0, prev_c = -1.0;
    for (int i = 1; i <= 1000; ++i) {
        const double a = kHalfPi * double(i) / 1000.0;
        const double s = quad::int_sqrt_cos(a);
        const double c = quad::int_inv_sqrt_cos(a);
        CHECK(s > prev_s);
        CHECK(c > prev_c);
        // int_0^a sqrt(cos) <= sqrt(a sin a)
        CHECK(s * s <= a * std::sin(a) + 1e-12);
        prev_s = s;
        prev_c = c;
    }
    // symmetry with sqrt(sin) over the full quarter period
    const double ssin = oracles::midpoint_integral(
        [](double t) { return std::sqrt(std::sin(t)); }, 0.0, kHalfPi, 2000000);
    CHECK(std::abs(quad::int_sqrt_cos(kHalfPi) - ssin) < 1e-7);
}

TEST_CASE("invert_monotone") {
    auto id = [](double x) { return x; };
    CHECK(quad::invert_monotone(id, 0.5, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));

    auto f = [](double t) { return quad::int_sqrt_cos(t); };
    const double th = quad::invert_monotone(f, kA / 2.0, 0.0, kHalfPi);
    CHECK(std::abs(th - 0.619046526319029) < 1e-9);
    CHECK(std::abs(f(th) - kA / 2.0) < 1e-12);

    CHECK_THROWS_AS(quad::invert_monotone(id, 2.0, 0.0, 1.0), BracketViolation);
}

TEST_CASE("elliptic F and Jacobi amplitude on the m = 2 branch") {
    CHECK(quad::elliptic_F(0.0, 2.0) == 0.0);
    CHECK(quad::jacobi_am(0.0, 2.0) == 0.0);

    const double b = quad::elliptic_F(-kPi / 4.0, 2.0);
    CHECK(std::abs(b - kB) < 1e-9);
    CHECK(std::abs(b + 0.5 * quad::int_inv_sqrt_cos(kHalfPi)) < 1e-9);

    // L = -4 b / a reproduces the length formula value
    CHECK(std::abs(-4.0 * b / kA - 4.37687923045295) < 1e-8);

    // round trip on the real branch
    for (double phi : {0.1, 0.4, 0.7}) {
        const double u = quad::elliptic_F(phi, 0.5);
        CHECK(std::abs(quad::jacobi_am(u, 0.5) - phi) < 1e-10);
    }
    CHECK(std::abs(quad::jacobi_am(quad::elliptic_F(0.6, 2.0), 2.0) - 0.6) < 1e-10);
    CHECK_THROWS_AS(quad::jacobi_am(0.5, 1.0), DomainError);

    CHECK_THROWS_AS(quad::elliptic_F(kPi / 3.0, 2.0), DomainError);
    CHECK_THROWS_AS(quad::jacobi_am(5.0, 2.0), DomainError);
}
