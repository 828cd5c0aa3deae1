#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cuelab/error.hpp"
#include "cuelab/special_fn.hpp"

using namespace cuelab;
using std::numbers::pi;

namespace {

// ∫₀^∞ t^{−1/2} e^{−t} dt = 2∫₀^∞ e^{−u²} du, composite Simpson on [0, 12].
double gamma_half_by_quadrature() {
    const int n = 20000;
    const double b = 12.0, h = b / n;
    double s = 1.0 + std::exp(-b * b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * std::exp(-(i * h) * (i * h));
    return 2.0 * s * h / 3.0;
}

// log G(1+z) = z/2 log 2π − ((1+γ)z² + z)/2 + Σ_{k≥2} (−1)^k ζ(k) z^{k+1}/(k+1), |z| < 1.
double log_g1p_taylor(double z) {
    constexpr double euler_gamma = 0.57721566490153286061;
    double s = 0.5 * z * std::log(2.0 * pi) - 0.5 * ((1.0 + euler_gamma) * z * z + z);
    double power = z * z * z;
    for (int k = 2; k < 200; ++k, power *= z)
        s += (k % 2 ? -1.0 : 1.0) * std::riemann_zeta(static_cast<double>(k)) * power / (k + 1.0);
    return s;
}

}  // namespace

TEST_CASE("log_gamma at integers and one half") {
    CHECK(std::abs(log_gamma(1.0)) < 1e-14);
    CHECK(log_gamma(5.0).real() == doctest::Approx(std::log(24.0)).epsilon(1e-15));
    const double oracle = gamma_half_by_quadrature();
    CHECK(oracle == doctest::Approx(std::sqrt(pi)).epsilon(1e-12));
    CHECK(log_gamma(0.5).real() == doctest::Approx(std::log(oracle)).epsilon(1e-12));
    CHECK(std::abs(log_gamma(0.5).imag()) < 1e-15);
}

TEST_CASE("log_gamma agrees with std::lgamma on the positive axis") {
    for (double x = 0.05; x < 60.0; x *= 1.37)
        CHECK(log_gamma(x).real() == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
}

TEST_CASE("log_gamma satisfies reflection off the axis") {
    // Γ(z)Γ(1−z) = π / sin(πz)
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> re(-3.0, 3.0), im(-4.0, 4.0);
    for (int i = 0; i < 200; ++i) {
        const Complex z{re(gen), im(gen)};
        const Complex lhs = std::exp(log_gamma(z) + log_gamma(1.0 - z));
        const Complex rhs = pi / std::sin(pi * z);
        CHECK(std::abs(lhs / rhs - 1.0) < 1e-11);
    }
    // |Γ(i)|² = π / sinh π
    CHECK(log_gamma(Complex{0.0, 1.0}).real() == doctest::Approx(0.5 * std::log(pi / std::sinh(pi))).epsilon(1e-13));
}

TEST_CASE("log_gamma rejects poles") {
    CHECK_THROWS_AS(log_gamma(0.0), DomainError);
    CHECK_THROWS_AS(log_gamma(-2.0), DomainError);
}

TEST_CASE("log_barnes_g at small integers") {
    CHECK(std::abs(log_barnes_g(1.0)) < 1e-13);
    CHECK(std::abs(log_barnes_g(2.0)) < 1e-13);
    CHECK(std::abs(log_barnes_g(3.0)) < 1e-13);
    CHECK(log_barnes_g(4.0).real() == doctest::Approx(std::log(2.0)).epsilon(1e-13));
    CHECK(log_barnes_g(5.0).real() == doctest::Approx(std::log(12.0)).epsilon(1e-13));
    CHECK_THROWS_AS(log_barnes_g(0.0), DomainError);
    CHECK_THROWS_AS(log_barnes_g(-1.0), DomainError);
}

TEST_CASE("log_barnes_g matches the Taylor series oracle") {
    for (double z : {-0.5, -0.3, 0.25, 0.5, 0.7}) {
        CAPTURE(z);
        CHECK(log_barnes_g(1.0 + z).real() == doctest::Approx(log_g1p_taylor(z)).epsilon(1e-12));
    }
}

TEST_CASE("Barnes and Gamma recurrences on random complex points") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> re(0.05, 9.0), im(-6.0, 6.0);
    for (int i = 0; i < 1000; ++i) {
        const Complex z{re(gen), im(gen)};
        CAPTURE(z);
        CHECK(std::abs(std::exp(log_gamma(z + 1.0) - log_gamma(z)) / z - 1.0) < 1e-10);
        CHECK(std::abs(log_barnes_g(z + 1.0) - log_barnes_g(z) - log_gamma(z)) < 1e-10);
    }
}

TEST_CASE("fh_constant special values") {
    CHECK(fh_constant(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fh_constant(2.0, 0.0) == doctest::Approx(1.0).epsilon(1e-13));
    // G(3/2) = Γ(1/2) G(1/2)
    const double oracle = std::exp(std::log(pi) + 2.0 * log_g1p_taylor(-0.5));
    CHECK(fh_constant(1.0, 0.0) == doctest::Approx(oracle).epsilon(1e-12));
    CHECK_THROWS_AS(fh_constant(-1.0, 0.0), DomainError);
}

TEST_CASE("fh_constant is even in beta and has a negligible imaginary residue") {
    for (double a : {-0.4, 0.0, 0.6, 1.3})
        for (double b : {0.2, 0.9, 1.4}) {
            CHECK(fh_constant(a, b) == fh_constant(a, -b));
            CHECK(std::abs(log_fh_constant_complex(a, b).imag()) < 1e-12);
            CHECK(log_fh_constant_complex(a, b).real() == doctest::Approx(log_fh_constant(a, b)).epsilon(1e-13));
        }
}

TEST_CASE("hurwitz_zeta special cases") {
    for (double s : {-1.6, -0.6, 0.5, 2.0, 3.5}) {
        CAPTURE(s);
        CHECK(hurwitz_zeta(s, 1.0) == doctest::Approx(std::riemann_zeta(s)).epsilon(1e-12));
        CHECK(hurwitz_zeta(s, 0.5) == doctest::Approx((std::pow(2.0, s) - 1.0) * std::riemann_zeta(s)).epsilon(1e-12));
    }
    for (double t : {0.1, 0.5, 0.93}) {
        CHECK(hurwitz_zeta(0.0, t) == doctest::Approx(0.5 - t).epsilon(1e-13));
        CHECK(hurwitz_zeta(-1.0, t) == doctest::Approx(-(t * t - t + 1.0 / 6.0) / 2.0).epsilon(1e-13));
    }
    CHECK_THROWS_AS(hurwitz_zeta(1.0, 0.5), DomainError);
    CHECK_THROWS_AS(hurwitz_zeta(2.0, 0.0), DomainError);
}
