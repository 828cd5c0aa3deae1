#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cuelab/asymptotics.hpp"
#include "cuelab/error.hpp"
#include "cuelab/special_fn.hpp"

using namespace cuelab;
using std::numbers::pi;

namespace {

double harmonic(std::size_t k) {
    double h = 0.0;
    for (std::size_t j = 1; j <= k; ++j) h += 1.0 / static_cast<double>(j);
    return h;
}

double cos_sum(double d, std::size_t k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) s += std::cos(static_cast<double>(j) * d) / static_cast<double>(j);
    return s;
}

SymbolSpec single(double alpha, double beta) {
    SymbolSpec s;
    s.singularities.push_back({0.0, alpha / 2.0, Complex{0.0, -beta / 2.0}});
    return s;
}

}  // namespace

TEST_CASE("szego_prediction") {
    CHECK(szego_prediction({}, 10) == 0.0);
    CHECK(szego_prediction({{1, 0.3}, {-1, 0.3}}, 40) == doctest::Approx(0.09).epsilon(1e-15));
    CHECK(szego_prediction({{0, 0.2}, {2, 0.5}, {-2, 0.1}}, 10) == doctest::Approx(10 * 0.2 + 2 * 0.05).epsilon(1e-15));
}

TEST_CASE("sigma1 on the diagonal") {
    const ExponentPair p{0.7, 0.4};
    for (std::size_t k : {1, 3, 8}) {
        const auto s1 = make_sigma(1, 1.1, 1.1, p, k);
        CHECK(szego_prediction(s1.v_coeffs, 50) == doctest::Approx(p.gamma_sq() * harmonic(k)).epsilon(1e-13));
    }
    // off-diagonal: (γ²/4) Σ |e^{ijθ} + e^{ijθ'}|²/j
    const double t = 0.4, t2 = 2.5;
    const std::size_t k = 4;
    double expected = 0.0;
    for (std::size_t j = 1; j <= k; ++j)
        expected += std::norm(std::polar(1.0, j * t) + std::polar(1.0, j * t2)) / static_cast<double>(j);
    expected *= p.gamma_sq() / 4.0;
    const auto s1 = make_sigma(1, t, t2, p, k);
    CHECK(szego_prediction(s1.v_coeffs, 50) == doctest::Approx(expected).epsilon(1e-13));
    // the determinant has converged by n = 40
    const auto c = fourier_coeffs(s1, 40, default_fft_size(s1, 40));
    CHECK(toeplitz_logdet(c, 40).log_det.real() == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("fh_prediction without singularities reduces to Szego") {
    CHECK(fh_prediction(SymbolSpec{}, 7).log_value() == Complex{0.0, 0.0});
    SymbolSpec s;
    s.v_coeffs[1] = 0.3;
    s.v_coeffs[-1] = 0.3;
    CHECK(fh_prediction(s, 12).log_value().real() == doctest::Approx(0.09));
    CHECK(fh_prediction(s, 12).regime == Regime::szego);
}

TEST_CASE("fh_prediction for a single singularity") {
    for (auto [a, b] : {std::pair{1.0, 0.0}, {0.5, 0.5}, {0.0, 1.0}, {-0.3, 0.7}}) {
        const std::size_t n = 300;
        const auto pred = fh_prediction(single(a, b), n);
        const double expected = (a * a + b * b) / 4.0 * std::log(static_cast<double>(n)) + log_fh_constant(a, b);
        CHECK(pred.log_value().real() == doctest::Approx(expected).epsilon(1e-13));
        CHECK(std::abs(pred.log_value().imag()) < 1e-12);
    }
    // (2, 0): prediction n, exact n + 1
    for (std::size_t n : {10, 100, 1000}) {
        const double pred = std::exp(fh_prediction(single(2.0, 0.0), n).log_value().real());
        CHECK(pred == doctest::Approx(static_cast<double>(n)).epsilon(1e-12));
        CHECK(std::abs(exact_mean_f(n, {2.0, 0.0}) / pred - 1.0) <= 1.0 / static_cast<double>(n) + 1e-12);
    }
}

TEST_CASE("fh_prediction for two singularities") {
    for (auto [a, b, d] : {std::tuple{0.6, 0.0, pi / 2.0}, {1.0, 0.5, 0.3}, {0.2, -0.8, 2.0}}) {
        const std::size_t n = 128;
        const auto pred = fh_prediction(make_sigma(3, 0.2, 0.2 + d, {a, b}, 0), n);
        const double g2 = a * a + b * b;
        const double expected = g2 / 2.0 * std::log(static_cast<double>(n)) -
                                g2 / 2.0 * std::log(2.0 * std::sin(d / 2.0)) + 2.0 * log_fh_constant(a, b);
        CHECK(pred.log_value().real() == doctest::Approx(expected).epsilon(1e-12));
        CHECK(std::abs(pred.log_value().imag()) < 1e-12);
        if (d >= std::log(static_cast<double>(n)) / n && d < 2.0 * kDefaultMergingThreshold)
            CHECK(merging_prediction(n, d, {a, b}) == doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("fh_prediction for sigma2 matches the closed form") {
    // n^{γ²/4} fh_constant e^{(γ²/4) H_k} e^{(γ²/2) Σ cos(jΔ)/j}
    for (auto [a, b] : {std::pair{0.8, 0.4}, {0.3, 0.0}, {-0.2, 1.1}}) {
        const double t = 0.5, t2 = 2.1;
        const std::size_t k = 5, n = 200;
        const double g2 = a * a + b * b;
        const auto pred = fh_prediction(make_sigma(2, t, t2, {a, b}, k), n);
        const double expected = g2 / 4.0 * std::log(static_cast<double>(n)) + log_fh_constant(a, b) +
                                g2 / 4.0 * harmonic(k) + g2 / 2.0 * cos_sum(t - t2, k);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(pred.log_value().real() == doctest::Approx(expected).epsilon(1e-12));
        CHECK(std::abs(pred.log_value().imag()) < 1e-10);
    }
}

TEST_CASE("fh_prediction tracks exact sigma2 determinants") {
    const auto spec = make_sigma(2, 0.5, 2.1, {0.8, 0.4}, 3);
    const auto c = fourier_coeffs(spec, 256, kSingularFftSize);
    double previous = 1.0;
    for (std::size_t n : {32, 64, 128, 256}) {
        const double err = std::abs(std::exp(toeplitz_logdet(c, n).log_det.real() - fh_prediction(spec, n).log_value().real()) - 1.0);
        CHECK(err < previous);
        previous = err;
    }
    CHECK(previous < 0.01);
}

TEST_CASE("fh_prediction domain errors") {
    CHECK_THROWS_AS(fh_prediction(single(-1.2, 0.0), 10), DomainError);
    SymbolSpec wide;
    wide.singularities.push_back({0.0, 0.2, 0.6});
    wide.singularities.push_back({1.0, 0.2, -0.6});
    CHECK_THROWS_AS(fh_prediction(wide, 10), DomainError);
}

TEST_CASE("merging_prediction") {
    CHECK(std::abs(merging_prediction(256, 0.1, {0.0, 0.0})) < 1e-12);
    CHECK_THROWS_AS(merging_prediction(256, 0.01, {1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(merging_prediction(256, 1.5, {1.0, 0.0}), DomainError);
}

TEST_CASE("variance_kernel") {
    for (double d : {0.3, 1.0, 2.5}) {
        const double g2 = 0.8;
        CHECK(variance_kernel(d, g2, 0) == doctest::Approx(std::pow(2.0 * std::sin(d / 2.0), -g2 / 2.0) - 1.0).epsilon(1e-15));
    }
    CHECK(std::abs(variance_kernel(pi, 1.0, 10000)) < 1e-3);
    // Σ cos(j)/j → −log(2 sin ½)
    CHECK(cos_sum(1.0, 2000000) == doctest::Approx(-std::log(2.0 * std::sin(0.5))).epsilon(1e-5));
    CHECK(std::abs(variance_kernel(1.0, 1.0, 100000)) < 1e-4);
    CHECK_THROWS_AS(variance_kernel(0.0, 1.0, 5), DomainError);
    CHECK_THROWS_AS(variance_kernel(1.0, 2.0, 5), DomainError);
}

TEST_CASE("variance_integral") {
    const UniformGrid grid{256, 0.0};
    const std::vector<double> zero(grid.size, 0.0), ones(grid.size, 1.0);
    CHECK(variance_integral(zero, 1.0, 8, grid).value == 0.0);
    CHECK(variance_integral(ones, 0.0, 8, grid).value == 0.0);

    // g ≡ 1: (2π)² (Γ(1−a)/Γ(1−a/2)² − mean of e^{a Σ cos(jΔ)/j}), a = γ²/2
    for (double g2 : {0.5, 1.0, 1.6}) {
        const double a = g2 / 2.0;
        double smooth = 0.0;
        const int m = 8192;
        for (int i = 0; i < m; ++i) smooth += std::exp(a * cos_sum(2.0 * pi * i / m, 16));
        smooth /= m;
        const double exact = 4.0 * pi * pi * (std::exp(std::lgamma(1.0 - a) - 2.0 * std::lgamma(1.0 - a / 2.0)) - smooth);
        CAPTURE(g2);
        CHECK(variance_integral(ones, g2, 16, grid).value == doctest::Approx(exact).epsilon(1e-8));
    }
    const double v8 = variance_integral(ones, 1.0, 8, grid).value;
    const double v64 = variance_integral(ones, 1.0, 64, grid).value;
    CHECK(v64 < v8);
    CHECK(v64 > 0.0);
    CHECK_THROWS_AS(variance_integral(ones, 1.0, 8, UniformGrid{128, 0.0}), DomainError);
}
