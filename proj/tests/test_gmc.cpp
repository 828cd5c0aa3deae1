#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "cuelab/cue_model.hpp"
#include "cuelab/error.hpp"
#include "cuelab/gmc.hpp"
#include "cuelab/monte_carlo.hpp"

using namespace cuelab;
using std::numbers::pi;

namespace {

bool within_3se(const MCEstimate& e, double oracle) { return std::abs(e.mean - oracle) <= 3.0 * e.std_error; }

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

}  // namespace

TEST_CASE("field vanishes for zero Gaussians") {
    const GaussianDraw zero{std::vector<Complex>(8)};
    CHECK(field_partial_sum(zero, 1.0) == 0.0);
    for (double v : field_on_grid(zero, UniformGrid{64, 0.1})) CHECK(v == 0.0);
}

TEST_CASE("field_on_grid matches pointwise sums") {
    RngStream s(1, 1);
    const auto draw = draw_gaussians(40, s);
    const UniformGrid grid{512, 0.3};
    const auto values = field_on_grid(draw, grid);
    for (std::size_t i = 0; i < grid.size; i += 7)
        CHECK(values[i] == doctest::Approx(field_partial_sum(draw, grid.node(i))).epsilon(1e-11));
}

TEST_CASE("field variance and covariance") {
    const std::size_t k = 12;
    CHECK(field_variance(k) == doctest::Approx(0.5 * harmonic(k)).epsilon(1e-15));
    const double t1 = 0.4, t2 = 1.7;
    const auto est = run_mc_vector(
        [&](RngStream& s) {
            const auto d = draw_gaussians(k, s);
            const double a = field_partial_sum(d, t1), b = field_partial_sum(d, t2);
            return std::vector<double>{a * a, a * b};
        },
        2, {3, 40000, 1});
    CHECK(within_3se(est[0], 0.5 * harmonic(k)));
    CHECK(within_3se(est[1], 0.5 * cos_sum(t1 - t2, k)));
    // the covariance series tends to −½ log|e^{iθ} − e^{iθ'}|
    CHECK(0.5 * cos_sum(t1 - t2, 200000) ==
          doctest::Approx(-0.5 * std::log(std::abs(std::polar(1.0, t1) - std::polar(1.0, t2)))).epsilon(1e-4));
}

TEST_CASE("chaos measure normalization") {
    RngStream s(2, 0);
    const auto draw = draw_gaussians(16, s);
    const UniformGrid grid{default_gmc_grid_size(16), 0.0};
    const auto flat = chaos_measure(draw, 0.0, grid);
    for (double m : flat.masses) CHECK(m == doctest::Approx(grid.step()).epsilon(1e-15));
    CHECK(flat.total_mass() == doctest::Approx(2.0 * pi).epsilon(1e-13));
    CHECK_THROWS_AS(chaos_measure(draw, 1.0, UniformGrid{32, 0.0}), DomainError);
}

TEST_CASE("chaos total mass: first and second moments") {
    const std::size_t k = 8;
    const double beta = 1.2;
    const UniformGrid grid{default_gmc_grid_size(k), 0.0};
    const auto est = run_mc_vector(
        [&](RngStream& s) {
            const double m = chaos_measure(draw_gaussians(k, s), beta, grid).total_mass();
            return std::vector<double>{m, m * m};
        },
        2, {4, 40000, 1});
    CHECK(within_3se(est[0], 2.0 * pi));
    // ∫∫ e^{(β²/2) Σ cos(j(θ−θ'))/j} = 2π ∫ e^{(β²/2) Σ cos(jΔ)/j} dΔ, trapezoid
    const int m = 4096;
    double q = 0.0;
    for (int i = 0; i < m; ++i) q += std::exp(0.5 * beta * beta * cos_sum(2.0 * pi * i / m, k));
    const double second = 2.0 * pi * q * 2.0 * pi / m;
    CHECK(within_3se(est[1], second));
}

TEST_CASE("integrate_measure") {
    RngStream s(6, 0);
    const UniformGrid grid{1024, 0.0};
    const auto mu = chaos_measure(draw_gaussians(20, s), 0.8, grid);
    const std::vector<double> ones(grid.size, 1.0), threes(grid.size, 3.0);
    CHECK(integrate_measure(mu, ones) == doctest::Approx(mu.total_mass()).epsilon(1e-14));
    CHECK(integrate_measure(mu, threes) == doctest::Approx(3.0 * mu.total_mass()).epsilon(1e-14));
    const auto flat = chaos_measure(draw_gaussians(20, s), 0.0, grid);
    const auto half = sample_on_grid(grid, [](double t) { return t < pi ? 1.0 : 0.0; });
    CHECK(integrate_measure(flat, half) == doctest::Approx(pi).epsilon(1e-13));
    CHECK_THROWS_AS(integrate_measure(mu, ones, UniformGrid{1024, 0.5}), DomainError);
    CHECK_THROWS_AS(integrate_measure(mu, std::vector<double>(10, 1.0)), DomainError);
}

TEST_CASE("field coefficients from traces") {
    for (const Complex& c : field_coeffs_from_traces(TraceVector({0.0, 0.0}))) CHECK(c == Complex{0.0, 0.0});
    const auto c = field_coeffs_from_traces(trace_powers(EigenSample({0.0}), 4));
    for (std::size_t j = 1; j <= 4; ++j) CHECK(std::abs(c[j - 1] - Complex{-1.0 / (2.0 * j), 0.0}) < 1e-15);

    const auto est = run_mc_vector(
        [](RngStream& s) {
            const auto cj = field_coeffs_from_traces(trace_powers(sample_cue(16, s), 4));
            std::vector<double> v;
            for (const auto& z : cj) v.push_back(std::norm(z));
            return v;
        },
        4, {7, 20000, 1});
    for (std::size_t j = 1; j <= 4; ++j) CHECK(within_3se(est[j - 1], 1.0 / (4.0 * j)));
}

TEST_CASE("sobolev_norm") {
    CHECK(sobolev_norm(std::vector<Complex>(5), -0.1) == 0.0);
    CHECK(sobolev_norm(std::vector<Complex>{1.0}, 0.0) == doctest::Approx(2.0));
    const std::size_t k = 50;
    std::vector<Complex> c;
    double direct = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
        c.emplace_back(1.0 / (2.0 * std::sqrt(static_cast<double>(j))), 0.0);
        direct += 2.0 * std::pow(1.0 + static_cast<double>(j * j), -0.1) / (4.0 * static_cast<double>(j));
    }
    CHECK(sobolev_norm(c, -0.1) == doctest::Approx(direct).epsilon(1e-14));
}

TEST_CASE("grid measure CSV") {
    RngStream s(1, 0);
    const auto mu = chaos_measure(draw_gaussians(4, s), 0.5, UniformGrid{16, 0.0});
    std::ostringstream os;
    write_grid_measure_csv(os, mu);
    const std::string text = os.str();
    CHECK(text.rfind("theta,mass\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 17);
    CHECK(text.find('\r') == std::string::npos);
}
