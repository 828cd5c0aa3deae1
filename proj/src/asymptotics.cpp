#include "cuelab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "cuelab/error.hpp"
#include "cuelab/special_fn.hpp"

namespace cuelab {
namespace {

Complex szego_terms(const std::map<int, Complex>& v, std::size_t n) {
    Complex acc{0.0, 0.0};
    if (auto it = v.find(0); it != v.end()) acc += static_cast<double>(n) * it->second;
    for (const auto& [j, c] : v) {
        if (j <= 0) continue;
        auto it = v.find(-j);
        if (it != v.end()) acc += static_cast<double>(j) * c * it->second;
    }
    return acc;
}

bool is_negative_integer(Complex z) {
    if (std::abs(z.imag()) > 1e-12 || z.real() > -0.5) return false;
    return std::abs(z.real() - std::round(z.real())) < 1e-12;
}

double harmonic_cos_sum(double delta, std::size_t k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
        const double jd = static_cast<double>(j);
        s += std::cos(jd * delta) / jd;
    }
    return s;
}

}  // namespace

double szego_prediction(const std::map<int, Complex>& v_coeffs, std::size_t n) {
    return szego_terms(v_coeffs, n).real();
}

FHPrediction fh_prediction(const SymbolSpec& spec, std::size_t n) {
    if (n == 0) throw DomainError("fh_prediction: n must be positive");
    FHPrediction out;
    if (spec.singularities.empty()) {
        const Complex s = szego_terms(spec.v_coeffs, n);
        out.regime = Regime::szego;
        const Complex v0 = spec.v_coeffs.contains(0) ? spec.v_coeffs.at(0) : Complex{0.0, 0.0};
        out.log_leading = (static_cast<double>(n) * v0).real();
        out.log_constant = s - out.log_leading;
        return out;
    }
    out.regime = Regime::fh_general;

    std::vector<Singularity> sing = spec.singularities;
    std::sort(sing.begin(), sing.end(),
              [](const Singularity& a, const Singularity& b) { return a.location < b.location; });
    for (const Singularity& s : sing) {
        if (!(s.location >= 0.0 && s.location < kTwoPi))
            throw DomainError("fh_prediction: singularity location outside [0, 2pi)");
        if (!(s.alpha_exp > -0.5)) throw DomainError("fh_prediction: requires Re alpha_j > -1/2");
        const Complex a{s.alpha_exp, 0.0};
        if (is_negative_integer(a + s.beta_jump) || is_negative_integer(a - s.beta_jump))
            throw DomainError("fh_prediction: alpha_j +- beta_j is a negative integer");
    }
    for (std::size_t j = 0; j < sing.size(); ++j)
        for (std::size_t k = j + 1; k < sing.size(); ++k) {
            if (std::abs(sing[j].beta_jump.real() - sing[k].beta_jump.real()) >= 1.0)
                throw DomainError("fh_prediction: requires |||beta||| < 1");
            if (sing[k].location - sing[j].location < 1e-12)
                throw DomainError("fh_prediction: singularities must be distinct");
        }

    const Complex i{0.0, 1.0};
    const double log_n = std::log(static_cast<double>(n));
    Complex leading = szego_terms(spec.v_coeffs, n);  // n V_0 + Σ k V_k V_{−k}
    const Complex v0 = spec.v_coeffs.contains(0) ? spec.v_coeffs.at(0) : Complex{0.0, 0.0};
    Complex constant = leading - static_cast<double>(n) * v0;
    Complex power{0.0, 0.0};

    for (const Singularity& s : sing) {
        const Complex a{s.alpha_exp, 0.0};
        const Complex b = s.beta_jump;
        Complex v_plus{0.0, 0.0}, v_minus{0.0, 0.0};
        for (const auto& [k, c] : spec.v_coeffs) {
            const Complex zk = std::polar(1.0, static_cast<double>(k) * s.location);
            if (k > 0) v_plus += c * zk;
            if (k < 0) v_minus += c * zk;  // V_{−k} z_j^{−k}
        }
        constant += (b - a) * v_plus - (a + b) * v_minus;
        power += a * a - b * b;
        constant += log_barnes_g(1.0 + a + b) + log_barnes_g(1.0 + a - b) - log_barnes_g(1.0 + 2.0 * a);
    }
    for (std::size_t j = 0; j < sing.size(); ++j)
        for (std::size_t k = j + 1; k < sing.size(); ++k) {
            const Singularity& sj = sing[j];
            const Singularity& sk = sing[k];
            const Complex aj{sj.alpha_exp, 0.0}, ak{sk.alpha_exp, 0.0};
            const double dist = 2.0 * std::sin(0.5 * (sk.location - sj.location));
            constant += 2.0 * (sj.beta_jump * sk.beta_jump - aj * ak) * std::log(dist);
            // (z_k / (z_j e^{iπ}))^{α_jβ_k − α_kβ_j}, argument in (−π, π) for θ_j < θ_k.
            constant += i * (sk.location - sj.location - std::numbers::pi) *
                        (aj * sk.beta_jump - ak * sj.beta_jump);
        }
    const Complex n_part = static_cast<double>(n) * v0 + power * log_n;
    out.log_leading = n_part.real();
    out.log_constant = constant + i * n_part.imag();
    return out;
}

double merging_prediction(std::size_t n, double delta, const ExponentPair& p, double t0) {
    if (n < 2) throw DomainError("merging_prediction: n must be at least 2");
    const double nd = static_cast<double>(n);
    delta = std::abs(delta);
    if (delta < std::log(nd) / nd || delta >= 2.0 * t0)
        throw DomainError("merging_prediction: separation outside [log n / n, 2 t0)");
    const double g2 = p.gamma_sq();
    return 0.5 * g2 * std::log(nd) - 0.5 * g2 * std::log(2.0 * std::sin(0.5 * delta)) +
           2.0 * log_fh_constant(p.alpha, p.beta);
}

double variance_kernel(double delta, double gamma_sq, std::size_t k) {
    if (!(gamma_sq < 2.0)) throw DomainError("variance_kernel: requires gamma^2 < 2");
    const double d = wrap_angle(delta);
    if (d == 0.0) throw DomainError("variance_kernel: delta = 0");
    return std::pow(2.0 * std::sin(0.5 * d), -0.5 * gamma_sq) -
           std::exp(0.5 * gamma_sq * harmonic_cos_sum(d, k));
}

VarianceIntegral variance_integral(std::span<const double> g, double gamma_sq, std::size_t k,
                                   const UniformGrid& grid) {
    if (!(gamma_sq < 2.0)) throw DomainError("variance_integral: requires gamma^2 < 2");
    if (g.size() != grid.size) throw DomainError("variance_integral: g does not match the grid");
    if (grid.size < 2) throw DomainError("variance_integral: grid needs at least 2 cells");
    const std::size_t m = grid.size;
    const double h = grid.step();
    using Rule = boost::math::quadrature::gauss<double, 20>;
    auto kernel = [&](double x) { return variance_kernel(x, gamma_sq, k); };

    // ∫_0^h w(r) K(r) dr; tanh-sinh absorbs the r^{−a} endpoint singularity.
    boost::math::quadrature::tanh_sinh<double> singular_rule;
    auto near_zero = [&](auto&& w) {
        return singular_rule.integrate(
            [&](double r) { return r <= 0.0 ? 0.0 : w(r) * kernel(r); }, 0.0, h);
    };
    auto regular = [&](double lo, auto&& w) {
        return Rule::integrate([&](double x) { return w(x - lo) * kernel(x); }, lo, lo + h);
    };
    auto rising = [](double r) { return r; };
    auto falling = [h](double r) { return h - r; };

    // W[d] = ∫∫ over cell pairs at offset d of K(x − y): a triangular weight of
    // half-width h centred on d·h. Only d = 0, 1, m−1 touch the singularity.
    std::vector<double> w(m);
    for (std::size_t d = 0; d < m; ++d) {
        const double centre = static_cast<double>(d) * h;
        const double left = d == 0 ? near_zero(falling) : d == 1 ? near_zero(rising)
                                                                 : regular(centre - h, rising);
        const double right = d == 0 ? near_zero(falling) : d + 1 == m ? near_zero(rising)
                                                                     : regular(centre, falling);
        w[d] = left + right;
    }

    double total = 0.0, diagonal = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (g[i] == 0.0) continue;
        double row = 0.0;
        for (std::size_t j = 0; j < m; ++j) row += g[j] * w[(i + m - j) % m];
        total += g[i] * row;
        diagonal += g[i] * g[i] * w[0];
    }
    return {total, diagonal};
}

}  // namespace cuelab
