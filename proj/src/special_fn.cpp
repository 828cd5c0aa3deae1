#include "cuelab/special_fn.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cuelab/error.hpp"

namespace cuelab {
namespace {

// B_2, B_4, ..., B_24
constexpr std::array<double, 12> kBernoulliEven = {
    1.0 / 6.0,          -1.0 / 30.0,       1.0 / 42.0,         -1.0 / 30.0,
    5.0 / 66.0,         -691.0 / 2730.0,   7.0 / 6.0,          -3617.0 / 510.0,
    43867.0 / 798.0,    -174611.0 / 330.0, 854513.0 / 138.0,   -236364091.0 / 2730.0};

constexpr double kHalfLogTwoPi = 0.91893853320467274178;
// ζ'(−1) = 1/12 − log A, A the Glaisher–Kinkelin constant.
constexpr double kZetaPrimeMinusOne = -0.16542114370045092921;
constexpr double kAsymptoticRadius = 10.0;
constexpr int kMaxShift = 1 << 20;

bool is_nonpositive_integer(Complex z) {
    if (z.imag() != 0.0 || z.real() > 0.5) return false;
    return std::abs(z.real() - std::round(z.real())) < 1e-14 * (1.0 + std::abs(z.real()));
}

// Number of unit shifts needed before the asymptotic series is accurate.
int shift_count(Complex z) {
    int m = 0;
    while ((std::abs(z) < kAsymptoticRadius || z.real() < 0.5) && m <= kMaxShift) {
        z += 1.0;
        ++m;
    }
    if (m > kMaxShift) throw DomainError("argument too far into the left half-plane");
    return m;
}

Complex stirling_log_gamma(Complex z) {
    Complex result = (z - 0.5) * std::log(z) - z + kHalfLogTwoPi;
    const Complex inv = 1.0 / z;
    const Complex inv2 = inv * inv;
    Complex power = inv;
    for (std::size_t k = 1; k <= 10; ++k) {
        const double m = 2.0 * static_cast<double>(k);
        result += kBernoulliEven[k - 1] / (m * (m - 1.0)) * power;
        power *= inv2;
    }
    return result;
}

// log G(1+w) for large |w|.
Complex asymptotic_log_g1p(Complex w) {
    const Complex logw = std::log(w);
    const Complex w2 = w * w;
    Complex result = 0.5 * w2 * logw - 0.75 * w2 + w * kHalfLogTwoPi - logw / 12.0 +
                     kZetaPrimeMinusOne;
    const Complex inv2 = 1.0 / w2;
    Complex power = inv2;
    for (std::size_t k = 1; k <= 10; ++k) {
        const double kk = static_cast<double>(k);
        result += kBernoulliEven[k] / (4.0 * kk * (kk + 1.0)) * power;
        power *= inv2;
    }
    return result;
}

std::string describe(Complex z) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << z.real() << ", " << z.imag() << ")";
    return os.str();
}

}  // namespace

Complex log_gamma(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("log_gamma: non-finite argument " + describe(z));
    if (is_nonpositive_integer(z)) throw DomainError("log_gamma: pole at " + describe(z));
    const int m = shift_count(z);
    Complex correction = 0.0;
    for (int j = 0; j < m; ++j) correction += std::log(z + static_cast<double>(j));
    return stirling_log_gamma(z + static_cast<double>(m)) - correction;
}

Complex log_barnes_g(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("log_barnes_g: non-finite argument " + describe(z));
    if (is_nonpositive_integer(z)) throw DomainError("log_barnes_g: zero of G at " + describe(z));

    // Shift so that w = z + m − 1 lies in the asymptotic region.
    int m = shift_count(z - 1.0);
    const Complex top = z + static_cast<double>(m);
    Complex result = asymptotic_log_g1p(top - 1.0);
    if (m == 0) return result;

    // log G(z) = log G(z+m) − Σ_{j<m} log Γ(z+j), with log Γ(z+j) built upward.
    Complex lg = log_gamma(z);
    for (int j = 0; j < m; ++j) {
        result -= lg;
        lg += std::log(z + static_cast<double>(j));
    }
    return result;
}

Complex log_fh_constant_complex(double alpha, double beta) {
    if (!(alpha > -1.0)) throw DomainError("fh_constant: requires alpha > -1");
    const Complex a{1.0 + alpha / 2.0, -beta / 2.0};
    const Complex b{1.0 + alpha / 2.0, beta / 2.0};
    return log_barnes_g(a) + log_barnes_g(b) - log_barnes_g(Complex{1.0 + alpha, 0.0});
}

double log_fh_constant(double alpha, double beta) {
    if (!(alpha > -1.0)) throw DomainError("fh_constant: requires alpha > -1");
    const Complex full = log_fh_constant_complex(alpha, beta);
    // The two G factors are conjugates; anything left in the imaginary part is
    // a branch inconsistency, not rounding.
    if (std::abs(full.imag()) > 1e-9 * (1.0 + std::abs(full.real())))
        throw DomainError("fh_constant: branch mismatch, imaginary residue " +
                          std::to_string(full.imag()));
    const Complex upper{1.0 + alpha / 2.0, std::abs(beta) / 2.0};
    return 2.0 * log_barnes_g(upper).real() - log_barnes_g(Complex{1.0 + alpha, 0.0}).real();
}

double fh_constant(double alpha, double beta) { return std::exp(log_fh_constant(alpha, beta)); }

double hurwitz_zeta(double s, double a) {
    if (!(a > 0.0)) throw DomainError("hurwitz_zeta: requires a > 0");
    if (s == 1.0) throw DomainError("hurwitz_zeta: pole at s = 1");
    constexpr int kShift = 12;
    double sum = 0.0;
    for (int m = 0; m < kShift; ++m) sum += std::pow(a + m, -s);
    const double x = a + kShift;
    sum += std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
    // B_{2k}/(2k)! · s(s+1)…(s+2k−2) · x^{−s−2k+1}
    double rising = s;
    double factorial = 2.0;
    double power = std::pow(x, -s - 1.0);
    for (std::size_t k = 1; k <= kBernoulliEven.size(); ++k) {
        const double term = kBernoulliEven[k - 1] / factorial * rising * power;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
        const double kk = static_cast<double>(k);
        rising *= (s + 2.0 * kk - 1.0) * (s + 2.0 * kk);
        factorial *= (2.0 * kk + 1.0) * (2.0 * kk + 2.0);
        power /= x * x;
    }
    return sum;
}

}  // namespace cuelab
