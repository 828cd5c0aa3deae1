#include "cuelab/toeplitz.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>

#include <fftw3.h>

#include "cuelab/error.hpp"
#include "cuelab/special_fn.hpp"

namespace cuelab {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxToeplitzSize = 1024;

// FFTW's planner is not reentrant.
std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

// log of the Fisher–Hartwig factors at φ ∈ [0, 2π) (V excluded).
Complex log_singular_part(const SymbolSpec& spec, double phi) {
    Complex acc{0.0, 0.0};
    for (const Singularity& s : spec.singularities) {
        const double dist = std::abs(2.0 * std::sin(0.5 * (phi - s.location)));
        if (s.alpha_exp != 0.0) {
            if (dist == 0.0) {
                if (s.alpha_exp < 0.0) throw SingularityError("symbol_eval: phi at a singularity");
                return Complex{-std::numeric_limits<double>::infinity(), 0.0};
            }
            acc += 2.0 * s.alpha_exp * std::log(dist);
        }
        const Complex i{0.0, 1.0};
        const double jump_sign = phi < s.location ? 1.0 : -1.0;
        acc += i * s.beta_jump * (phi - s.location + jump_sign * kPi);
    }
    return acc;
}

Complex eval_v(const SymbolSpec& spec, double phi) {
    Complex v{0.0, 0.0};
    for (const auto& [j, c] : spec.v_coeffs) v += c * std::polar(1.0, static_cast<double>(j) * phi);
    return v;
}

Complex eval_v_derivative(const SymbolSpec& spec, double phi) {
    Complex v{0.0, 0.0};
    for (const auto& [j, c] : spec.v_coeffs)
        v += c * Complex{0.0, static_cast<double>(j)} * std::polar(1.0, static_cast<double>(j) * phi);
    return v;
}

// Midpoint error at each singularity. Near θ_j the integrand is
// |x|^s · A_±(1 + d·x) on either side (s = 2α_j), and a one-sided sum over
// nodes at distances (m+t)h exceeds the integral by
// A ζ(−s,t) h^{1+s} ± A d ζ(−s−1,t) h^{2+s} (generalized Euler–Maclaurin).
// Subtracting both terms leaves O(h^{3+s}) per singularity.
void subtract_endpoint_errors(const SymbolSpec& spec, double offset, std::size_t fft_size,
                              FourierCoefficients& out) {
    const double n = static_cast<double>(fft_size);
    const double h = kTwoPi / n;
    const Complex i{0.0, 1.0};
    for (std::size_t j = 0; j < spec.singularities.size(); ++j) {
        const Singularity& sj = spec.singularities[j];
        const double s = 2.0 * sj.alpha_exp;
        double q = std::fmod((sj.location - offset) / h, n);
        if (q < 0.0) q += n;
        double t_right = std::fmod(0.5 - q, 1.0);
        if (t_right <= 0.0) t_right += 1.0;
        const double t_left = t_right < 1.0 ? 1.0 - t_right : 1.0;  // t = 1: a node sits on θ_j

        SymbolSpec others = spec;
        others.singularities.erase(others.singularities.begin() + static_cast<std::ptrdiff_t>(j));
        const Complex base = eval_v(spec, sj.location) + log_singular_part(others, sj.location);
        const Complex a_right = std::exp(base - i * sj.beta_jump * kPi);
        const Complex a_left = std::exp(base + i * sj.beta_jump * kPi);
        Complex dlog = eval_v_derivative(spec, sj.location) + i * sj.beta_jump;
        for (const Singularity& o : others.singularities)
            dlog += o.alpha_exp / std::tan(0.5 * (sj.location - o.location)) + i * o.beta_jump;

        const double p0 = std::pow(h, 1.0 + s), p1 = p0 * h;
        const double z0r = hurwitz_zeta(-s, t_right), z0l = hurwitz_zeta(-s, t_left);
        const double z1r = hurwitz_zeta(-s - 1.0, t_right), z1l = hurwitz_zeta(-s - 1.0, t_left);
        for (int k = -out.max_order; k <= out.max_order; ++k) {
            const Complex d = dlog - i * static_cast<double>(k);
            const Complex err = a_right * (z0r * p0 + d * z1r * p1) + a_left * (z0l * p0 - d * z1l * p1);
            out.values[static_cast<std::size_t>(k + out.max_order)] -=
                err * std::polar(1.0 / kTwoPi, -static_cast<double>(k) * sj.location);
        }
    }
}

}  // namespace

void SymbolSpec::validate(bool real_exponent) const {
    for (std::size_t a = 0; a < singularities.size(); ++a) {
        const double loc = singularities[a].location;
        if (!(loc >= 0.0 && loc < kTwoPi)) throw DomainError("symbol: singularity location outside [0, 2pi)");
        for (std::size_t b = 0; b < a; ++b) {
            const double d = std::abs(2.0 * std::sin(0.5 * (loc - singularities[b].location)));
            if (d < 1e-12) throw DomainError("symbol: coincident singularities");
        }
    }
    if (real_exponent) {
        for (const auto& [j, c] : v_coeffs) {
            auto it = v_coeffs.find(-j);
            const Complex partner = it == v_coeffs.end() ? Complex{0.0, 0.0} : it->second;
            if (std::abs(partner - std::conj(c)) > 1e-12 * (1.0 + std::abs(c)))
                throw DomainError("symbol: V_{-j} != conj(V_j) for a real-type exponent");
        }
    }
}

Complex symbol_eval(const SymbolSpec& spec, double phi) {
    phi = wrap_angle(phi);
    return std::exp(eval_v(spec, phi) + log_singular_part(spec, phi));
}

SymbolSpec make_sigma(int which, double theta, double theta2, const ExponentPair& p, std::size_t k) {
    SymbolSpec spec;
    const Complex minus{p.alpha, -p.beta};  // α − βi
    const Complex half_jump{0.0, -p.beta / 2.0};
    theta = wrap_angle(theta);
    theta2 = wrap_angle(theta2);
    auto add_trig = [&](double at) {
        for (std::size_t j = 1; j <= k; ++j) {
            const double jd = static_cast<double>(j);
            const Complex vj = -minus * std::polar(1.0, -jd * at) / (2.0 * jd);
            spec.v_coeffs[static_cast<int>(j)] += vj;
            spec.v_coeffs[-static_cast<int>(j)] += std::conj(vj);
        }
    };
    switch (which) {
        case 1:
            add_trig(theta);
            add_trig(theta2);
            break;
        case 2:
            add_trig(theta);
            spec.singularities.push_back({theta2, p.alpha / 2.0, half_jump});
            break;
        case 3:
            if (std::abs(2.0 * std::sin(0.5 * (theta - theta2))) < 1e-12)
                throw DomainError("make_sigma: sigma3 needs distinct theta and theta'");
            spec.singularities.push_back({theta, p.alpha / 2.0, half_jump});
            spec.singularities.push_back({theta2, p.alpha / 2.0, half_jump});
            break;
        default:
            throw DomainError("make_sigma: which must be 1, 2 or 3");
    }
    return spec;
}

std::size_t default_fft_size(const SymbolSpec& spec, int max_order) {
    std::size_t n = spec.singularities.empty() ? kSmoothFftSize : kSingularFftSize;
    while (n < 8 * static_cast<std::size_t>(std::max(max_order, 1))) n *= 2;
    return n;
}

FourierCoefficients coeffs_from_samples(std::vector<Complex> samples, double offset, int max_order) {
    const std::size_t n = samples.size();
    if (max_order < 0 || static_cast<std::size_t>(2 * max_order + 1) > n)
        throw DomainError("fourier_coeffs: too few samples for the requested order");
    std::vector<Complex> spectrum(n);
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n),
                                          reinterpret_cast<fftw_complex*>(samples.data()),
                                          reinterpret_cast<fftw_complex*>(spectrum.data()),
                                          FFTW_FORWARD, FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }
    FourierCoefficients out;
    out.max_order = max_order;
    out.values.resize(static_cast<std::size_t>(2 * max_order + 1));
    const double h = kTwoPi / static_cast<double>(n);
    const double first = offset + 0.5 * h;
    for (int k = -max_order; k <= max_order; ++k) {
        const std::size_t idx = k >= 0 ? static_cast<std::size_t>(k) : n - static_cast<std::size_t>(-k);
        // Σ f(θ_m) e^{−ikθ_m} = e^{−ik·first} Σ f_m e^{−2πikm/N}
        out.values[static_cast<std::size_t>(k + max_order)] =
            spectrum[idx] * std::polar(1.0 / static_cast<double>(n), -static_cast<double>(k) * first);
    }
    return out;
}

FourierCoefficients fourier_coeffs(const SymbolSpec& spec, int max_order, std::size_t fft_size) {
    if (max_order < 0) throw DomainError("fourier_coeffs: negative order");
    if (!std::has_single_bit(fft_size)) throw DomainError("fourier_coeffs: N must be a power of two");
    if (fft_size < 8 * static_cast<std::size_t>(std::max(max_order, 1)))
        throw DomainError("fourier_coeffs: N must be at least 8K");
    spec.validate();

    const double offset = spec.singularities.empty() ? 0.0 : spec.singularities.front().location;
    const double h = kTwoPi / static_cast<double>(fft_size);

    // V on the grid via one rotation per mode.
    std::vector<Complex> log_values(fft_size, Complex{0.0, 0.0});
    for (const auto& [j, c] : spec.v_coeffs) {
        if (c == Complex{0.0, 0.0}) continue;
        const double jd = static_cast<double>(j);
        const Complex step = std::polar(1.0, jd * h);
        Complex phase = c * std::polar(1.0, jd * (offset + 0.5 * h));
        for (std::size_t m = 0; m < fft_size; ++m) {
            log_values[m] += phase;
            phase = (m + 1) % 256 == 0
                        ? c * std::polar(1.0, jd * (offset + (static_cast<double>(m + 1) + 0.5) * h))
                        : phase * step;
        }
    }
    std::vector<Complex> samples(fft_size);
    for (std::size_t m = 0; m < fft_size; ++m) {
        const double phi = wrap_angle(offset + (static_cast<double>(m) + 0.5) * h);
        samples[m] = std::exp(log_values[m] + log_singular_part(spec, phi));
    }

    FourierCoefficients out = coeffs_from_samples(std::move(samples), offset, max_order);
    subtract_endpoint_errors(spec, offset, fft_size, out);
    for (const Singularity& s : spec.singularities) {
        if (s.alpha_exp < -0.25 && fft_size < kSingularFftSize) {
            out.warnings.push_back("alpha_exp " + std::to_string(s.alpha_exp) +
                                   " < -0.25 with N below 2^20: coefficient error may exceed 1e-6");
            break;
        }
    }
    return out;
}

ToeplitzResult toeplitz_logdet(const FourierCoefficients& coeffs, std::size_t n) {
    if (n == 0) throw DomainError("toeplitz_logdet: n must be positive");
    if (n > kMaxToeplitzSize) throw DomainError("toeplitz_logdet: n exceeds 1024");
    if (static_cast<std::size_t>(coeffs.max_order) + 1 < n)
        throw DomainError("toeplitz_logdet: coefficients needed up to order n-1");

    std::vector<Complex> a(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            a[r * n + c] = coeffs(static_cast<int>(c) - static_cast<int>(r));

    double log_mag = 0.0;
    double phase = 0.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a[col * n + col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(a[r * n + col]);
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (!(best > 0.0) || !std::isfinite(best))
            throw DomainError("toeplitz_logdet: numerically singular matrix");
        if (pivot != col) {
            std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(col * n),
                             a.begin() + static_cast<std::ptrdiff_t>((col + 1) * n),
                             a.begin() + static_cast<std::ptrdiff_t>(pivot * n));
            phase += kPi;
        }
        const Complex p = a[col * n + col];
        log_mag += std::log(std::abs(p));
        phase += std::arg(p);
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex factor = a[r * n + col] / p;
            if (factor == Complex{0.0, 0.0}) continue;
            Complex* row = &a[r * n];
            const Complex* prow = &a[col * n];
            for (std::size_t c = col + 1; c < n; ++c) row[c] -= factor * prow[c];
        }
    }
    return {n, Complex{log_mag, std::remainder(phase, kTwoPi)}};
}

HeineSzegoResult heine_szego_check(const SymbolSpec& spec, std::size_t n, const McOptions& opts) {
    if (n == 0 || n > 16) throw DomainError("heine_szego_check: n must be in [1, 16]");
    const auto coeffs = fourier_coeffs(spec, static_cast<int>(n), default_fft_size(spec, static_cast<int>(n)));
    HeineSzegoResult out;
    out.det = std::exp(toeplitz_logdet(coeffs, n).log_det).real();
    out.mc = run_mc(
        [&](RngStream& stream) {
            const EigenSample s = sample_cue(n, stream);
            Complex prod{1.0, 0.0};
            for (double a : s.angles()) prod *= symbol_eval(spec, a);
            return prod.real();
        },
        opts);
    return out;
}

}  // namespace cuelab
