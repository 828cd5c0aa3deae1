#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "cuelab/cue_model.hpp"
#include "cuelab/monte_carlo.hpp"

namespace cuelab {

/// Fisher–Hartwig singularity |z − z_j|^{2α_j} g_{z_j,β_j}(z) at z_j = e^{i·location}.
struct Singularity {
    double location = 0.0;  ///< angle in [0, 2π)
    double alpha_exp = 0.0;
    Complex beta_jump{0.0, 0.0};
};

/// f(e^{iφ}) = e^{V(e^{iφ})} z^{Σβ_j} Π_j |z − z_j|^{2α_j} g_{z_j,β_j}(z) z_j^{−β_j},
/// with z^β = e^{iβφ} for φ ∈ [0, 2π) and g_{z_j,β}(z) = e^{iπβ} for φ < θ_j,
/// e^{−iπβ} for φ ≥ θ_j.
struct SymbolSpec {
    std::map<int, Complex> v_coeffs;  ///< V_j, finitely many
    std::vector<Singularity> singularities;

    /// Distinct locations in [0, 2π). With `real_exponent`, also V_{−j} = conj(V_j).
    void validate(bool real_exponent = false) const;
};

Complex symbol_eval(const SymbolSpec& spec, double phi);

/// The symbols σ1, σ2, σ3 whose determinants give E f^(k)f^(k), E f^(k)f and
/// E f f at the points θ, θ'. `k` is the trace truncation (unused by σ3).
SymbolSpec make_sigma(int which, double theta, double theta2, const ExponentPair& p, std::size_t k);

/// c_{−K..K} of a symbol.
struct FourierCoefficients {
    int max_order = 0;
    std::vector<Complex> values;  ///< values[k + max_order] = c_k
    std::vector<std::string> warnings;

    Complex operator()(int k) const { return values.at(static_cast<std::size_t>(k + max_order)); }
};

inline constexpr std::size_t kSingularFftSize = std::size_t{1} << 20;
inline constexpr std::size_t kSmoothFftSize = std::size_t{1} << 14;

/// 2^20 when the symbol has singularities, 2^14 otherwise; never below 8K.
std::size_t default_fft_size(const SymbolSpec& spec, int max_order);

/// Midpoint-rule transform on N nodes offset half a step from the first
/// singularity, with the two leading local error terms at each singularity
/// (Hurwitz-zeta corrections) subtracted. Requires N ≥ 8K and N a power of
/// two. Adds a precision warning when some α_j < −1/4 and N < 2^20.
FourierCoefficients fourier_coeffs(const SymbolSpec& spec, int max_order, std::size_t fft_size);

/// Coefficients from values sampled at θ_m = offset + (m+½)·2π/N.
FourierCoefficients coeffs_from_samples(std::vector<Complex> samples, double offset, int max_order);

struct ToeplitzResult {
    std::size_t n = 0;
    Complex log_det{0.0, 0.0};  ///< imaginary part reduced to (−π, π]
};

/// log det of the n×n matrix (c_{k−j})_{j,k} by partially pivoted Gaussian
/// elimination, accumulating log |pivot| and arg pivot. n ≤ 1024.
ToeplitzResult toeplitz_logdet(const FourierCoefficients& coeffs, std::size_t n);

struct HeineSzegoResult {
    MCEstimate mc;     ///< Monte Carlo mean of Re Π_k f(θ_k)
    double det = 0.0;  ///< Re D_{n−1}(f)
};

/// E Π_k f(θ_k) over CUE(n) against the exact Toeplitz determinant; n ≤ 16.
HeineSzegoResult heine_szego_check(const SymbolSpec& spec, std::size_t n, const McOptions& opts);

}  // namespace cuelab
