#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <span>

#include "cuelab/cue_model.hpp"
#include "cuelab/grid.hpp"
#include "cuelab/toeplitz.hpp"

namespace cuelab {

/// n·V_0 + Σ_{k≥1} k V_k V_{−k}, the strong Szegő prediction for log D_{n−1}(e^V).
double szego_prediction(const std::map<int, Complex>& v_coeffs, std::size_t n);

enum class Regime { szego, fh_general, merging };

/// Predicted log of the n×n Toeplitz determinant, split as
/// log_leading (the real n-dependent part n·V_0 + Σ(α_j²−β_j²) log n) plus
/// log_constant (everything else, complex).
struct FHPrediction {
    double log_leading = 0.0;
    Complex log_constant{0.0, 0.0};
    Regime regime = Regime::szego;

    Complex log_value() const { return log_leading + log_constant; }
    Complex constant() const { return std::exp(log_constant); }
};

/// Fisher–Hartwig asymptotics of the n×n determinant with symbol `spec`.
/// Throws DomainError naming the violated condition (α_j > −1/2,
/// max|Re β_j − Re β_k| < 1, α_j ± β_j ∉ {−1, −2, ...}, distinct z_j).
FHPrediction fh_prediction(const SymbolSpec& spec, std::size_t n);

inline constexpr double kDefaultMergingThreshold = 0.5;

/// (γ²/2) log n − (γ²/2) log(2 sin(Δ/2)) + 2 log fh_constant(α, β) with
/// γ² = α² + β², valid for log n / n ≤ Δ < 2 t0.
double merging_prediction(std::size_t n, double delta, const ExponentPair& p,
                          double t0 = kDefaultMergingThreshold);

/// K(Δ) = (2 sin(Δ/2))^{−γ²/2} − exp((γ²/2) Σ_{j≤k} cos(jΔ)/j); Δ mod 2π ≠ 0.
double variance_kernel(double delta, double gamma_sq, std::size_t k);

struct VarianceIntegral {
    double value = 0.0;
    double diagonal = 0.0;  ///< part of `value` from the diagonal cells
};

/// ∫∫ g(θ) g(θ') K(θ − θ') dθ dθ' with g piecewise constant on the cells of
/// `grid` (g[i] on the cell centred at node i). The kernel is integrated
/// exactly over each cell pair, including the singular diagonal.
VarianceIntegral variance_integral(std::span<const double> g, double gamma_sq, std::size_t k,
                                   const UniformGrid& grid);

}  // namespace cuelab
