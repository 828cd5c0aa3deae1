#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "cuelab/cue_model.hpp"
#include "cuelab/grid.hpp"
#include "cuelab/rng.hpp"

namespace cuelab {

/// Z_1..Z_k, i.i.d. standard complex Gaussians.
struct GaussianDraw {
    std::vector<Complex> z;
    std::size_t k() const noexcept { return z.size(); }
};

GaussianDraw draw_gaussians(std::size_t k, RngStream& stream);

/// X_k(θ) = ½ Σ_{j≤k} j^{-1/2} (Z_j e^{ijθ} + conj(Z_j) e^{−ijθ}).
double field_partial_sum(const GaussianDraw& draw, double theta);

/// X_k at every node of the grid.
std::vector<double> field_on_grid(const GaussianDraw& draw, const UniformGrid& grid);

/// E X_k(θ)² = ½ Σ_{j≤k} 1/j.
double field_variance(std::size_t k);

/// Masses of a measure on the cells of a uniform grid.
struct GridMeasure {
    UniformGrid grid;
    std::vector<double> masses;

    double total_mass() const;
};

/// Truncation order used for "limit" chaos references.
inline constexpr std::size_t kDefaultLimitTruncation = 128;

/// max(1024, 8k)
std::size_t default_gmc_grid_size(std::size_t k);

/// e^{βX_k − (β²/2) E X_k²} dθ on the grid; needs grid.size ≥ 2k+1.
GridMeasure chaos_measure(const GaussianDraw& draw, double beta, const UniformGrid& grid);

/// Σ g_i · mass_i; `g` must be sampled on the measure's grid.
double integrate_measure(const GridMeasure& measure, std::span<const double> g);
/// Same, rejecting a `g` sampled on a different grid.
double integrate_measure(const GridMeasure& measure, std::span<const double> g,
                         const UniformGrid& g_grid);

/// c_j = −Tr U^j/(2j): the e^{−ijθ} coefficient of log |p_n(θ)|.
std::vector<Complex> field_coeffs_from_traces(const TraceVector& traces);

/// Squared H^s_0 norm of the partial series with coefficients c_1..c_K,
/// counting each mode at ±j: 2 Σ (1+j²)^s |c_j|².
double sobolev_norm(std::span<const Complex> coeffs, double s);

/// CSV `theta,mass`.
void write_grid_measure_csv(std::ostream& os, const GridMeasure& measure);

}  // namespace cuelab
