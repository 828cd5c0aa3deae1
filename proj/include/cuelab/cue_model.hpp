#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "cuelab/grid.hpp"
#include "cuelab/rng.hpp"

namespace cuelab {

using Complex = std::complex<double>;

/// Sorted eigenangles of one CUE draw, all in [0, 2π) and pairwise distinct.
class EigenSample {
public:
    /// Sorts `angles`; throws DomainError on out-of-range or repeated entries.
    EigenSample() = default;  ///< empty placeholder (n() == 0)
    explicit EigenSample(std::vector<double> angles);

    std::size_t n() const noexcept { return angles_.size(); }
    const std::vector<double>& angles() const noexcept { return angles_; }

private:
    std::vector<double> angles_;
};

/// (α, β) exponents of |p_n|^α e^{β Im log p_n}.
struct ExponentPair {
    double alpha = 0.0;
    double beta = 0.0;

    double gamma_sq() const { return alpha * alpha + beta * beta; }
    /// α > −1/2 and α² + β² < 2: the range where μ_{n,α,β} converges to chaos.
    bool in_l2_phase() const { return alpha > -0.5 && gamma_sq() < 2.0; }
};

/// Tr U^j for j = 1..j_max.
class TraceVector {
public:
    explicit TraceVector(std::vector<Complex> traces);
    std::size_t j_max() const noexcept { return traces_.size(); }
    /// 1-based: at(j) = Tr U^j.
    Complex at(std::size_t j) const { return traces_.at(j - 1); }
    const std::vector<Complex>& values() const noexcept { return traces_; }

private:
    std::vector<Complex> traces_;
};

enum class SamplerBackend {
    determinantal,  ///< sequential projection-kernel sampler (default)
    ginibre_qr,     ///< Haar unitary from QR of a Ginibre matrix + eigensolve
};

/// One draw of n CUE eigenangles; deterministic given the stream state.
EigenSample sample_cue(std::size_t n, RngStream& stream,
                       SamplerBackend backend = SamplerBackend::determinantal);

struct CharpolyLog {
    double logabs = 0.0;  ///< log |p_n(θ)|
    double imlog = 0.0;   ///< Im log p_n(θ), per-eigenvalue branch
};

/// Eigenangles closer than this to θ (circularly) count as a collision.
inline constexpr double kCollisionTolerance = 1e-12;

/// log |p_n(θ)| and Im log p_n(θ) with each Im log(1 − e^{i(θ_k−θ)}) taken in
/// (−π/2, π/2). Throws SingularityError if θ hits an eigenangle.
CharpolyLog charpoly_log(const EigenSample& sample, double theta);

TraceVector trace_powers(const EigenSample& sample, std::size_t j_max);

/// |p_n(θ)|^α e^{β Im log p_n(θ)}.
double f_value(const EigenSample& sample, double theta, const ExponentPair& p);

/// Truncation of log f to the first k trace modes, exponentiated.
double f_truncated(const TraceVector& traces, double theta, const ExponentPair& p,
                   std::size_t k);

/// log E f_{n,α,β}(0) from the Γ-product
/// Π_{j=1}^n Γ(j)Γ(j+α) / (Γ(j+(α+iβ)/2) Γ(j+(α−iβ)/2)); requires α > −1.
double log_exact_mean_f(std::size_t n, const ExponentPair& p);
double exact_mean_f(std::size_t n, const ExponentPair& p);

/// max(512, 8n)
std::size_t default_f_grid_size(std::size_t n);

/// ∫ g dμ_{n,α,β} by the periodic trapezoid rule; g is sampled on `grid`.
/// Nodes within the collision tolerance of an eigenangle move by half a step.
double integrate_f(const EigenSample& sample, std::span<const double> g,
                   const ExponentPair& p, const UniformGrid& grid);

/// Same, with the normalizer E f supplied (saves the Γ-product per call).
double integrate_f(const EigenSample& sample, std::span<const double> g,
                   const ExponentPair& p, const UniformGrid& grid, double mean_f);

/// CSV with header `theta`, one angle per row.
void write_eigen_sample_csv(std::ostream& os, const EigenSample& sample);
EigenSample read_eigen_sample_csv(std::istream& is);

}  // namespace cuelab
