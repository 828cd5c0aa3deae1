#pragma once

#include <functional>
#include <span>

namespace cuelab {

/// Two-sample Kolmogorov–Smirnov statistic sup |F_a − F_b|.
double ks_distance(std::span<const double> a, std::span<const double> b);

/// One-sample statistic sup |F_n − cdf|.
double ks_distance(std::span<const double> a, const std::function<double(double)>& cdf);

/// Asymptotic Kolmogorov tail P(K > λ) = 2 Σ_{k≥1} (−1)^{k−1} e^{−2k²λ²}.
double kolmogorov_tail(double lambda);

/// Asymptotic two-sample critical value at level `alpha`:
/// c(α) √((n_a + n_b)/(n_a n_b)) with c(α) = sqrt(−½ log(α/2)).
double ks_critical_value(double alpha, std::size_t n_a, std::size_t n_b);

}  // namespace cuelab
