#include "cuelab/monte_carlo.hpp"

#include <cmath>

namespace cuelab {

MCEstimate estimate_from_values(std::span<const double> values) {
    MCEstimate e;
    e.count = values.size();
    if (values.empty()) return e;
    double sum = 0.0;
    for (double v : values) sum += v;
    e.mean = sum / static_cast<double>(values.size());
    if (values.size() < 2) return e;
    double ss = 0.0;
    for (double v : values) ss += (v - e.mean) * (v - e.mean);
    const double var = ss / static_cast<double>(values.size() - 1);
    e.std_error = std::sqrt(var / static_cast<double>(values.size()));
    return e;
}

MCEstimate run_mc(const std::function<double(RngStream&)>& functional, const McOptions& opts) {
    if (opts.samples < 2) throw DomainError("run_mc: needs at least 2 samples");
    std::size_t failures = 0;
    const auto values = collect_samples<double>(opts, functional, &failures);
    MCEstimate e = estimate_from_values(values);
    e.failures = failures;
    return e;
}

std::vector<MCEstimate> run_mc_vector(
    const std::function<std::vector<double>(RngStream&)>& functional, std::size_t dim,
    const McOptions& opts) {
    if (opts.samples < 2) throw DomainError("run_mc_vector: needs at least 2 samples");
    std::size_t failures = 0;
    const auto rows = collect_samples<std::vector<double>>(opts, functional, &failures);
    std::vector<MCEstimate> out(dim);
    std::vector<double> column(rows.size());
    for (std::size_t d = 0; d < dim; ++d) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != dim) throw DomainError("run_mc_vector: functional returned wrong size");
            column[i] = rows[i][d];
        }
        out[d] = estimate_from_values(column);
        out[d].failures = failures;
    }
    return out;
}

}  // namespace cuelab
