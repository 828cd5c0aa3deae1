#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "cuelab/error.hpp"
#include "cuelab/rng.hpp"

namespace cuelab {

/// Mean, standard error and sample count of a Monte Carlo functional.
struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0;  ///< sample standard deviation / √count
    std::size_t count = 0;
    std::size_t failures = 0;  ///< samples redrawn after a singularity hit
};

/// Thrown when more than 0.1% of the samples of a run fail.
class McAbort : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct McOptions {
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    std::size_t workers = 1;
};

/// Mean and standard error of `values`, summed in index order.
MCEstimate estimate_from_values(std::span<const double> values);

/// Runs fn(i) for i in [0, count) over `workers` threads; out[i] = fn(i).
/// The result does not depend on the number of workers.
template <class T, class F>
std::vector<T> parallel_map_indexed(std::size_t count, std::size_t workers, F&& fn) {
    std::vector<T> out(count);
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    workers = std::min(workers, count);
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < count; i += workers) out[i] = fn(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

/// Draws one value per sample index from stream (seed, index). A sample whose
/// functional throws SingularityError is redrawn from the next sub-stream and
/// counted; the run aborts with McAbort once failures exceed 0.1% of samples.
template <class T>
std::vector<T> collect_samples(const McOptions& opts, const std::function<T(RngStream&)>& fn,
                               std::size_t* failures_out = nullptr) {
    constexpr std::uint32_t kMaxAttempts = 64;
    std::vector<std::size_t> per_index_failures(opts.samples, 0);
    auto values = parallel_map_indexed<T>(opts.samples, opts.workers, [&](std::size_t i) {
        RngStream stream(opts.seed, i);
        for (std::uint32_t attempt = 0;; ++attempt) {
            try {
                return fn(stream);
            } catch (const SingularityError&) {
                ++per_index_failures[i];
                if (attempt + 1 >= kMaxAttempts) throw;
                stream = stream.shifted();
            }
        }
    });
    std::size_t failures = 0;
    for (std::size_t f : per_index_failures) failures += f;
    if (static_cast<double>(failures) > 1e-3 * static_cast<double>(opts.samples))
        throw McAbort("Monte Carlo run aborted: " + std::to_string(failures) + " failed samples of " +
                      std::to_string(opts.samples));
    if (failures_out) *failures_out = failures;
    return values;
}

/// Mean and standard error of a scalar functional; needs samples ≥ 2.
MCEstimate run_mc(const std::function<double(RngStream&)>& functional, const McOptions& opts);

/// Component-wise estimates of a vector functional of fixed dimension.
std::vector<MCEstimate> run_mc_vector(
    const std::function<std::vector<double>(RngStream&)>& functional, std::size_t dim,
    const McOptions& opts);

}  // namespace cuelab
