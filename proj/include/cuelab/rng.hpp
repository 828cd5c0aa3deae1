#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <limits>

namespace cuelab {

/// Philox4x32-10 counter-based generator.
///
/// The 64-bit key is the run seed; the 128-bit counter holds a block index,
/// a sub-stream (retry) index and the 64-bit stream id. Two streams with
/// distinct (seed, stream_id, substream) never share a counter value.
class Philox4x32 {
public:
    using result_type = std::uint32_t;

    Philox4x32(std::uint64_t seed, std::uint64_t stream_id, std::uint32_t substream = 0);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Raw block function, exposed for known-answer tests.
    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                              std::array<std::uint32_t, 2> key);

private:
    std::array<std::uint32_t, 4> counter_{};
    std::array<std::uint32_t, 2> key_{};
    std::array<std::uint32_t, 4> buffer_{};
    int next_ = 4;
};

/// Per-sample random stream: (seed, stream_id) names the sequence.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint32_t substream = 0)
        : seed_(seed), stream_id_(stream_id), substream_(substream),
          engine_(seed, stream_id, substream) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }
    std::uint32_t substream() const noexcept { return substream_; }

    /// Fresh stream for the next retry of the same sample index.
    RngStream shifted() const { return RngStream(seed_, stream_id_, substream_ + 1); }

    std::uint32_t next_u32() { return engine_(); }
    /// Uniform on (0, 1), 53-bit resolution; never returns 0 or 1.
    double uniform();
    /// Uniform on [0, 2π).
    double angle();
    /// Standard real normal N(0, 1).
    double normal();
    /// Standard complex Gaussian: independent real and imaginary parts of
    /// variance 1/2 each, so E|Z|² = 1.
    std::complex<double> complex_normal();

    Philox4x32& engine() noexcept { return engine_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint32_t substream_;
    Philox4x32 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace cuelab
