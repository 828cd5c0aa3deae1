#include "cuelab/rng.hpp"

#include <cmath>
#include <numbers>

namespace cuelab {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> Philox4x32::block(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

Philox4x32::Philox4x32(std::uint64_t seed, std::uint64_t stream_id, std::uint32_t substream)
    : counter_{0u, substream, static_cast<std::uint32_t>(stream_id),
               static_cast<std::uint32_t>(stream_id >> 32)},
      key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

Philox4x32::result_type Philox4x32::operator()() {
    if (next_ == 4) {
        buffer_ = block(counter_, key_);
        ++counter_[0];
        next_ = 0;
    }
    return buffer_[next_++];
}

double RngStream::uniform() {
    const std::uint64_t hi = engine_() >> 5;  // 27 bits
    const std::uint64_t lo = engine_() >> 6;  // 26 bits
    const std::uint64_t bits = (hi << 26) | lo;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double RngStream::angle() {
    const double a = 2.0 * std::numbers::pi * uniform();
    return a < 2.0 * std::numbers::pi ? a : 0.0;
}

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const std::complex<double> z = complex_normal();
    spare_ = std::sqrt(2.0) * z.imag();
    has_spare_ = true;
    return std::sqrt(2.0) * z.real();
}

std::complex<double> RngStream::complex_normal() {
    // |Z|² ~ Exp(1) and arg Z uniform give the standard complex Gaussian.
    const double radius = std::sqrt(-std::log(uniform()));
    const double phase = 2.0 * std::numbers::pi * uniform();
    return std::polar(radius, phase);
}

}  // namespace cuelab
