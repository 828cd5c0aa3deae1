#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace cuelab {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Uniform periodic grid θ_i = offset + i·2π/size on the circle.
struct UniformGrid {
    std::size_t size = 0;
    double offset = 0.0;

    double step() const { return kTwoPi / static_cast<double>(size); }
    double node(std::size_t i) const { return offset + static_cast<double>(i) * step(); }
    std::vector<double> nodes() const {
        std::vector<double> out(size);
        for (std::size_t i = 0; i < size; ++i) out[i] = node(i);
        return out;
    }
    bool operator==(const UniformGrid&) const = default;
};

/// Reduce an angle to [0, 2π).
inline double wrap_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

/// Samples g at the grid nodes.
template <class F>
std::vector<double> sample_on_grid(const UniformGrid& grid, F&& g) {
    std::vector<double> out(grid.size);
    for (std::size_t i = 0; i < grid.size; ++i) out[i] = g(grid.node(i));
    return out;
}

}  // namespace cuelab
