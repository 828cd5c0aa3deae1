#include "cuelab/gmc.hpp"

#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

#include "cuelab/error.hpp"

namespace cuelab {

GaussianDraw draw_gaussians(std::size_t k, RngStream& stream) {
    GaussianDraw draw;
    draw.z.resize(k);
    for (auto& z : draw.z) z = stream.complex_normal();
    return draw;
}

double field_partial_sum(const GaussianDraw& draw, double theta) {
    double x = 0.0;
    for (std::size_t j = 1; j <= draw.k(); ++j) {
        const double jd = static_cast<double>(j);
        x += (draw.z[j - 1] * std::polar(1.0, jd * theta)).real() / std::sqrt(jd);
    }
    return x;
}

std::vector<double> field_on_grid(const GaussianDraw& draw, const UniformGrid& grid) {
    const std::size_t k = draw.k();
    std::vector<double> scaled_re(k), scaled_im(k);
    for (std::size_t j = 0; j < k; ++j) {
        const double w = 1.0 / std::sqrt(static_cast<double>(j + 1));
        scaled_re[j] = draw.z[j].real() * w;
        scaled_im[j] = draw.z[j].imag() * w;
    }
    std::vector<double> out(grid.size, 0.0);
    for (std::size_t i = 0; i < grid.size; ++i) {
        const double theta = grid.node(i);
        const double c = std::cos(theta), s = std::sin(theta);
        double re = c, im = s;
        double x = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            x += scaled_re[j] * re - scaled_im[j] * im;
            if ((j + 2) % 64 == 0) {
                re = std::cos(static_cast<double>(j + 2) * theta);
                im = std::sin(static_cast<double>(j + 2) * theta);
            } else {
                const double nre = re * c - im * s;
                im = re * s + im * c;
                re = nre;
            }
        }
        out[i] = x;
    }
    return out;
}

double field_variance(std::size_t k) {
    double h = 0.0;
    for (std::size_t j = 1; j <= k; ++j) h += 1.0 / static_cast<double>(j);
    return 0.5 * h;
}

double GridMeasure::total_mass() const {
    return std::accumulate(masses.begin(), masses.end(), 0.0);
}

std::size_t default_gmc_grid_size(std::size_t k) { return std::max<std::size_t>(1024, 8 * k); }

GridMeasure chaos_measure(const GaussianDraw& draw, double beta, const UniformGrid& grid) {
    if (grid.size < 2 * draw.k() + 1)
        throw DomainError("chaos_measure: grid must have at least 2k+1 points");
    const std::vector<double> field = field_on_grid(draw, grid);
    const double shift = 0.5 * beta * beta * field_variance(draw.k());
    const double h = grid.step();
    GridMeasure m{grid, std::vector<double>(grid.size)};
    for (std::size_t i = 0; i < grid.size; ++i) m.masses[i] = std::exp(beta * field[i] - shift) * h;
    return m;
}

double integrate_measure(const GridMeasure& measure, std::span<const double> g) {
    if (g.size() != measure.masses.size())
        throw DomainError("integrate_measure: grid mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) sum += g[i] * measure.masses[i];
    return sum;
}

double integrate_measure(const GridMeasure& measure, std::span<const double> g,
                         const UniformGrid& g_grid) {
    if (!(g_grid == measure.grid)) throw DomainError("integrate_measure: grid mismatch");
    return integrate_measure(measure, g);
}

std::vector<Complex> field_coeffs_from_traces(const TraceVector& traces) {
    std::vector<Complex> c(traces.j_max());
    for (std::size_t j = 1; j <= traces.j_max(); ++j)
        c[j - 1] = -traces.at(j) / (2.0 * static_cast<double>(j));
    return c;
}

double sobolev_norm(std::span<const Complex> coeffs, double s) {
    double sum = 0.0;
    for (std::size_t j = 1; j <= coeffs.size(); ++j) {
        const double jd = static_cast<double>(j);
        sum += 2.0 * std::pow(1.0 + jd * jd, s) * std::norm(coeffs[j - 1]);
    }
    return sum;
}

void write_grid_measure_csv(std::ostream& os, const GridMeasure& measure) {
    std::ostringstream out;
    out.precision(17);
    out << "theta,mass\n";
    for (std::size_t i = 0; i < measure.masses.size(); ++i)
        out << measure.grid.node(i) << ',' << measure.masses[i] << '\n';
    os << out.str();
}

}  // namespace cuelab
