#include "cuelab/cue_model.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "cuelab/error.hpp"
#include "cuelab/special_fn.hpp"

namespace cuelab {

EigenSample::EigenSample(std::vector<double> angles) : angles_(std::move(angles)) {
    if (angles_.empty()) throw DomainError("EigenSample: needs at least one angle");
    std::sort(angles_.begin(), angles_.end());
    for (std::size_t i = 0; i < angles_.size(); ++i) {
        const double a = angles_[i];
        if (!(a >= 0.0 && a < kTwoPi))
            throw DomainError("EigenSample: angle outside [0, 2pi): " + std::to_string(a));
        if (i > 0 && a == angles_[i - 1])
            throw DomainError("EigenSample: repeated eigenangle " + std::to_string(a));
    }
}

TraceVector::TraceVector(std::vector<Complex> traces) : traces_(std::move(traces)) {
    if (traces_.empty()) throw DomainError("TraceVector: j_max must be positive");
}

CharpolyLog charpoly_log(const EigenSample& sample, double theta) {
    CharpolyLog out;
    for (double angle : sample.angles()) {
        // φ = θ_k − θ mod 2π in (0, 2π); 1 − e^{iφ} = 2 sin(φ/2) e^{i(φ−π)/2}.
        const double phi = wrap_angle(angle - theta);
        if (phi < kCollisionTolerance || kTwoPi - phi < kCollisionTolerance)
            throw SingularityError("charpoly_log: theta coincides with an eigenangle");
        out.logabs += std::log(2.0 * std::sin(0.5 * phi));
        out.imlog += 0.5 * (phi - std::numbers::pi);
    }
    return out;
}

TraceVector trace_powers(const EigenSample& sample, std::size_t j_max) {
    if (j_max == 0) throw DomainError("trace_powers: j_max must be positive");
    std::vector<Complex> traces(j_max, Complex{0.0, 0.0});
    for (double angle : sample.angles()) {
        const Complex w = std::polar(1.0, angle);
        Complex power = w;
        for (std::size_t j = 0; j < j_max; ++j) {
            traces[j] += power;
            // Re-anchor periodically to keep the recurrence on the circle.
            power = ((j + 2) % 64 == 0) ? std::polar(1.0, static_cast<double>(j + 2) * angle)
                                        : power * w;
        }
    }
    return TraceVector(std::move(traces));
}

double f_value(const EigenSample& sample, double theta, const ExponentPair& p) {
    const CharpolyLog l = charpoly_log(sample, theta);
    return std::exp(p.alpha * l.logabs + p.beta * l.imlog);
}

double f_truncated(const TraceVector& traces, double theta, const ExponentPair& p,
                   std::size_t k) {
    if (k > traces.j_max())
        throw DomainError("f_truncated: k exceeds the number of available traces");
    const Complex weight{p.alpha, -p.beta};
    const Complex step = std::polar(1.0, -theta);
    Complex phase = step;
    double exponent = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
        // (α−βi) T_j e^{−ijθ} plus its conjugate is twice the real part.
        exponent -= (weight * traces.at(j) * phase).real() / static_cast<double>(j);
        phase = (j % 64 == 0) ? std::polar(1.0, -static_cast<double>(j + 1) * theta)
                              : phase * step;
    }
    return std::exp(exponent);
}

double log_exact_mean_f(std::size_t n, const ExponentPair& p) {
    if (!(p.alpha > -1.0)) throw DomainError("exact_mean_f: requires alpha > -1");
    if (n == 0) throw DomainError("exact_mean_f: n must be positive");
    const Complex half{p.alpha / 2.0, p.beta / 2.0};
    double acc = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
        const double jd = static_cast<double>(j);
        acc += std::lgamma(jd) + log_gamma(Complex{jd + p.alpha, 0.0}).real() -
               log_gamma(jd + half).real() - log_gamma(jd + std::conj(half)).real();
    }
    return acc;
}

double exact_mean_f(std::size_t n, const ExponentPair& p) {
    return std::exp(log_exact_mean_f(n, p));
}

std::size_t default_f_grid_size(std::size_t n) { return std::max<std::size_t>(512, 8 * n); }

double integrate_f(const EigenSample& sample, std::span<const double> g, const ExponentPair& p,
                   const UniformGrid& grid) {
    return integrate_f(sample, g, p, grid, exact_mean_f(sample.n(), p));
}

double integrate_f(const EigenSample& sample, std::span<const double> g, const ExponentPair& p,
                   const UniformGrid& grid, double mean_f) {
    if (g.size() != grid.size) throw DomainError("integrate_f: g does not match the grid");
    if (grid.size < 4 * sample.n())
        throw DomainError("integrate_f: grid must have at least 4n points");
    const double h = grid.step();
    double sum = 0.0;
    for (std::size_t i = 0; i < grid.size; ++i) {
        if (g[i] == 0.0) continue;
        double theta = grid.node(i);
        double f;
        try {
            f = f_value(sample, theta, p);
        } catch (const SingularityError&) {
            theta += 0.5 * h;
            f = f_value(sample, theta, p);
        }
        sum += g[i] * f;
    }
    return sum * h / mean_f;
}

void write_eigen_sample_csv(std::ostream& os, const EigenSample& sample) {
    os << "theta\n";
    std::ostringstream line;
    line.precision(17);
    for (double a : sample.angles()) {
        line.str("");
        line << a << '\n';
        os << line.str();
    }
}

EigenSample read_eigen_sample_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw DomainError("eigen sample CSV: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "theta") throw DomainError("eigen sample CSV: expected header 'theta'");
    std::vector<double> angles;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t used = 0;
        const double a = std::stod(line, &used);
        if (used != line.size()) throw DomainError("eigen sample CSV: bad row '" + line + "'");
        angles.push_back(a);
    }
    return EigenSample(std::move(angles));
}

}  // namespace cuelab
