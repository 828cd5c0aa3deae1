#include <cmath>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "cuelab/cue_model.hpp"
#include "cuelab/error.hpp"

namespace cuelab {
namespace {

// Sequential sampler for the projection DPP with kernel
// K(x, y) = Σ_{k<n} e^{ik(x−y)} on (dθ/2π). After i points, the next point
// has density (n − ‖P_i v(x)‖²)/(n − i) with v(x) = (e^{ikx})_k and P_i the
// projection onto span{v(x_1), ..., v(x_i)}; draws come from rejection
// against the uniform envelope n/(n − i).
class ProjectionSampler {
public:
    explicit ProjectionSampler(std::size_t n)
        : n_(n), basis_re_(n * n), basis_im_(n * n), v_re_(n), v_im_(n), w_re_(n), w_im_(n),
          coef_re_(n), coef_im_(n) {}

    std::size_t size() const noexcept { return n_; }

    std::vector<double> draw(RngStream& stream) {
        std::vector<double> angles;
        angles.reserve(n_);
        rank_ = 0;
        const double nd = static_cast<double>(n_);
        while (rank_ < n_) {
            const double x = stream.angle();
            const double u = stream.uniform();
            fill_v(x);
            const double residual = nd - project();
            if (u * nd < residual) {
                append_basis();
                angles.push_back(x);
            }
        }
        return angles;
    }

private:
    void fill_v(double x) {
        const double c = std::cos(x), s = std::sin(x);
        double re = 1.0, im = 0.0;
        for (std::size_t k = 0; k < n_; ++k) {
            v_re_[k] = re;
            v_im_[k] = im;
            if ((k + 1) % 32 == 0) {
                re = std::cos(static_cast<double>(k + 1) * x);
                im = std::sin(static_cast<double>(k + 1) * x);
            } else {
                const double nre = re * c - im * s;
                im = re * s + im * c;
                re = nre;
            }
        }
    }

    // Coefficients <q_m, v> for the current basis; returns Σ |<q_m, v>|².
    double project() {
        double norm = 0.0;
        for (std::size_t m = 0; m < rank_; ++m) {
            const double* qr = &basis_re_[m * n_];
            const double* qi = &basis_im_[m * n_];
            double dr = 0.0, di = 0.0;
            for (std::size_t k = 0; k < n_; ++k) {
                dr += qr[k] * v_re_[k] + qi[k] * v_im_[k];
                di += qr[k] * v_im_[k] - qi[k] * v_re_[k];
            }
            coef_re_[m] = dr;
            coef_im_[m] = di;
            norm += dr * dr + di * di;
        }
        return norm;
    }

    void subtract_projection(std::vector<double>& re, std::vector<double>& im) {
        for (std::size_t m = 0; m < rank_; ++m) {
            const double* qr = &basis_re_[m * n_];
            const double* qi = &basis_im_[m * n_];
            const double cr = coef_re_[m], ci = coef_im_[m];
            for (std::size_t k = 0; k < n_; ++k) {
                re[k] -= cr * qr[k] - ci * qi[k];
                im[k] -= cr * qi[k] + ci * qr[k];
            }
        }
    }

    void append_basis() {
        w_re_ = v_re_;
        w_im_ = v_im_;
        subtract_projection(w_re_, w_im_);
        // Second Gram–Schmidt pass.
        v_re_ = w_re_;
        v_im_ = w_im_;
        project();
        subtract_projection(w_re_, w_im_);
        double norm = 0.0;
        for (std::size_t k = 0; k < n_; ++k) norm += w_re_[k] * w_re_[k] + w_im_[k] * w_im_[k];
        const double scale = 1.0 / std::sqrt(norm);
        double* qr = &basis_re_[rank_ * n_];
        double* qi = &basis_im_[rank_ * n_];
        for (std::size_t k = 0; k < n_; ++k) {
            qr[k] = w_re_[k] * scale;
            qi[k] = w_im_[k] * scale;
        }
        ++rank_;
    }

    std::size_t n_;
    std::size_t rank_ = 0;
    std::vector<double> basis_re_, basis_im_;
    std::vector<double> v_re_, v_im_, w_re_, w_im_;
    std::vector<double> coef_re_, coef_im_;
};

std::vector<double> ginibre_qr_angles(std::size_t n, RngStream& stream) {
    const auto dim = static_cast<Eigen::Index>(n);
    Eigen::MatrixXcd z(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c)
        for (Eigen::Index r = 0; r < dim; ++r) z(r, c) = stream.complex_normal();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd& r = qr.matrixQR();
    // Phase fix: Q·diag(r_jj/|r_jj|) is Haar distributed.
    for (Eigen::Index j = 0; j < dim; ++j) {
        const std::complex<double> d = r(j, j);
        q.col(j) *= d / std::abs(d);
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(q, false);
    if (solver.info() != Eigen::Success) throw DomainError("ginibre_qr: eigensolver failed");
    std::vector<double> angles(n);
    for (Eigen::Index j = 0; j < dim; ++j) angles[j] = wrap_angle(std::arg(solver.eigenvalues()(j)));
    return angles;
}

}  // namespace

EigenSample sample_cue(std::size_t n, RngStream& stream, SamplerBackend backend) {
    if (n == 0) throw DomainError("sample_cue: n must be positive");
    if (backend == SamplerBackend::ginibre_qr) return EigenSample(ginibre_qr_angles(n, stream));
    // Scratch buffers are reused across draws on the same thread.
    thread_local std::optional<ProjectionSampler> sampler;
    if (!sampler || sampler->size() != n) sampler.emplace(n);
    return EigenSample(sampler->draw(stream));
}

}  // namespace cuelab
