#pragma once

#include <complex>

namespace cuelab {

using Complex = std::complex<double>;

/// Principal-branch log Gamma, continuous off the negative real axis.
///
/// Arguments with |z| < 10 (or Re z < 1/2) are shifted upward with
/// log Γ(z) = log Γ(z+m) − Σ log(z+j) before the Stirling series is applied.
/// Relative accuracy is about 1e-14 on Re z ∈ (0, 8]. Throws DomainError at
/// the poles z = 0, −1, −2, ...
Complex log_gamma(Complex z);

/// log G(z) for the Barnes G-function, G(z+1) = Γ(z) G(z), G(1) = 1.
///
/// Uses the large-|z| asymptotic expansion at |z−1| ≥ 10 and the downward
/// recurrence log G(z) = log G(z+1) − log Γ(z) below it, so the recurrence
/// holds to rounding by construction. The branch is the one continuous from
/// the positive real axis, where log G is real. Throws DomainError at the
/// zeros z = 0, −1, −2, ...
Complex log_barnes_g(Complex z);

/// log of G(1+α/2−iβ/2) G(1+α/2+iβ/2) / G(1+α), computed term by term
/// without using the conjugate symmetry. The imaginary part is a residue.
Complex log_fh_constant_complex(double alpha, double beta);

/// Real log of the constant above, symmetric in β by construction.
double log_fh_constant(double alpha, double beta);

/// G(1+α/2−iβ/2) G(1+α/2+iβ/2) / G(1+α); requires α > −1.
double fh_constant(double alpha, double beta);

/// Hurwitz zeta ζ(s, a) = Σ_{m≥0} (m+a)^{−s} for a > 0, s ≠ 1, continued
/// analytically to s < 1 (Euler–Maclaurin after shifting a past 12).
double hurwitz_zeta(double s, double a);

}  // namespace cuelab
