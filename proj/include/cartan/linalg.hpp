#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cartan/int_matrix.hpp"

namespace cartan {

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using Complex128 = std::complex<double>;

/// Default relative singular-value threshold for kernels and pseudo-inverses.
inline constexpr double kKernelTolerance = 1e-8;
/// Default relative tolerance for comparing spectra.
inline constexpr double kSpectrumTolerance = 1e-7;

/// Eigenvalues with algebraic multiplicity, sorted by (real, imaginary).
struct Spectrum {
    std::vector<Complex128> values;

    std::size_t size() const { return values.size(); }
    bool empty() const { return values.empty(); }
    double max_abs_imag() const;
};

Spectrum make_spectrum(std::vector<Complex128> values);

Spectrum eigenvalues(const RealMatrix& a);
Spectrum eigenvalues(const ComplexMatrix& a);
/// Same QR iteration carried out in long double; slower, used to confirm close calls.
Spectrum eigenvalues_extended(const RealMatrix& a);

/// Outcome of pairing two eigenvalue multisets.
struct SpectrumMatch {
    bool pass = false;
    /// Largest distance between paired values; infinity on a size mismatch.
    double max_distance = 0.0;
};

/**
 * Greedy pairing: walk `a` in (re, im) order and pair each value with the
 * nearest unused value of `b`. Passes when every pair is within `tol`.
 */
SpectrumMatch match_spectra(const Spectrum& a, const Spectrum& b, double tol);

/// Frobenius norm; the scale for relative tolerances.
double matrix_norm(const RealMatrix& a);
double matrix_norm(const ComplexMatrix& a);

std::size_t kernel_dimension(const RealMatrix& a, double tol = kKernelTolerance);
std::size_t kernel_dimension(const ComplexMatrix& a, double tol = kKernelTolerance);
/// Exact mode: nullity over the rationals.
std::size_t kernel_dimension(const IntMatrix& a);

std::size_t numeric_rank(const RealMatrix& a, double tol = kKernelTolerance);
std::size_t numeric_rank(const ComplexMatrix& a, double tol = kKernelTolerance);

/// Minimal-norm least-squares solution of a x = v; kernel components of v are dropped.
RealVector apply_pseudo_inverse(const RealMatrix& a, const RealVector& v, double tol = kKernelTolerance);
ComplexVector apply_pseudo_inverse(const ComplexMatrix& a, const ComplexVector& v, double tol = kKernelTolerance);

/// exp(a) by Padé scaling and squaring.
RealMatrix matrix_exponential(const RealMatrix& a);
ComplexMatrix matrix_exponential(const ComplexMatrix& a);

/**
 * One classical Runge-Kutta step for x' = f(x):
 *   u = h f(x), v = h f(x + u/2), w = h f(x + v/2), q = h f(x + w),
 *   x + (u + 2v + 2w + q) / 6.
 */
template <class State, class Rhs>
State rk4_step(Rhs&& f, const State& x, double h)
{
    const State u = h * f(x);
    const State v = h * f(State(x + u / 2.0));
    const State w = h * f(State(x + v / 2.0));
    const State q = h * f(State(x + w));
    return x + (u + 2.0 * v + 2.0 * w + q) / 6.0;
}

void require_finite(const RealMatrix& a, const char* where);
void require_finite(const ComplexMatrix& a, const char* where);

}  // namespace cartan
