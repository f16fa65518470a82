#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cartan/exterior.hpp"
#include "cartan/linalg.hpp"
#include "cartan/vector_field.hpp"

namespace cartan {

/// One named identity check with its measured residual.
struct Check {
    std::string name;
    bool pass = false;
    double residual = 0.0;
    std::string note;
    /// Informational checks are reported but do not decide an overall verdict.
    bool required = true;
};

/**
 * b_k(X) = dimension of the kernel of the degree-k block of L_X
 * (geometric multiplicity of 0). Throws unless L_X preserves degree.
 */
std::vector<std::size_t> betti_vector(const ExactOperator& LX);
std::vector<std::size_t> betti_vector(const RealOperator& LX, double tol = kKernelTolerance);

/**
 * Algebraic multiplicity of eigenvalue 0 per degree block. Differs from
 * betti_vector exactly when a block has a nontrivial Jordan structure at 0.
 * The exact overload uses ranks of block powers; the real overload counts
 * eigenvalues with |λ| <= tol * max(1, |block|).
 */
std::vector<std::size_t> algebraic_zero_multiplicities(const ExactOperator& LX);
std::vector<std::size_t> algebraic_zero_multiplicities(const RealOperator& LX, double tol = kSpectrumTolerance);

/// Classical Betti numbers b_k = f_k - rank d_k - rank d_{k-1}, exact ranks.
std::vector<std::size_t> classical_betti(const ExactOperator& d);

/// Spectrum of every degree block of a degree-preserving operator.
std::vector<Spectrum> block_spectra(const ExactOperator& op);
std::vector<Spectrum> block_spectra(const RealOperator& op);

long alternating_sum(const std::vector<std::size_t>& values);

struct EulerPoincare {
    long chi_f = 0;
    long chi_betti = 0;
    bool pass = false;
};

EulerPoincare euler_poincare_check(const Complex& complex, const std::vector<std::size_t>& betti);
EulerPoincare euler_poincare_check(const ExactOperator& LX);
EulerPoincare euler_poincare_check(const RealOperator& LX, double tol = kKernelTolerance);

struct McKeanSinger {
    Spectrum even_nonzero;
    Spectrum odd_nonzero;
    bool pass = false;
    double max_unpaired = 0.0;
    /// Verdict taken from exact characteristic polynomials rather than the pairing.
    bool exact = false;
};

/**
 * Nonzero spectrum on even forms versus odd forms. Values with
 * |λ| <= tol * max(1, |L_X|) count as zero; the rest must pair within tol.
 * A failed pairing is recomputed once in extended precision.
 *
 * For integer operators the verdict compares the product of the even-block
 * characteristic polynomials with the odd one, zero roots removed. Jordan
 * blocks make floating-point eigenvalues of such matrices unreliable well
 * above 1e-7, so the pairing distance is only reported.
 */
McKeanSinger mckean_singer_check(const ExactOperator& LX, double tol = kSpectrumTolerance);
McKeanSinger mckean_singer_check(const RealOperator& LX, double tol = kSpectrumTolerance);

struct SymmetryCheck {
    bool pass = false;
    double max_unpaired = 0.0;
    bool exact = false;
};

/**
 * σ(D_X) = -σ(D_X) within tol, retried in extended precision before failing.
 * D_X must swap even and odd forms.
 * Integer operators are decided by det(xI - D_X) being even or odd in x.
 */
SymmetryCheck spectral_symmetry_check(const ExactOperator& DX, double tol = kSpectrumTolerance);
SymmetryCheck spectral_symmetry_check(const RealOperator& DX, double tol = kSpectrumTolerance);

struct SpectralReport {
    std::vector<Spectrum> per_degree_spectra;
    std::vector<std::size_t> betti_x;
    std::vector<std::size_t> betti_algebraic;
    long euler_from_f = 0;
    long euler_from_betti = 0;
    long euler_from_algebraic = 0;
    std::vector<Check> checks;
};

SpectralReport spectral_report(const ExactCartan& ops, double tol = kSpectrumTolerance);
SpectralReport spectral_report(const RealCartan& ops, double tol = kSpectrumTolerance);

}  // namespace cartan
