#include "cartan/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "cartan/error.hpp"

namespace cartan {

namespace {

bool spectrum_less(const Complex128& a, const Complex128& b)
{
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

template <class Matrix>
Eigen::VectorXd singular_values(const Matrix& a)
{
    if (a.size() == 0) return {};
    return Eigen::BDCSVD<Matrix>(a).singularValues();
}

template <class Matrix>
std::size_t rank_from_svd(const Matrix& a, double tol)
{
    const Eigen::VectorXd s = singular_values(a);
    if (s.size() == 0) return 0;
    const double cutoff = tol * std::max(1.0, s(0));
    return static_cast<std::size_t>((s.array() > cutoff).count());
}

template <class Matrix, class Vector>
Vector pinv_apply(const Matrix& a, const Vector& v, double tol)
{
    if (a.rows() != a.cols()) throw InvalidInput("pseudo-inverse requires a square matrix");
    if (v.size() != a.cols()) throw InvalidInput("pseudo-inverse: vector length does not match matrix order");
    if (a.size() == 0) return v;
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd& s = svd.singularValues();
    const double cutoff = tol * std::max(1.0, s(0));
    Vector coeffs = svd.matrixU().adjoint() * v;
    for (Eigen::Index i = 0; i < s.size(); ++i) coeffs(i) = s(i) > cutoff ? coeffs(i) / s(i) : 0.0;
    return svd.matrixV() * coeffs;
}

}  // namespace

double Spectrum::max_abs_imag() const
{
    double m = 0.0;
    for (const auto& z : values) m = std::max(m, std::abs(z.imag()));
    return m;
}

Spectrum make_spectrum(std::vector<Complex128> values)
{
    std::sort(values.begin(), values.end(), spectrum_less);
    return Spectrum{std::move(values)};
}

void require_finite(const RealMatrix& a, const char* where)
{
    if (!a.allFinite()) throw InvalidInput(std::string(where) + ": non-finite matrix entry");
}

void require_finite(const ComplexMatrix& a, const char* where)
{
    if (!a.allFinite()) throw InvalidInput(std::string(where) + ": non-finite matrix entry");
}

Spectrum eigenvalues(const RealMatrix& a)
{
    if (a.rows() != a.cols()) throw InvalidInput("eigenvalues: matrix must be square");
    require_finite(a, "eigenvalues");
    if (a.size() == 0) return {};
    Eigen::EigenSolver<RealMatrix> solver(a, false);
    if (solver.info() != Eigen::Success) throw InvalidInput("eigenvalues: QR iteration did not converge");
    const auto& ev = solver.eigenvalues();
    return make_spectrum(std::vector<Complex128>(ev.data(), ev.data() + ev.size()));
}

Spectrum eigenvalues_extended(const RealMatrix& a)
{
    using Wide = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    if (a.rows() != a.cols()) throw InvalidInput("eigenvalues: matrix must be square");
    require_finite(a, "eigenvalues");
    if (a.size() == 0) return {};
    Eigen::EigenSolver<Wide> solver(a.cast<long double>(), false);
    if (solver.info() != Eigen::Success) throw InvalidInput("eigenvalues: QR iteration did not converge");
    std::vector<Complex128> values;
    for (const auto& z : solver.eigenvalues())
        values.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    return make_spectrum(std::move(values));
}

Spectrum eigenvalues(const ComplexMatrix& a)
{
    if (a.rows() != a.cols()) throw InvalidInput("eigenvalues: matrix must be square");
    require_finite(a, "eigenvalues");
    if (a.size() == 0) return {};
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, false);
    if (solver.info() != Eigen::Success) throw InvalidInput("eigenvalues: QR iteration did not converge");
    const auto& ev = solver.eigenvalues();
    return make_spectrum(std::vector<Complex128>(ev.data(), ev.data() + ev.size()));
}

SpectrumMatch match_spectra(const Spectrum& a, const Spectrum& b, double tol)
{
    if (a.size() != b.size()) return {false, std::numeric_limits<double>::infinity()};
    std::vector<char> used(b.size(), 0);
    double worst = 0.0;
    for (const auto& z : a.values) {
        std::size_t best = b.size();
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            const double dist = std::abs(z - b.values[j]);
            if (dist < best_dist) {
                best_dist = dist;
                best = j;
            }
        }
        used[best] = 1;
        worst = std::max(worst, best_dist);
    }
    return {worst <= tol, worst};
}

double matrix_norm(const RealMatrix& a) { return a.norm(); }
double matrix_norm(const ComplexMatrix& a) { return a.norm(); }

std::size_t numeric_rank(const RealMatrix& a, double tol) { return rank_from_svd(a, tol); }
std::size_t numeric_rank(const ComplexMatrix& a, double tol) { return rank_from_svd(a, tol); }

std::size_t kernel_dimension(const RealMatrix& a, double tol)
{
    return static_cast<std::size_t>(a.cols()) - rank_from_svd(a, tol);
}

std::size_t kernel_dimension(const ComplexMatrix& a, double tol)
{
    return static_cast<std::size_t>(a.cols()) - rank_from_svd(a, tol);
}

std::size_t kernel_dimension(const IntMatrix& a) { return a.cols() - exact_rank(a); }

RealVector apply_pseudo_inverse(const RealMatrix& a, const RealVector& v, double tol)
{
    return pinv_apply(a, v, tol);
}

ComplexVector apply_pseudo_inverse(const ComplexMatrix& a, const ComplexVector& v, double tol)
{
    return pinv_apply(a, v, tol);
}

RealMatrix matrix_exponential(const RealMatrix& a)
{
    if (a.rows() != a.cols()) throw InvalidInput("matrix_exponential: matrix must be square");
    if (a.size() == 0) return a;
    return a.exp();
}

ComplexMatrix matrix_exponential(const ComplexMatrix& a)
{
    if (a.rows() != a.cols()) throw InvalidInput("matrix_exponential: matrix must be square");
    if (a.size() == 0) return a;
    return a.exp();
}

}  // namespace cartan
