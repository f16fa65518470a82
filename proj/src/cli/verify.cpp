#include <algorithm>
#include <cmath>

#include "cartan/cli.hpp"
#include "cartan/error.hpp"

namespace cartan::cli {

namespace {

template <class Matrix>
Matrix mul(const Matrix& a, const Matrix& b)
{
    return Matrix(a * b);
}

template <class Matrix>
Matrix transposed(const Matrix& a)
{
    if constexpr (std::is_same_v<Matrix, IntMatrix>)
        return a.transpose();
    else
        return Matrix(a.transpose());
}

template <class Matrix>
Matrix identity_like(const Matrix& a)
{
    if constexpr (std::is_same_v<Matrix, IntMatrix>)
        return IntMatrix::identity(a.rows());
    else
        return RealMatrix::Identity(a.rows(), a.cols());
}

RealMatrix as_real(const IntMatrix& m) { return m.to_real(); }
const RealMatrix& as_real(const RealMatrix& m) { return m; }

/// Every nonzero entry shifts degree by exactly `shift` (the zero matrix qualifies).
template <class Matrix>
bool uniform_shift(const Complex& c, const Matrix& m, int shift)
{
    const BlockPattern p = block_pattern(c, m);
    const bool zero = !p.lowers && !p.raises && !p.preserves;
    return zero || (p.min_shift == shift && p.max_shift == shift);
}

bool odd_supported(const DegreeSet& s)
{
    return std::all_of(s.begin(), s.end(), [](int p) { return p % 2 == 1; });
}

Check zero_check(std::string name, const IntMatrix& m, double)
{
    return {std::move(name), m.is_zero(), max_abs_entry(m), ""};
}

Check zero_check(std::string name, const RealMatrix& m, double scale)
{
    return {std::move(name), approx_zero(m, scale), max_abs_entry(m), ""};
}

Check pattern_check(std::string name, bool ok)
{
    return {std::move(name), ok, ok ? 0.0 : 1.0, ""};
}

Check conditional(Check c, bool hypothesis, const char* what)
{
    if (!hypothesis) {
        c.required = false;
        c.note = std::string("hypothesis fails (") + what + "); reported only";
    }
    return c;
}

template <class Matrix>
std::vector<Check> suite(const GradedOperator<Matrix>& d, const InteriorDerivative<Matrix>& X,
                         const InteriorDerivative<Matrix>& Y, double tol)
{
    const Complex& c = *d.complex;
    const Matrix& dm = d.matrix;
    const Matrix dt = transposed(dm);
    const double sx = 1.0 + max_abs_entry(X.matrix());
    const double sy = 1.0 + max_abs_entry(Y.matrix());
    const double order = std::max<double>(1.0, static_cast<double>(d.order()));
    const double scale = order * order * sx * sx * sy * sy;
    std::vector<Check> out;

    // exterior
    out.push_back(zero_check("d_squared_zero", mul(dm, dm), order));
    out.push_back(pattern_check("d_raises_degree_by_one", uniform_shift(c, dm, 1)));
    {
        const RealMatrix D = as_real(Matrix(dm + dt));
        const RealMatrix L = D * D;
        const Spectrum sd = eigenvalues(D);
        std::vector<Complex128> squared;
        for (const auto& z : sd.values) squared.push_back(z * z);
        const SpectrumMatch m =
            match_spectra(eigenvalues(L), make_spectrum(std::move(squared)), tol * std::max(1.0, L.norm()));
        out.push_back({"hodge_spectrum_is_dirac_squared", m.pass, m.max_distance, ""});
        const McKeanSinger ms = mckean_singer_check(RealOperator{L, d.complex, GradingAction::preserves_degree}, tol);
        out.push_back({"hodge_mckean_singer", ms.pass, ms.max_unpaired, ""});
    }

    // vector_field
    const auto ops = cartan(d, X);
    out.push_back(pattern_check("iX_lowers_degree_by_one", uniform_shift(c, X.matrix(), -1)));
    out.push_back(zero_check("lie_derivative_commutes_with_d", Matrix(mul(ops.LX.matrix, dm) - mul(dm, ops.LX.matrix)),
                             scale));
    {
        const Matrix sq = mul(X.matrix(), X.matrix());
        const Matrix gap = mul(ops.DX.matrix, ops.DX.matrix) - ops.LX.matrix;
        Check f{"nilpotent_iff_DX_squared_is_LX", ops.nilpotent == ops.squares_to_lie, max_abs_entry(gap), ""};
        f.note = std::string("iX^2 ") + (ops.nilpotent ? "= 0" : "!= 0") + ", |iX^2| = " +
                 std::to_string(max_abs_entry(sq));
        out.push_back(std::move(f));
        out.push_back(conditional(zero_check("iX_squared_zero", sq, scale), odd_supported(X.support),
                                  "X is not odd-supported"));
    }

    const auto opsY = cartan(d, Y);
    const auto Z = lie_bracket(X, Y, d);
    const auto opsZ = cartan(d, Z);
    out.push_back(zero_check("lie_bracket_homomorphism",
                             Matrix(opsZ.LX.matrix - (mul(ops.LX.matrix, opsY.LX.matrix) -
                                                      mul(opsY.LX.matrix, ops.LX.matrix))),
                             scale * scale));
    {
        const bool commuting_zero = approx_zero(mul(X.matrix(), Y.matrix()), scale) &&
                                    approx_zero(mul(Y.matrix(), X.matrix()), scale);
        out.push_back(conditional(
            zero_check("bracket_formulas_agree", Matrix(Z.matrix() - lie_bracket_alternative(X, Y, d)), scale * scale),
            commuting_zero, "iX iY or iY iX is nonzero"));
    }
    {
        Matrix power = identity_like(Z.matrix());
        for (int k = 0; k <= c.dimension(); ++k) power = mul(power, Z.matrix());
        out.push_back(zero_check("bracket_nilpotent_power", power, std::pow(scale, c.dimension() + 1.0)));
    }
    const bool both_odd = odd_supported(X.support) && odd_supported(Y.support);
    out.push_back(conditional(zero_check("bracket_iZ_squared_zero", mul(Z.matrix(), Z.matrix()), scale * scale),
                              both_odd, "X or Y is not odd-supported"));
    out.push_back(conditional(
        zero_check("bracket_DZ_squared_is_LZ", Matrix(mul(opsZ.DX.matrix, opsZ.DX.matrix) - opsZ.LX.matrix),
                   scale * scale),
        both_odd, "X or Y is not odd-supported"));

    // spectral
    const SpectralReport report = spectral_report(ops, tol);
    for (const auto& check : report.checks) out.push_back(check);
    return out;
}

}  // namespace

std::vector<Check> verification_suite(const ExactOperator& d, const AnyField& x, const AnyField& y, double tol)
{
    if (std::holds_alternative<ExactField>(x) && std::holds_alternative<ExactField>(y)) {
        try {
            return suite(d, std::get<ExactField>(x), std::get<ExactField>(y), tol);
        } catch (const ArithmeticOverflow&) {
            // int64 products overflowed; the floating suite below still applies
        }
    }
    auto real = [](const AnyField& f) {
        return std::visit(
            [](const auto& g) -> RealField {
                if constexpr (std::is_same_v<std::decay_t<decltype(g)>, ExactField>)
                    return to_real(g);
                else
                    return g;
            },
            f);
    };
    return suite(to_real(d), real(x), real(y), tol);
}

bool all_required_pass(const std::vector<Check>& checks)
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass || !c.required; });
}

}  // namespace cartan::cli
