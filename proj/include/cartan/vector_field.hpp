#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cartan/complex.hpp"
#include "cartan/exterior.hpp"
#include "cartan/rng.hpp"

namespace cartan {

/// Source degrees p on which a field may act (Λ^p -> Λ^{p-1}), p >= 1.
using DegreeSet = std::set<int>;

DegreeSet odd_degrees(int dimension);
DegreeSet even_degrees(int dimension);
DegreeSet all_degrees(int dimension);

/// "odd", "even", "all", or a comma list such as "1,3".
DegreeSet parse_support(const std::string& spec, int dimension);

/**
 * Convert target cardinalities (the {1,3,5,7,9} style parameter of the
 * reference construction) into source degrees. A write into a simplex of
 * cardinality c comes from a source of degree c, so the sets coincide
 * numerically; the function exists to make the convention explicit.
 */
DegreeSet support_from_target_cardinalities(const std::set<int>& cardinalities);

/**
 * Interior derivative i_X: lowers form degree by exactly one.
 */
template <class Matrix>
struct InteriorDerivative {
    GradedOperator<Matrix> op;
    DegreeSet support;
    /// i_X^2 == 0 was checked (exactly, or to rounding for real matrices).
    bool nilpotent_verified = false;

    const Matrix& matrix() const { return op.matrix; }
};

using ExactField = InteriorDerivative<IntMatrix>;
using RealField = InteriorDerivative<RealMatrix>;

enum class WriteMode { overwrite, accumulate };

/**
 * Edge-generated field. Edges are visited in basis order; for edge {u,v}
 * with coefficient c and every simplex x containing it, the entry
 * (x \ {u}, x) becomes c * incidence_sign(x, x \ {u}) when deg(x) is in
 * `support`. With WriteMode::overwrite a later edge replaces an earlier
 * write to the same entry, as in the reference construction.
 */
ExactField build_edge_field(const ComplexPtr& complex, const std::map<Simplex, std::int64_t>& coefficients,
                            const DegreeSet& support, WriteMode mode = WriteMode::overwrite);
RealField build_edge_field(const ComplexPtr& complex, const std::map<Simplex, double>& coefficients,
                           const DegreeSet& support, WriteMode mode = WriteMode::overwrite);

/// Coefficients drawn per edge in basis order, uniform in {lo..hi}.
ExactField random_integer_field(const ComplexPtr& complex, const DegreeSet& support, Rng& rng,
                                std::int64_t lo = 0, std::int64_t hi = 1, WriteMode mode = WriteMode::overwrite);
/// Coefficients drawn per edge in basis order, uniform in [0, 1).
RealField random_real_field(const ComplexPtr& complex, const DegreeSet& support, Rng& rng,
                            WriteMode mode = WriteMode::overwrite);

/**
 * Each vertex row copies the first +-1 entry of d^T, acting on degree 1 only.
 * Columns are scanned in basis order unless `edge_priority` lists edges to
 * try first.
 */
ExactField deterministic_field(const ExactOperator& d, const std::vector<Simplex>& edge_priority = {});

ExactField adjoint_field(const ExactOperator& d);
ExactField zero_field(const ComplexPtr& complex);
/// d^T with every nonzero entry kept independently with probability p (row-major draw order).
ExactField sparsified_field(const ExactOperator& d, double p, Rng& rng);

/// Raw import of an arbitrary matrix; it must lower degree by exactly one.
ExactField field_from_matrix(const ComplexPtr& complex, IntMatrix matrix);
RealField field_from_matrix(const ComplexPtr& complex, RealMatrix matrix);

RealField to_real(const ExactField& field);

template <class Matrix>
struct CartanOperators {
    InteriorDerivative<Matrix> iX;
    GradedOperator<Matrix> DX;  ///< d + i_X
    GradedOperator<Matrix> LX;  ///< d i_X + i_X d
    bool nilpotent = false;       ///< i_X^2 == 0
    bool squares_to_lie = false;  ///< D_X^2 == L_X
};

using ExactCartan = CartanOperators<IntMatrix>;
using RealCartan = CartanOperators<RealMatrix>;

template <class Matrix>
CartanOperators<Matrix> cartan(const GradedOperator<Matrix>& d, const InteriorDerivative<Matrix>& iX);

/// i_Z = L_X i_Y - i_Y L_X.
template <class Matrix>
InteriorDerivative<Matrix> lie_bracket(const InteriorDerivative<Matrix>& iX, const InteriorDerivative<Matrix>& iY,
                                       const GradedOperator<Matrix>& d);

/// The alternative bracket formula i_X L_Y - L_Y i_X.
template <class Matrix>
Matrix lie_bracket_alternative(const InteriorDerivative<Matrix>& iX, const InteriorDerivative<Matrix>& iY,
                               const GradedOperator<Matrix>& d);

/// Largest absolute entry; exact zero test for IntMatrix.
double max_abs_entry(const IntMatrix& m);
double max_abs_entry(const RealMatrix& m);

/// Relative tolerance for "equal" on real matrices (scaled by operand size).
inline constexpr double kIdentityTolerance = 1e-10;

bool approx_zero(const IntMatrix& m, double scale = 1.0);
bool approx_zero(const RealMatrix& m, double scale = 1.0);

bool same_complex(const ComplexPtr& a, const ComplexPtr& b);

}  // namespace cartan
