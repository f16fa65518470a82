#pragma once

#include <cstddef>
#include <string>
#include <type_traits>
#include <vector>

#include "cartan/complex.hpp"
#include "cartan/error.hpp"
#include "cartan/int_matrix.hpp"
#include "cartan/linalg.hpp"

namespace cartan {

/// How an operator moves form degree, judged from its nonzero blocks.
enum class GradingAction { lowers_degree, raises_degree, preserves_degree, mixed };

std::string to_string(GradingAction action);
GradingAction grading_action_from_string(const std::string& s);

/**
 * A square matrix over a complex's simplex basis plus its declared grading.
 *
 * `Matrix` is IntMatrix (exact) or RealMatrix (floating point).
 */
template <class Matrix>
struct GradedOperator {
    Matrix matrix;
    ComplexPtr complex;
    GradingAction action = GradingAction::mixed;

    std::size_t order() const { return static_cast<std::size_t>(matrix.rows()); }
};

using ExactOperator = GradedOperator<IntMatrix>;
using RealOperator = GradedOperator<RealMatrix>;

/// 0 unless b is a facet of a; else (-1)^i for i the index in a of the missing vertex.
int incidence_sign(const Simplex& a, const Simplex& b);

/// Signed incidence matrix: d(i, j) = incidence_sign(simplex_i, simplex_j).
ExactOperator exterior_derivative(const ComplexPtr& complex);

struct DiracHodge {
    ExactOperator dirac;  ///< D = d + d^T
    ExactOperator hodge;  ///< L = D^2
};

DiracHodge dirac_and_hodge(const ExactOperator& d);

/// Degree-shift pattern of a matrix: which (row degree, column degree) blocks are nonzero.
struct BlockPattern {
    bool lowers = false;    ///< nonzero block with row degree < column degree
    bool raises = false;    ///< nonzero block with row degree > column degree
    bool preserves = false; ///< nonzero diagonal block
    /// Smallest and largest (row degree - column degree) among nonzero blocks.
    int min_shift = 0;
    int max_shift = 0;
};

BlockPattern block_pattern(const Complex& complex, const IntMatrix& m);
BlockPattern block_pattern(const Complex& complex, const RealMatrix& m, double zero_tol = 0.0);

/// Classification of a pattern; a zero matrix counts as degree-preserving.
GradingAction classify(const BlockPattern& pattern);

/// Checks that the declared action is consistent with the nonzero blocks.
template <class Matrix>
bool grading_consistent(const GradedOperator<Matrix>& op)
{
    const BlockPattern p = block_pattern(*op.complex, op.matrix);
    switch (op.action) {
    case GradingAction::lowers_degree: return !p.raises && !p.preserves;
    case GradingAction::raises_degree: return !p.lowers && !p.preserves;
    case GradingAction::preserves_degree: return !p.lowers && !p.raises;
    case GradingAction::mixed: return true;
    }
    return false;
}

/// The f_p x f_p diagonal block of a degree-preserving operator.
template <class Matrix>
Matrix degree_block(const GradedOperator<Matrix>& op, int p)
{
    if (op.action != GradingAction::preserves_degree)
        throw InvalidInput("degree_block requires a degree-preserving operator");
    const Complex& c = *op.complex;
    if (p < 0 || p > c.dimension()) throw InvalidInput("degree_block: degree " + std::to_string(p) + " out of range");
    const auto& br = c.block_offsets();
    const auto start = br[static_cast<std::size_t>(p)];
    const auto size = br[static_cast<std::size_t>(p) + 1] - start;
    if constexpr (std::is_same_v<Matrix, IntMatrix>) {
        return op.matrix.block(start, start, size, size);
    } else {
        const auto s = static_cast<Eigen::Index>(start), n = static_cast<Eigen::Index>(size);
        return op.matrix.block(s, s, n, n);
    }
}

/// The f_{p+1} x f_p block of d mapping degree p to degree p + 1.
IntMatrix derivative_block(const ExactOperator& d, int p);

RealOperator to_real(const ExactOperator& op);

/**
 * Re-express an operator in an externally listed basis.
 *
 * `listing` names every simplex of the complex exactly once as an ordered
 * vertex tuple; the tuple's orientation relative to the sorted simplex is
 * the sign of the sorting permutation. Returns S^T A S for the signed
 * permutation S taking the listed basis to the canonical one.
 */
IntMatrix listing_basis_change(const Complex& complex, const IntMatrix& a,
                               const std::vector<std::vector<Vertex>>& listing);

}  // namespace cartan
