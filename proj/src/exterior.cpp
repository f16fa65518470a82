#include "cartan/exterior.hpp"

#include <algorithm>
#include <climits>
#include <cmath>

namespace cartan {

std::string to_string(GradingAction action)
{
    switch (action) {
    case GradingAction::lowers_degree: return "lowers-degree";
    case GradingAction::raises_degree: return "raises-degree";
    case GradingAction::preserves_degree: return "preserves-degree";
    case GradingAction::mixed: return "mixed";
    }
    return "mixed";
}

GradingAction grading_action_from_string(const std::string& s)
{
    if (s == "lowers-degree") return GradingAction::lowers_degree;
    if (s == "raises-degree") return GradingAction::raises_degree;
    if (s == "preserves-degree") return GradingAction::preserves_degree;
    if (s == "mixed") return GradingAction::mixed;
    throw InvalidInput("unknown grading action '" + s + "'");
}

int incidence_sign(const Simplex& a, const Simplex& b)
{
    if (a.cardinality() != b.cardinality() + 1) return 0;
    const auto& av = a.vertices();
    const auto& bv = b.vertices();
    // Position of the first mismatch is the index of the missing vertex.
    std::size_t i = 0;
    while (i < bv.size() && av[i] == bv[i]) ++i;
    if (!std::equal(bv.begin() + static_cast<std::ptrdiff_t>(i), bv.end(),
                    av.begin() + static_cast<std::ptrdiff_t>(i) + 1))
        return 0;
    return i % 2 == 0 ? 1 : -1;
}

ExactOperator exterior_derivative(const ComplexPtr& complex)
{
    const Complex& c = *complex;
    IntMatrix d(c.size(), c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Simplex& s = c[i];
        if (s.cardinality() < 2) continue;
        for (std::size_t k = 0; k < s.cardinality(); ++k) {
            const auto j = c.index_of(s.without(k));
            d.set(i, *j, k % 2 == 0 ? 1 : -1);
        }
    }
    return {std::move(d), complex, GradingAction::raises_degree};
}

DiracHodge dirac_and_hodge(const ExactOperator& d)
{
    IntMatrix dirac = d.matrix + d.matrix.transpose();
    IntMatrix hodge = dirac * dirac;
    return {{std::move(dirac), d.complex, GradingAction::mixed},
            {std::move(hodge), d.complex, GradingAction::preserves_degree}};
}

namespace {

void note_shift(BlockPattern& p, bool& any, int shift)
{
    if (shift < 0) p.lowers = true;
    if (shift > 0) p.raises = true;
    if (shift == 0) p.preserves = true;
    if (!any) {
        p.min_shift = p.max_shift = shift;
        any = true;
    } else {
        p.min_shift = std::min(p.min_shift, shift);
        p.max_shift = std::max(p.max_shift, shift);
    }
}

void require_order(const Complex& complex, std::size_t rows, std::size_t cols)
{
    if (rows != complex.size() || cols != complex.size())
        throw InvalidInput("operator order " + std::to_string(rows) + "x" + std::to_string(cols) +
                           " does not match complex with " + std::to_string(complex.size()) + " simplices");
}

}  // namespace

BlockPattern block_pattern(const Complex& complex, const IntMatrix& m)
{
    require_order(complex, m.rows(), m.cols());
    BlockPattern p;
    bool any = false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (const auto& e : m.row(i)) note_shift(p, any, complex.degree_of(i) - complex.degree_of(e.col));
    return p;
}

BlockPattern block_pattern(const Complex& complex, const RealMatrix& m, double zero_tol)
{
    require_order(complex, static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    BlockPattern p;
    bool any = false;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (std::abs(m(i, j)) > zero_tol)
                note_shift(p, any,
                           complex.degree_of(static_cast<std::size_t>(i)) -
                               complex.degree_of(static_cast<std::size_t>(j)));
    return p;
}

GradingAction classify(const BlockPattern& p)
{
    const int kinds = int(p.lowers) + int(p.raises) + int(p.preserves);
    if (kinds > 1) return GradingAction::mixed;
    if (p.lowers) return GradingAction::lowers_degree;
    if (p.raises) return GradingAction::raises_degree;
    return GradingAction::preserves_degree;
}

IntMatrix derivative_block(const ExactOperator& d, int p)
{
    const Complex& c = *d.complex;
    if (p < 0 || p >= c.dimension()) throw InvalidInput("derivative_block: degree out of range");
    const auto& br = c.block_offsets();
    const auto k = static_cast<std::size_t>(p);
    return d.matrix.block(br[k + 1], br[k], br[k + 2] - br[k + 1], br[k + 1] - br[k]);
}

RealOperator to_real(const ExactOperator& op) { return {op.matrix.to_real(), op.complex, op.action}; }

IntMatrix listing_basis_change(const Complex& complex, const IntMatrix& a,
                               const std::vector<std::vector<Vertex>>& listing)
{
    if (listing.size() != complex.size())
        throw InvalidInput("listing must name every simplex of the complex exactly once");
    std::vector<std::size_t> index(listing.size());
    std::vector<IntMatrix::Scalar> sign(listing.size());
    std::vector<char> hit(complex.size(), 0);
    for (std::size_t i = 0; i < listing.size(); ++i) {
        std::vector<Vertex> v = listing[i];
        // Parity of the sorting permutation by counting inversions.
        int inversions = 0;
        for (std::size_t x = 0; x < v.size(); ++x)
            for (std::size_t y = x + 1; y < v.size(); ++y) inversions += v[x] > v[y];
        std::sort(v.begin(), v.end());
        const auto j = complex.index_of(Simplex(v));
        if (!j || hit[*j]) throw InvalidInput("listing entry is missing from the complex or repeated");
        hit[*j] = 1;
        index[i] = *j;
        sign[i] = inversions % 2 == 0 ? 1 : -1;
    }
    IntMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < listing.size(); ++i)
        for (std::size_t j = 0; j < listing.size(); ++j) {
            const auto v = a(index[i], index[j]);
            if (v != 0) out.set(i, j, sign[i] * sign[j] * v);
        }
    return out;
}

}  // namespace cartan
