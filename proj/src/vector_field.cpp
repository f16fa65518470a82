#include "cartan/vector_field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cartan {

DegreeSet odd_degrees(int dimension)
{
    DegreeSet s;
    for (int p = 1; p <= dimension; p += 2) s.insert(p);
    return s;
}

DegreeSet even_degrees(int dimension)
{
    DegreeSet s;
    for (int p = 2; p <= dimension; p += 2) s.insert(p);
    return s;
}

DegreeSet all_degrees(int dimension)
{
    DegreeSet s;
    for (int p = 1; p <= dimension; ++p) s.insert(p);
    return s;
}

DegreeSet parse_support(const std::string& spec, int dimension)
{
    if (spec == "odd") return odd_degrees(dimension);
    if (spec == "even") return even_degrees(dimension);
    if (spec == "all") return all_degrees(dimension);
    DegreeSet s;
    std::stringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            const int p = std::stoi(item, &used);
            if (used != item.size() || p < 1) throw InvalidInput("");
            s.insert(p);
        } catch (const std::exception&) {
            throw InvalidInput("bad support '" + spec + "': expected odd, even, all or degrees >= 1 like 1,3");
        }
    }
    if (s.empty()) throw InvalidInput("empty support specification");
    return s;
}

DegreeSet support_from_target_cardinalities(const std::set<int>& cardinalities)
{
    DegreeSet s;
    for (int c : cardinalities)
        if (c >= 1) s.insert(c);
    return s;
}

namespace {

template <class Scalar>
void write_entry(IntMatrix& m, std::size_t i, std::size_t j, Scalar v, WriteMode mode)
{
    if (mode == WriteMode::overwrite)
        m.set(i, j, v);
    else
        m.add_to(i, j, v);
}

template <class Scalar>
void write_entry(RealMatrix& m, std::size_t i, std::size_t j, Scalar v, WriteMode mode)
{
    const auto r = static_cast<Eigen::Index>(i), c = static_cast<Eigen::Index>(j);
    if (mode == WriteMode::overwrite)
        m(r, c) = v;
    else
        m(r, c) += v;
}

template <class Matrix>
Matrix zero_matrix(std::size_t n)
{
    if constexpr (std::is_same_v<Matrix, IntMatrix>)
        return IntMatrix(n, n);
    else
        return RealMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

template <class Matrix>
DegreeSet support_of(const Complex& c, const Matrix& m)
{
    DegreeSet s;
    const auto& br = c.block_offsets();
    for (int p = 1; p <= c.dimension(); ++p) {
        const auto k = static_cast<std::size_t>(p);
        bool nonzero = false;
        if constexpr (std::is_same_v<Matrix, IntMatrix>) {
            for (std::size_t i = br[k - 1]; !nonzero && i < br[k]; ++i)
                for (const auto& e : m.row(i))
                    if (e.col >= br[k] && e.col < br[k + 1]) nonzero = true;
        } else {
            nonzero = m.block(static_cast<Eigen::Index>(br[k - 1]), static_cast<Eigen::Index>(br[k]),
                              static_cast<Eigen::Index>(br[k] - br[k - 1]),
                              static_cast<Eigen::Index>(br[k + 1] - br[k]))
                          .cwiseAbs()
                          .maxCoeff() > 0.0;
        }
        if (nonzero) s.insert(p);
    }
    return s;
}

template <class Matrix>
Matrix product(const Matrix& a, const Matrix& b)
{
    return a * b;
}

template <class Matrix>
InteriorDerivative<Matrix> finish_field(const ComplexPtr& complex, Matrix m, DegreeSet support)
{
    InteriorDerivative<Matrix> f{{std::move(m), complex, GradingAction::lowers_degree}, std::move(support), false};
    f.nilpotent_verified = approx_zero(product(f.op.matrix, f.op.matrix), 1.0 + max_abs_entry(f.op.matrix));
    return f;
}

template <class Scalar, class Matrix>
InteriorDerivative<Matrix> edge_field(const ComplexPtr& complex, const std::map<Simplex, Scalar>& coefficients,
                                      const DegreeSet& support, WriteMode mode)
{
    const Complex& c = *complex;
    for (const auto& [edge, _] : coefficients)
        if (edge.cardinality() != 2 || !c.index_of(edge))
            throw InvalidInput("field coefficient keyed by a non-edge of the complex");

    Matrix m = zero_matrix<Matrix>(c.size());
    for (const auto& [edge, coeff] : coefficients) {  // std::map iterates in basis order
        const Vertex u = edge[0];
        for (std::size_t k = 0; k < c.size(); ++k) {
            const Simplex& x = c[k];
            if (!support.count(x.dimension()) || !edge.is_face_of(x)) continue;
            const auto pos = static_cast<std::size_t>(
                std::lower_bound(x.vertices().begin(), x.vertices().end(), u) - x.vertices().begin());
            const Simplex y = x.without(pos);
            const std::size_t row = *c.index_of(y);
            write_entry(m, row, k, coeff * static_cast<Scalar>(incidence_sign(x, y)), mode);
        }
    }
    return finish_field(complex, std::move(m), support);
}

template <class Matrix>
InteriorDerivative<Matrix> matrix_field(const ComplexPtr& complex, Matrix m)
{
    const BlockPattern p = block_pattern(*complex, m);
    const bool zero = !p.lowers && !p.raises && !p.preserves;
    if (!zero && (p.min_shift != -1 || p.max_shift != -1))
        throw InvalidInput("interior derivative must map degree p to degree p-1 only");
    DegreeSet support = support_of(*complex, m);
    return finish_field(complex, std::move(m), std::move(support));
}

}  // namespace

ExactField build_edge_field(const ComplexPtr& complex, const std::map<Simplex, std::int64_t>& coefficients,
                            const DegreeSet& support, WriteMode mode)
{
    return edge_field<std::int64_t, IntMatrix>(complex, coefficients, support, mode);
}

RealField build_edge_field(const ComplexPtr& complex, const std::map<Simplex, double>& coefficients,
                           const DegreeSet& support, WriteMode mode)
{
    return edge_field<double, RealMatrix>(complex, coefficients, support, mode);
}

ExactField random_integer_field(const ComplexPtr& complex, const DegreeSet& support, Rng& rng, std::int64_t lo,
                                std::int64_t hi, WriteMode mode)
{
    std::map<Simplex, std::int64_t> coeffs;
    for (const auto& s : complex->simplices())
        if (s.cardinality() == 2) coeffs.emplace(s, rng.uniform_int(lo, hi));
    return build_edge_field(complex, coeffs, support, mode);
}

RealField random_real_field(const ComplexPtr& complex, const DegreeSet& support, Rng& rng, WriteMode mode)
{
    std::map<Simplex, double> coeffs;
    for (const auto& s : complex->simplices())
        if (s.cardinality() == 2) coeffs.emplace(s, rng.uniform_real());
    return build_edge_field(complex, coeffs, support, mode);
}

ExactField deterministic_field(const ExactOperator& d, const std::vector<Simplex>& edge_priority)
{
    const Complex& c = *d.complex;
    std::vector<std::size_t> order;
    std::vector<char> listed(c.size(), 0);
    for (const auto& e : edge_priority) {
        const auto j = c.index_of(e);
        if (!j || e.cardinality() != 2) throw InvalidInput("edge priority names a non-edge of the complex");
        if (!listed[*j]) order.push_back(*j);
        listed[*j] = 1;
    }
    for (std::size_t j = 0; j < c.size(); ++j)
        if (!listed[j]) order.push_back(j);

    const IntMatrix dt = d.matrix.transpose();
    const std::size_t vertices = c.f_vector().empty() ? 0 : c.f_vector()[0];
    IntMatrix m(c.size(), c.size());
    for (std::size_t k = 0; k < vertices; ++k) {
        for (auto l : order) {
            const auto v = dt(k, l);
            if (v == 1 || v == -1) {
                m.set(k, l, v);
                break;
            }
        }
    }
    return finish_field(d.complex, std::move(m), c.dimension() >= 1 ? DegreeSet{1} : DegreeSet{});
}

ExactField adjoint_field(const ExactOperator& d)
{
    return finish_field(d.complex, d.matrix.transpose(), all_degrees(d.complex->dimension()));
}

ExactField zero_field(const ComplexPtr& complex)
{
    return finish_field(complex, IntMatrix(complex->size(), complex->size()), DegreeSet{});
}

ExactField sparsified_field(const ExactOperator& d, double p, Rng& rng)
{
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("sparsified field: probability must lie in [0, 1]");
    const IntMatrix dt = d.matrix.transpose();
    IntMatrix m(dt.rows(), dt.cols());
    for (std::size_t i = 0; i < dt.rows(); ++i)
        for (const auto& e : dt.row(i))
            if (rng.bernoulli(p)) m.set(i, e.col, e.value);
    DegreeSet support = support_of(*d.complex, m);
    return finish_field(d.complex, std::move(m), std::move(support));
}

ExactField field_from_matrix(const ComplexPtr& complex, IntMatrix matrix)
{
    return matrix_field(complex, std::move(matrix));
}

RealField field_from_matrix(const ComplexPtr& complex, RealMatrix matrix)
{
    return matrix_field(complex, std::move(matrix));
}

RealField to_real(const ExactField& field)
{
    return {to_real(field.op), field.support, field.nilpotent_verified};
}

double max_abs_entry(const IntMatrix& m) { return static_cast<double>(m.max_abs()); }
double max_abs_entry(const RealMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool approx_zero(const IntMatrix& m, double) { return m.is_zero(); }
bool approx_zero(const RealMatrix& m, double scale)
{
    return max_abs_entry(m) <= kIdentityTolerance * std::max(1.0, scale);
}

bool same_complex(const ComplexPtr& a, const ComplexPtr& b)
{
    return a == b || (a && b && *a == *b);
}

template <class Matrix>
CartanOperators<Matrix> cartan(const GradedOperator<Matrix>& d, const InteriorDerivative<Matrix>& iX)
{
    if (!same_complex(d.complex, iX.op.complex)) throw InvalidInput("cartan: operators live on different complexes");
    const Matrix& dm = d.matrix;
    const Matrix& im = iX.op.matrix;
    Matrix DX = dm + im;
    Matrix LX = Matrix(dm * im) + Matrix(im * dm);
    const double scale = std::pow(1.0 + max_abs_entry(im), 2.0) * static_cast<double>(d.order());

    CartanOperators<Matrix> out{iX, {std::move(DX), d.complex, GradingAction::mixed},
                                {std::move(LX), d.complex, GradingAction::preserves_degree}};
    out.nilpotent = approx_zero(product(im, im), scale);
    out.iX.nilpotent_verified = out.nilpotent;
    out.squares_to_lie = approx_zero(Matrix(product(out.DX.matrix, out.DX.matrix) - out.LX.matrix), scale);
    return out;
}

template <class Matrix>
InteriorDerivative<Matrix> lie_bracket(const InteriorDerivative<Matrix>& iX, const InteriorDerivative<Matrix>& iY,
                                       const GradedOperator<Matrix>& d)
{
    if (!same_complex(iX.op.complex, iY.op.complex) || !same_complex(iX.op.complex, d.complex))
        throw InvalidInput("lie_bracket: operators live on different complexes");
    const Matrix& dm = d.matrix;
    const Matrix LX = Matrix(dm * iX.op.matrix) + Matrix(iX.op.matrix * dm);
    Matrix iZ = Matrix(LX * iY.op.matrix) - Matrix(iY.op.matrix * LX);
    DegreeSet support = support_of(*d.complex, iZ);
    return finish_field(d.complex, std::move(iZ), std::move(support));
}

template <class Matrix>
Matrix lie_bracket_alternative(const InteriorDerivative<Matrix>& iX, const InteriorDerivative<Matrix>& iY,
                               const GradedOperator<Matrix>& d)
{
    if (!same_complex(iX.op.complex, iY.op.complex) || !same_complex(iX.op.complex, d.complex))
        throw InvalidInput("lie_bracket: operators live on different complexes");
    const Matrix& dm = d.matrix;
    const Matrix LY = Matrix(dm * iY.op.matrix) + Matrix(iY.op.matrix * dm);
    return Matrix(iX.op.matrix * LY) - Matrix(LY * iX.op.matrix);
}

template ExactCartan cartan(const ExactOperator&, const ExactField&);
template RealCartan cartan(const RealOperator&, const RealField&);
template ExactField lie_bracket(const ExactField&, const ExactField&, const ExactOperator&);
template RealField lie_bracket(const RealField&, const RealField&, const RealOperator&);
template IntMatrix lie_bracket_alternative(const ExactField&, const ExactField&, const ExactOperator&);
template RealMatrix lie_bracket_alternative(const RealField&, const RealField&, const RealOperator&);

}  // namespace cartan
