#pragma once

// Reference computations for the tests. Written directly from definitions,
// without the library's linear-algebra backends, so a test comparing the two
// is comparing independent implementations.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <set>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "cartan/complex.hpp"
#include "cartan/int_matrix.hpp"

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;
using Poly = std::vector<Rational>;  // coefficients, lowest degree first
using Dense = std::vector<std::vector<std::int64_t>>;

/// det(x I - A) by Faddeev-LeVerrier over the rationals.
inline Poly charpoly(const Dense& a)
{
    const std::size_t n = a.size();
    using RM = std::vector<std::vector<Rational>>;
    RM A(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A[i][j] = a[i][j];
    auto mul = [n](const RM& x, const RM& y) {
        RM z(n, std::vector<Rational>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                if (x[i][k] != 0)
                    for (std::size_t j = 0; j < n; ++j) z[i][j] += x[i][k] * y[k][j];
        return z;
    };
    Poly c(n + 1);
    c[n] = 1;
    RM M(n, std::vector<Rational>(n));  // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t i = 0; i < n; ++i) M[i][i] += c[n - k + 1];
        const RM AM = mul(A, M);
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += AM[i][i];
        c[n - k] = -tr / static_cast<int>(k);
        M = AM;
    }
    return c;
}

inline Poly charpoly(const cartan::IntMatrix& a) { return charpoly(a.to_dense()); }

inline Poly multiply(const Poly& p, const Poly& q)
{
    Poly r(p.size() + q.size() - 1);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
    return r;
}

/// prod (x - r) over integer roots, times each extra factor.
inline Poly from_roots(const std::vector<int>& roots, const std::vector<Poly>& factors = {})
{
    Poly p{1};
    for (int r : roots) p = multiply(p, Poly{-r, 1});
    for (const auto& f : factors) p = multiply(p, f);
    return p;
}

/// x^2 - 2, whose roots are +-sqrt(2).
inline Poly x2_minus_2() { return Poly{-2, 0, 1}; }

inline std::complex<double> evaluate(const Poly& p, std::complex<double> z)
{
    std::complex<double> acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + static_cast<double>(*it);
    return acc;
}

/// Exact rank by rational Gaussian elimination.
inline std::size_t rank(const Dense& a)
{
    if (a.empty()) return 0;
    std::vector<std::vector<Rational>> m(a.size(), std::vector<Rational>(a[0].size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) m[i][j] = a[i][j];
    std::size_t r = 0;
    for (std::size_t c = 0; c < m[0].size() && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            if (m[i][c] == 0) continue;
            const Rational f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < m[0].size(); ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

/// Every non-empty subset of every simplex is present.
inline bool is_closed(const cartan::Complex& c)
{
    std::set<std::vector<int>> present;
    for (const auto& s : c.simplices()) present.insert(s.vertices());
    for (const auto& s : c.simplices()) {
        const auto& v = s.vertices();
        const std::size_t k = v.size();
        for (std::uint64_t mask = 1; mask < (1ULL << k); ++mask) {
            std::vector<int> sub;
            for (std::size_t i = 0; i < k; ++i)
                if (mask >> i & 1) sub.push_back(v[i]);
            if (!present.count(sub)) return false;
        }
    }
    return true;
}

/// d from the definition: (-1)^i where the column simplex drops vertex i of the row simplex.
inline Dense exterior_derivative(const cartan::Complex& c)
{
    const std::size_t n = c.size();
    Dense d(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t r = 0; r < n; ++r) {
        const auto& big = c[r].vertices();
        for (std::size_t col = 0; col < n; ++col) {
            const auto& small = c[col].vertices();
            if (small.size() + 1 != big.size()) continue;
            for (std::size_t i = 0; i < big.size(); ++i) {
                std::vector<int> rest = big;
                rest.erase(rest.begin() + static_cast<long>(i));
                if (rest == small) d[r][col] = i % 2 == 0 ? 1 : -1;
            }
        }
    }
    return d;
}

inline Dense product(const Dense& a, const Dense& b)
{
    Dense c(a.size(), std::vector<std::int64_t>(b.empty() ? 0 : b[0].size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            for (std::size_t j = 0; j < c[i].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

/// Moore-Penrose inverse by the Ben-Israel iteration X <- X (2I - A X), X0 = A^T / |A|_1 |A|_inf.
inline Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& a)
{
    const double n1 = a.cwiseAbs().colwise().sum().maxCoeff();
    const double ninf = a.cwiseAbs().rowwise().sum().maxCoeff();
    Eigen::MatrixXd x = a.transpose() / (n1 * ninf);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(a.rows(), a.rows());
    for (int k = 0; k < 200; ++k) {
        Eigen::MatrixXd next = x * (2.0 * I - a * x);
        if ((next - x).norm() < 1e-15) return next;
        x = next;
    }
    return x;
}

/// exp(A) by Taylor series after scaling by 2^s, then squaring.
template <class M>
M taylor_exponential(const M& a)
{
    int s = 0;
    double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    while (norm > 0.5) {
        norm /= 2;
        ++s;
    }
    const M b = a / std::pow(2.0, s);
    M term = M::Identity(a.rows(), a.cols()), sum = term;
    for (int k = 1; k < 30; ++k) {
        term = M(term * b) / static_cast<double>(k);
        sum += term;
    }
    for (int i = 0; i < s; ++i) sum = M(sum * sum);
    return sum;
}

/// Sorted copies compared pairwise (only sound when values are well separated or real).
inline double sorted_distance(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b)
{
    if (a.size() != b.size()) return INFINITY;
    auto key = [](const std::complex<double>& x, const std::complex<double>& y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    };
    std::sort(a.begin(), a.end(), key);
    std::sort(b.begin(), b.end(), key);
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace oracle
