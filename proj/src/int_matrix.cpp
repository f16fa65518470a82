#include "cartan/int_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "cartan/error.hpp"

namespace cartan {

namespace {

using Scalar = IntMatrix::Scalar;

Scalar checked_add(Scalar a, Scalar b)
{
    Scalar r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("integer matrix addition overflowed");
    return r;
}

Scalar checked_mul(Scalar a, Scalar b)
{
    Scalar r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("integer matrix product overflowed");
    return r;
}

Scalar checked_abs(Scalar a)
{
    if (a == INT64_MIN) throw ArithmeticOverflow("integer matrix negation overflowed");
    return a < 0 ? -a : a;
}

void require_same_shape(const IntMatrix& a, const IntMatrix& b, const char* op)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InvalidInput(std::string("shape mismatch in integer matrix ") + op);
}

// Merge two sorted sparse rows as a + sign * b.
std::vector<IntMatrix::Entry> merge_rows(const std::vector<IntMatrix::Entry>& a,
                                         const std::vector<IntMatrix::Entry>& b, Scalar sign)
{
    std::vector<IntMatrix::Entry> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].col < b[j].col)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].col < a[i].col) {
            out.push_back({b[j].col, checked_mul(sign, b[j].value)});
            ++j;
        } else {
            const Scalar v = checked_add(a[i].value, checked_mul(sign, b[j].value));
            if (v != 0) out.push_back({a[i].col, v});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Scalar>> rows)
{
    std::vector<std::vector<Scalar>> dense;
    for (auto r : rows) dense.emplace_back(r);
    *this = from_dense(dense);
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.rows_[i].push_back({i, 1});
    return m;
}

IntMatrix IntMatrix::from_dense(const std::vector<std::vector<Scalar>>& rows)
{
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_) throw InvalidInput("ragged integer matrix rows");
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            if (rows[i][j] != 0) m.rows_[i].push_back({j, rows[i][j]});
    }
    return m;
}

Scalar IntMatrix::operator()(std::size_t i, std::size_t j) const
{
    const auto& r = rows_.at(i);
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const Entry& e, std::size_t c) { return e.col < c; });
    return (it != r.end() && it->col == j) ? it->value : 0;
}

void IntMatrix::set(std::size_t i, std::size_t j, Scalar value)
{
    if (i >= rows() || j >= cols_) throw InvalidInput("integer matrix index out of range");
    auto& r = rows_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const Entry& e, std::size_t c) { return e.col < c; });
    if (it != r.end() && it->col == j) {
        if (value == 0)
            r.erase(it);
        else
            it->value = value;
    } else if (value != 0) {
        r.insert(it, {j, value});
    }
}

void IntMatrix::add_to(std::size_t i, std::size_t j, Scalar value)
{
    set(i, j, checked_add((*this)(i, j), value));
}

std::size_t IntMatrix::nonzeros() const
{
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
}

Scalar IntMatrix::l1_norm() const
{
    Scalar s = 0;
    for (const auto& r : rows_)
        for (const auto& e : r) s = checked_add(s, checked_abs(e.value));
    return s;
}

Scalar IntMatrix::max_abs() const
{
    Scalar m = 0;
    for (const auto& r : rows_)
        for (const auto& e : r) m = std::max(m, checked_abs(e.value));
    return m;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols_, rows());
    for (std::size_t i = 0; i < rows(); ++i)
        for (const auto& e : rows_[i]) t.rows_[e.col].push_back({i, e.value});
    return t;
}

IntMatrix IntMatrix::block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const
{
    if (row0 + nrows > rows() || col0 + ncols > cols_) throw InvalidInput("integer matrix block out of range");
    IntMatrix b(nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i)
        for (const auto& e : rows_[row0 + i])
            if (e.col >= col0 && e.col < col0 + ncols) b.rows_[i].push_back({e.col - col0, e.value});
    return b;
}

Eigen::MatrixXd IntMatrix::to_real() const
{
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows()), static_cast<Eigen::Index>(cols_));
    for (std::size_t i = 0; i < rows(); ++i)
        for (const auto& e : rows_[i])
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(e.col)) = static_cast<double>(e.value);
    return m;
}

std::vector<std::vector<Scalar>> IntMatrix::to_dense() const
{
    std::vector<std::vector<Scalar>> d(rows(), std::vector<Scalar>(cols_, 0));
    for (std::size_t i = 0; i < rows(); ++i)
        for (const auto& e : rows_[i]) d[i][e.col] = e.value;
    return d;
}

IntMatrix IntMatrix::operator-() const
{
    IntMatrix m = *this;
    for (auto& r : m.rows_)
        for (auto& e : r) e.value = checked_mul(-1, e.value);
    return m;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b)
{
    require_same_shape(a, b, "sum");
    IntMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) c.rows_[i] = merge_rows(a.rows_[i], b.rows_[i], 1);
    return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b)
{
    require_same_shape(a, b, "difference");
    IntMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) c.rows_[i] = merge_rows(a.rows_[i], b.rows_[i], -1);
    return c;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols() != b.rows()) throw InvalidInput("shape mismatch in integer matrix product");
    IntMatrix c(a.rows(), b.cols());
    std::vector<Scalar> acc(b.cols(), 0);
    std::vector<std::size_t> touched;
    std::vector<char> seen(b.cols(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        touched.clear();
        for (const auto& ea : a.rows_[i]) {
            for (const auto& eb : b.rows_[ea.col]) {
                if (!seen[eb.col]) {
                    seen[eb.col] = 1;
                    touched.push_back(eb.col);
                }
                acc[eb.col] = checked_add(acc[eb.col], checked_mul(ea.value, eb.value));
            }
        }
        std::sort(touched.begin(), touched.end());
        auto& out = c.rows_[i];
        for (auto col : touched) {
            if (acc[col] != 0) out.push_back({col, acc[col]});
            acc[col] = 0;
            seen[col] = 0;
        }
    }
    return c;
}

IntMatrix operator*(Scalar s, const IntMatrix& a)
{
    if (s == 0) return IntMatrix(a.rows(), a.cols());
    IntMatrix m = a;
    for (auto& r : m.rows_)
        for (auto& e : r) e.value = checked_mul(s, e.value);
    return m;
}

std::size_t exact_rank(const IntMatrix& a)
{
    using boost::multiprecision::cpp_int;
    const std::size_t n = a.rows(), m = a.cols();
    std::vector<std::vector<cpp_int>> w(n, std::vector<cpp_int>(m));
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& e : a.row(i)) w[i][e.col] = e.value;

    // Bareiss: every intermediate entry is a minor of `a`, so divisions are exact.
    cpp_int prev = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m && rank < n; ++col) {
        std::size_t pivot = rank;
        while (pivot < n && w[pivot][col] == 0) ++pivot;
        if (pivot == n) continue;
        std::swap(w[pivot], w[rank]);
        for (std::size_t i = rank + 1; i < n; ++i) {
            if (w[i][col] == 0) {
                // Row i is still scaled by the new pivot / previous pivot.
                for (std::size_t j = col + 1; j < m; ++j)
                    if (w[i][j] != 0) w[i][j] = (w[i][j] * w[rank][col]) / prev;
                continue;
            }
            for (std::size_t j = col + 1; j < m; ++j)
                w[i][j] = (w[i][j] * w[rank][col] - w[i][col] * w[rank][j]) / prev;
            w[i][col] = 0;
        }
        prev = w[rank][col];
        ++rank;
    }
    return rank;
}

IntMatrix power(const IntMatrix& a, unsigned k)
{
    IntMatrix result = IntMatrix::identity(a.rows());
    for (unsigned i = 0; i < k; ++i) result = result * a;
    return result;
}


namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 pow_mod(u64 a, u64 e, u64 p)
{
    u64 r = 1;
    for (; e; e >>= 1, a = mul_mod(a, a, p))
        if (e & 1) r = mul_mod(r, a, p);
    return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(u64 n)
{
    if (n < 2) return false;
    for (u64 q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (n % q == 0) return n == q;
    u64 d = n - 1;
    int s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s && composite; ++r) {
            x = mul_mod(x, x, n);
            composite = x != n - 1;
        }
        if (composite) return false;
    }
    return true;
}

const std::vector<u64>& primes_below_2_62(std::size_t count)
{
    static std::vector<u64> primes;
    static std::mutex guard;
    std::lock_guard lock(guard);
    u64 candidate = primes.empty() ? (u64{1} << 62) - 1 : primes.back() - 2;
    while (primes.size() < count) {
        if (is_prime(candidate)) primes.push_back(candidate);
        candidate -= 2;
    }
    return primes;
}

std::vector<u64> charpoly_mod(const IntMatrix& a, u64 p)
{
    const std::size_t n = a.rows();
    std::vector<std::vector<u64>> h(n, std::vector<u64>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& e : a.row(i)) {
            const std::int64_t r = e.value % static_cast<std::int64_t>(p);
            h[i][e.col] = static_cast<u64>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
        }

    // Reduce to upper Hessenberg form by similarity transforms.
    for (std::size_t j = 0; j + 2 < n; ++j) {
        std::size_t pivot = j + 1;
        while (pivot < n && h[pivot][j] == 0) ++pivot;
        if (pivot == n) continue;
        if (pivot != j + 1) {
            std::swap(h[pivot], h[j + 1]);
            for (auto& row : h) std::swap(row[pivot], row[j + 1]);
        }
        const u64 inv = pow_mod(h[j + 1][j], p - 2, p);
        for (std::size_t i = j + 2; i < n; ++i) {
            if (h[i][j] == 0) continue;
            const u64 f = mul_mod(h[i][j], inv, p);
            for (std::size_t k = 0; k < n; ++k) h[i][k] = (h[i][k] + p - mul_mod(f, h[j + 1][k], p)) % p;
            for (std::size_t k = 0; k < n; ++k) h[k][j + 1] = (h[k][j + 1] + mul_mod(f, h[k][i], p)) % p;
        }
    }

    // charpoly[k] = det(xI - H[0..k, 0..k]), by expansion along the last column
    std::vector<std::vector<u64>> c(n + 1);
    c[0] = {1};
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<u64> next(k + 1, 0);
        const u64 diag = h[k - 1][k - 1];
        for (std::size_t i = 0; i < k; ++i) {
            next[i + 1] = (next[i + 1] + c[k - 1][i]) % p;
            next[i] = (next[i] + p - mul_mod(diag, c[k - 1][i], p)) % p;
        }
        u64 sub = 1;  // product of subdiagonal entries h[i][i-1] for i in (m, k-1]
        for (std::size_t m = k - 1; m-- > 0;) {
            sub = mul_mod(sub, h[m + 1][m], p);
            if (sub == 0) break;
            const u64 coef = mul_mod(h[m][k - 1], sub, p);
            if (coef == 0) continue;
            for (std::size_t i = 0; i < c[m].size(); ++i) next[i] = (next[i] + p - mul_mod(coef, c[m][i], p)) % p;
        }
        c[k] = std::move(next);
    }
    return c[n];
}

}  // namespace

Polynomial characteristic_polynomial(const IntMatrix& a)
{
    using boost::multiprecision::cpp_int;
    if (a.rows() != a.cols()) throw InvalidInput("characteristic_polynomial: matrix must be square");
    const std::size_t n = a.rows();

    // |coefficient of x^(n-k)| <= C(n,k) R^k <= (1 + R)^n with R the largest column 2-norm.
    std::vector<double> col_sq(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& e : a.row(i)) col_sq[e.col] += static_cast<double>(e.value) * static_cast<double>(e.value);
    double r = 0.0;
    for (double s : col_sq) r = std::max(r, std::sqrt(s));
    const double bits = static_cast<double>(n) * std::log2(1.0 + r) + 2.0;
    const auto count = static_cast<std::size_t>(std::ceil(bits / 61.0)) + 1;
    const auto& primes = primes_below_2_62(count);

    Polynomial value(n + 1, 0);
    cpp_int modulus = 1;
    for (std::size_t t = 0; t < count; ++t) {
        const u64 p = primes[t];
        const std::vector<u64> res = charpoly_mod(a, p);
        const u64 m_mod_p = static_cast<u64>(modulus % p);
        const u64 m_inv = pow_mod(m_mod_p, p - 2, p);
        for (std::size_t i = 0; i <= n; ++i) {
            const u64 cur = static_cast<u64>(((value[i] % p) + p) % p);
            const u64 delta = mul_mod((res[i] + p - cur) % p, m_inv, p);
            value[i] += modulus * delta;
        }
        modulus *= p;
    }
    const cpp_int half = modulus / 2;
    for (auto& v : value)
        if (v > half) v -= modulus;
    return value;
}

}  // namespace cartan
