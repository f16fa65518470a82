#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace cartan {

/**
 * Exact integer matrix with row-compressed storage.
 *
 * Structural identities (d^2 = 0, the Cartan identity, bracket relations)
 * are asserted with equality on this type. All arithmetic is checked and
 * throws ArithmeticOverflow instead of wrapping.
 */
class IntMatrix {
public:
    using Scalar = std::int64_t;
    struct Entry {
        std::size_t col;
        Scalar value;
        friend bool operator==(const Entry&, const Entry&) = default;
    };

    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<Scalar>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_dense(const std::vector<std::vector<Scalar>>& rows);

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

    Scalar operator()(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, Scalar value);
    void add_to(std::size_t i, std::size_t j, Scalar value);

    /// Nonzero entries of row i, sorted by column.
    const std::vector<Entry>& row(std::size_t i) const { return rows_[i]; }

    std::size_t nonzeros() const;
    bool is_zero() const { return nonzeros() == 0; }
    /// Sum of absolute values of all entries.
    Scalar l1_norm() const;
    Scalar max_abs() const;

    IntMatrix transpose() const;
    IntMatrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
    Eigen::MatrixXd to_real() const;
    std::vector<std::vector<Scalar>> to_dense() const;

    IntMatrix operator-() const;
    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator*(Scalar s, const IntMatrix& a);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

private:
    std::vector<std::vector<Entry>> rows_;
    std::size_t cols_ = 0;
};

/// Rank over the rationals (fraction-free Bareiss elimination, arbitrary precision).
std::size_t exact_rank(const IntMatrix& a);

/// a^k for k >= 0 (identity for k = 0).
IntMatrix power(const IntMatrix& a, unsigned k);

using Polynomial = std::vector<boost::multiprecision::cpp_int>;  ///< lowest degree first

/**
 * det(xI - a), exactly. Computed modulo enough 62-bit primes to cover the
 * Hadamard bound on the coefficients, then lifted by Chinese remaindering.
 */
Polynomial characteristic_polynomial(const IntMatrix& a);

}  // namespace cartan
