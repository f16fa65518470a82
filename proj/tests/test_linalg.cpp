#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cartan/error.hpp"
#include "cartan/linalg.hpp"
#include "cartan/rng.hpp"
#include "oracles.hpp"

using namespace cartan;
using Catch::Approx;

namespace {

RealMatrix printed_c4_lx()
{
    RealMatrix m(8, 8);
    m << 1, -1, 0, 0, 0, 0, 0, 0,
        -1, 1, 0, 0, 0, 0, 0, 0,
        0, -1, 1, 0, 0, 0, 0, 0,
        0, 0, -1, 1, 0, 0, 0, 0,
        0, 0, 0, 0, 2, 0, 0, 0,
        0, 0, 0, 0, -1, 1, 0, 0,
        0, 0, 0, 0, 0, -1, 1, 0,
        0, 0, 0, 0, -1, 0, -1, 0;
    return m;
}

RealMatrix random_real(Rng& rng, Eigen::Index n, double scale = 1.0)
{
    RealMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rng.uniform_real(-scale, scale);
    return m;
}

oracle::Dense to_dense(const RealMatrix& m)
{
    oracle::Dense d(static_cast<std::size_t>(m.rows()), std::vector<std::int64_t>(static_cast<std::size_t>(m.cols())));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::llround(m(i, j));
    return d;
}

}  // namespace

TEST_CASE("eigenvalue examples")
{
    RealMatrix rot(2, 2);
    rot << 0, 1, -1, 0;
    const Spectrum s = eigenvalues(rot);
    REQUIRE(s.values.size() == 2);
    CHECK(std::abs(s.values[0] - Complex128(0, -1)) < 1e-12);
    CHECK(std::abs(s.values[1] - Complex128(0, 1)) < 1e-12);

    for (const auto& z : eigenvalues(RealMatrix(RealMatrix::Identity(5, 5))).values)
        CHECK(std::abs(z - 1.0) < 1e-12);

    // printed C4 L_X: roots of its exact characteristic polynomial x^2 (x-1)^4 (x-2)^2
    const RealMatrix lx = printed_c4_lx();
    CHECK(oracle::charpoly(to_dense(lx)) == oracle::from_roots({0, 0, 1, 1, 1, 1, 2, 2}));
    const Spectrum e = eigenvalues(lx);
    const Spectrum want = make_spectrum({0, 0, 1, 1, 1, 1, 2, 2});
    // eigenvalue 1 sits in 2x2 Jordan blocks, so the computed values carry sqrt(eps) error
    CHECK(match_spectra(e, want, 1e-7).pass);
    CHECK(eigenvalues(RealMatrix(0, 0)).values.empty());
}

TEST_CASE("spectrum is sorted and complex input works")
{
    ComplexMatrix a(3, 3);
    a << Complex128(0, 1), 0, 0, 0, -2, 0, 1, 0, Complex128(3, -1);
    const Spectrum s = eigenvalues(a);
    CHECK(std::abs(s.values[0] - Complex128(-2, 0)) < 1e-12);
    CHECK(std::abs(s.values[1] - Complex128(0, 1)) < 1e-12);
    CHECK(std::abs(s.values[2] - Complex128(3, -1)) < 1e-12);
    CHECK(s.max_abs_imag() == Approx(1.0));
}

TEST_CASE("non-finite input is rejected")
{
    RealMatrix a = RealMatrix::Zero(2, 2);
    a(0, 1) = std::nan("");
    CHECK_THROWS_AS(eigenvalues(a), InvalidInput);
    a(0, 1) = INFINITY;
    CHECK_THROWS_AS(eigenvalues(a), InvalidInput);
}

TEST_CASE("property: trace equals eigenvalue sum; small cases match exact characteristic polynomial")
{
    Rng rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.uniform_int(0, 9));
        const RealMatrix a = random_real(rng, n, 3.0);
        const Spectrum s = eigenvalues(a);
        REQUIRE(static_cast<Eigen::Index>(s.values.size()) == n);
        Complex128 sum = 0;
        for (const auto& z : s.values) sum += z;
        CHECK(std::abs(sum - a.trace()) <= 1e-7 * std::max(1.0, a.norm()));
    }
    // integer matrices: every computed value is a root of the exact polynomial
    for (int trial = 0; trial < 30; ++trial) {
        const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.uniform_int(0, 5));
        RealMatrix a(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) a(i, j) = static_cast<double>(rng.uniform_int(-3, 3));
        const oracle::Poly p = oracle::charpoly(to_dense(a));
        // determinant sign from the constant term: det(A) = (-1)^n p(0)
        oracle::Rational det = p[0];
        if (n % 2 == 1) det = -det;
        const double det_num = a.determinant();
        if (det != 0 && std::abs(det_num) > 1e-6) CHECK((det > 0) == (det_num > 0));
        for (const auto& z : eigenvalues(a).values) {
            double scale = 0;
            for (const auto& c : p) scale += std::abs(static_cast<double>(c)) * std::pow(std::max(1.0, std::abs(z)), 6);
            CHECK(std::abs(oracle::evaluate(p, z)) <= 1e-6 * scale);
        }
    }
}

TEST_CASE("spectrum matching")
{
    const Spectrum a = make_spectrum({1, 2, Complex128(0, 1)});
    const Spectrum b = make_spectrum({Complex128(0, 1), 2 + 1e-9, 1});
    CHECK(match_spectra(a, b, 1e-7).pass);
    const SpectrumMatch miss = match_spectra(a, make_spectrum({1, 2, 3}), 1e-7);
    CHECK_FALSE(miss.pass);
    CHECK(miss.max_distance > 1.0);
    CHECK(std::isinf(match_spectra(a, make_spectrum({1, 2}), 1e-7).max_distance));
    // multiplicities matter
    CHECK_FALSE(match_spectra(make_spectrum({1, 1, 2}), make_spectrum({1, 2, 2}), 1e-7).pass);
}

TEST_CASE("kernel dimension")
{
    CHECK(kernel_dimension(RealMatrix(RealMatrix::Zero(4, 4))) == 4);
    CHECK(kernel_dimension(RealMatrix(RealMatrix::Identity(4, 4))) == 0);
    RealMatrix block(4, 4);
    block << 1, -1, 0, 0, -1, 1, 0, 0, 0, -1, 1, 0, 0, 0, -1, 1;
    CHECK(kernel_dimension(block) == 1);
    CHECK(kernel_dimension(IntMatrix{{1, -1, 0, 0}, {-1, 1, 0, 0}, {0, -1, 1, 0}, {0, 0, -1, 1}}) == 1);
    CHECK(kernel_dimension(ComplexMatrix(block.cast<Complex128>())) == 1);
    CHECK(numeric_rank(block) == 3);

    // relative threshold: scaling does not change the count
    CHECK(kernel_dimension(RealMatrix(1e6 * block)) == 1);
    CHECK(kernel_dimension(RealMatrix(1e-6 * block)) == 1);
}

TEST_CASE("property: exact kernel dimension plus rank is the order")
{
    Rng rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform_int(0, 6));
        IntMatrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (rng.bernoulli(0.3)) a.set(i, j, rng.uniform_int(-2, 2));
        CHECK(kernel_dimension(a) + exact_rank(a) == n);
        CHECK(kernel_dimension(a) == kernel_dimension(a.to_real()));
    }
}

TEST_CASE("pseudo-inverse")
{
    Rng rng(8);
    const RealMatrix a = random_real(rng, 5) + 5.0 * RealMatrix::Identity(5, 5);
    const RealVector v = RealVector::LinSpaced(5, -1, 1);
    CHECK((apply_pseudo_inverse(a, v) - a.lu().solve(v)).norm() < 1e-12);
    CHECK(apply_pseudo_inverse(a, RealVector(RealVector::Zero(5))).norm() == 0.0);

    // K2 Dirac operator
    RealMatrix D(3, 3);
    D << 0, 0, -1, 0, 0, 1, -1, 1, 0;
    const RealVector e1 = RealVector::Unit(3, 0);
    const RealVector w = D * e1;
    const RealVector x = apply_pseudo_inverse(D, w);
    CHECK((D * x - w).norm() < 1e-9 * w.norm());
    CHECK((x - oracle::pseudo_inverse(D) * w).norm() < 1e-12);
    CHECK(x(0) == Approx(0.5));
    CHECK(x(1) == Approx(-0.5));
    CHECK(std::abs(x(2)) < 1e-14);
    // the minimal-norm solution is orthogonal to the kernel (1,1,0)
    CHECK(std::abs(x(0) + x(1)) < 1e-14);

    // kernel components of the right-hand side are dropped
    const RealVector k = RealVector::Unit(3, 0) + RealVector::Unit(3, 1);
    CHECK(apply_pseudo_inverse(D, k).norm() < 1e-12);
}

TEST_CASE("property: pseudo-inverse agrees with the iterative oracle on singular matrices")
{
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.uniform_int(0, 4));
        RealMatrix b = random_real(rng, n);
        b.col(0) = b.col(1);  // force a kernel
        const RealVector v = RealVector::Random(n);
        CHECK((apply_pseudo_inverse(b, v) - oracle::pseudo_inverse(b) * v).norm() < 1e-8);
    }
}

TEST_CASE("matrix exponential")
{
    CHECK((matrix_exponential(RealMatrix(RealMatrix::Zero(3, 3))) - RealMatrix::Identity(3, 3)).norm() == 0.0);
    RealMatrix diag = RealMatrix::Zero(3, 3);
    diag.diagonal() << 0.5, -1.0, 2.0;
    const RealMatrix ed = matrix_exponential(diag);
    CHECK(ed(0, 0) == Approx(std::exp(0.5)).epsilon(1e-14));
    CHECK(ed(1, 1) == Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(ed(2, 2) == Approx(std::exp(2.0)).epsilon(1e-14));
    for (double t : {0.3, 1.0, 2.5}) {
        RealMatrix r(2, 2);
        r << 0, t, -t, 0;
        RealMatrix want(2, 2);
        want << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
        CHECK((matrix_exponential(r) - want).norm() < 1e-13);
    }

    Rng rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const RealMatrix a = random_real(rng, 6, 0.5);
        const double na = a.norm();
        const RealMatrix prod = matrix_exponential(a) * matrix_exponential(RealMatrix(-a));
        CHECK((prod - RealMatrix::Identity(6, 6)).norm() <= 1e-10 * std::exp(2 * na));
        CHECK((matrix_exponential(a) - oracle::taylor_exponential(a)).norm() < 1e-12 * std::exp(na));
        // group property for commuting scalings
        const RealMatrix a2 = a * (2.0 / std::max(1.0, na));
        const RealMatrix lhs = matrix_exponential(RealMatrix(a2 * 1.0));
        const RealMatrix rhs = matrix_exponential(RealMatrix(a2 * 0.4)) * matrix_exponential(RealMatrix(a2 * 0.6));
        CHECK((lhs - rhs).norm() < 1e-9);
        const ComplexMatrix c = a.cast<Complex128>() * Complex128(0, 1);
        CHECK((matrix_exponential(c) - oracle::taylor_exponential(c)).norm() < 1e-12 * std::exp(na));
    }
}

TEST_CASE("rk4 step")
{
    const RealMatrix x = RealMatrix::Random(3, 3);
    CHECK(rk4_step([](const RealMatrix& m) { return RealMatrix(RealMatrix::Zero(m.rows(), m.cols())); }, x, 0.1) == x);

    RealMatrix one(1, 1);
    one << 1.0;
    const RealMatrix y = rk4_step([](const RealMatrix& m) { return m; }, one, 0.1);
    CHECK(y(0, 0) == Approx(1.1051708333333333).epsilon(1e-15));

    const RealMatrix B = RealMatrix::Zero(3, 3);
    CHECK(rk4_step([&](const RealMatrix& m) { return RealMatrix(B * m - m * B); }, x, 0.3) == x);
}

TEST_CASE("property: rk4 local error is fifth order")
{
    // x' = lambda x: one-step error ratio under step halving tends to 2^5
    const double lambda = -1.3;
    auto err = [&](double h) {
        RealMatrix x(1, 1);
        x << 1.0;
        const RealMatrix y = rk4_step([&](const RealMatrix& m) { return RealMatrix(lambda * m); }, x, h);
        return std::abs(y(0, 0) - std::exp(lambda * h));
    };
    const double ratio = err(0.1) / err(0.05);
    CHECK(ratio == Approx(32.0).epsilon(0.1));
}

TEST_CASE("norms and finiteness")
{
    RealMatrix a(2, 2);
    a << 3, 0, 0, 4;
    CHECK(matrix_norm(a) == Approx(5.0));
    CHECK_NOTHROW(require_finite(a, "test"));
    a(1, 0) = NAN;
    CHECK_THROWS_AS(require_finite(a, "test"), InvalidInput);
}

TEST_CASE("extended-precision eigenvalues")
{
    cartan::Rng rng(8);
    RealMatrix a(12, 12);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = rng.uniform_real() - 0.5;
    CHECK(match_spectra(eigenvalues(a), eigenvalues_extended(a), 1e-12).pass);
    // a 2x2 Jordan block: double QR splits the pair by ~1e-8, long double by ~1e-10
    // (x - 1)^2 with a nontrivial Jordan block, exactly representable
    RealMatrix j(2, 2);
    j << 2, 1, -1, 0;
    const double wide = match_spectra(eigenvalues_extended(j), make_spectrum({1, 1}), 0.0).max_distance;
    const double narrow = match_spectra(eigenvalues(j), make_spectrum({1, 1}), 0.0).max_distance;
    CHECK(wide < 1e-9);
    CHECK(wide <= narrow);
    CHECK(eigenvalues_extended(RealMatrix(0, 0)).empty());
    CHECK_THROWS_AS(eigenvalues_extended(RealMatrix(2, 3)), InvalidInput);
}
