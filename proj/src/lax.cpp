#include "cartan/lax.hpp"

#include <cmath>

#include "cartan/error.hpp"

namespace cartan {

namespace {

template <class Matrix>
Matrix lower_block(const Matrix& a, std::span<const std::size_t> offsets)
{
    if (a.rows() != a.cols() || offsets.empty() || offsets.front() != 0 ||
        offsets.back() != static_cast<std::size_t>(a.rows()))
        throw InvalidInput("strict_lower_block: offsets inconsistent with matrix order");
    Matrix out = Matrix::Zero(a.rows(), a.cols());
    // Columns of block k keep rows from the start of block k + 1 onward.
    for (std::size_t k = 0; k + 1 < offsets.size(); ++k) {
        const auto c0 = static_cast<Eigen::Index>(offsets[k]);
        const auto nc = static_cast<Eigen::Index>(offsets[k + 1] - offsets[k]);
        const auto r0 = static_cast<Eigen::Index>(offsets[k + 1]);
        const auto nr = a.rows() - r0;
        if (nc > 0 && nr > 0) out.block(r0, c0, nr, nc) = a.block(r0, c0, nr, nc);
    }
    return out;
}

const Complex128 kI(0.0, 1.0);

struct Split {
    ComplexMatrix d;
    ComplexMatrix generator;  // B
};

Split split(const ComplexMatrix& dd, std::span<const std::size_t> offsets)
{
    Split s;
    s.d = lower_block(dd, offsets);
    const ComplexMatrix e = s.d.adjoint();
    s.generator = (s.d - e) + kI * (dd - s.d - e);
    return s;
}

double l1(const ComplexMatrix& m) { return m.cwiseAbs().sum(); }

}  // namespace

ComplexMatrix strict_lower_block(const ComplexMatrix& a, std::span<const std::size_t> offsets)
{
    return lower_block(a, offsets);
}

RealMatrix strict_lower_block(const RealMatrix& a, std::span<const std::size_t> offsets)
{
    return lower_block(a, offsets);
}

std::vector<std::size_t> derivative_block_ranks(const ComplexMatrix& d, const Complex& complex, double tol)
{
    const auto& br = complex.block_offsets();
    std::vector<std::size_t> ranks;
    for (int p = 0; p < complex.dimension(); ++p) {
        const auto k = static_cast<std::size_t>(p);
        const ComplexMatrix block = d.block(static_cast<Eigen::Index>(br[k + 1]), static_cast<Eigen::Index>(br[k]),
                                            static_cast<Eigen::Index>(br[k + 2] - br[k + 1]),
                                            static_cast<Eigen::Index>(br[k + 1] - br[k]));
        ranks.push_back(numeric_rank(block, tol));
    }
    return ranks;
}

std::vector<std::size_t> betti_from_ranks(const Complex& complex, const std::vector<std::size_t>& ranks)
{
    std::vector<std::size_t> b;
    const auto& f = complex.f_vector();
    for (std::size_t k = 0; k < f.size(); ++k) {
        std::size_t v = f[k];
        if (k < ranks.size()) v -= ranks[k];
        if (k > 0) v -= ranks[k - 1];
        b.push_back(v);
    }
    return b;
}

DeformationTrajectory run_deformation(const ComplexMatrix& DX0, const Complex& complex,
                                      const DeformationOptions& options)
{
    if (options.steps < 1) throw InvalidInput("run_deformation: steps must be >= 1");
    if (!(options.total_time > 0.0)) throw InvalidInput("run_deformation: total time must be > 0");
    if (DX0.rows() != static_cast<Eigen::Index>(complex.size()) || DX0.cols() != DX0.rows())
        throw InvalidInput("run_deformation: operator order does not match the complex");
    require_finite(DX0, "run_deformation");

    const std::span<const std::size_t> offsets = complex.block_offsets();
    const int check_every = std::max(1, options.check_every);

    DeformationTrajectory traj;
    traj.steps = options.steps;
    traj.dt = options.total_time / options.steps;
    traj.u_series.reserve(static_cast<std::size_t>(options.steps));

    auto& diag = traj.diagnostics;
    ComplexMatrix dd = DX0;
    const ComplexMatrix d0 = lower_block(dd, offsets);
    diag.spectrum_start = eigenvalues(dd);
    diag.ranks_start = derivative_block_ranks(d0, complex, options.rank_tol);
    diag.betti_start = betti_from_ranks(complex, diag.ranks_start);

    const auto lax_rhs = [](const ComplexMatrix& B, const ComplexMatrix& x) -> ComplexMatrix { return B * x - x * B; };

    for (int m = 0; m < options.steps; ++m) {
        const Split s = split(dd, offsets);
        traj.u_series.push_back(l1(s.d));
        if (m % check_every == 0) {
            const double dsq = l1(s.d * s.d);
            traj.d_squared_series.emplace_back(m, dsq);
            diag.max_d_squared = std::max(diag.max_d_squared, dsq);
        }
        if (options.sample_every > 0 && m % options.sample_every == 0) traj.snapshots.emplace_back(m, dd);

        if (options.mode == StageMode::frozen) {
            dd = rk4_step([&](const ComplexMatrix& x) { return lax_rhs(s.generator, x); }, dd, traj.dt);
        } else {
            dd = rk4_step([&](const ComplexMatrix& x) { return lax_rhs(split(x, offsets).generator, x); }, dd,
                          traj.dt);
        }
        if (!dd.allFinite()) {
            traj.aborted = true;
            traj.error = "non-finite operator after step " + std::to_string(m + 1);
            break;
        }
    }

    traj.final_dd = dd;
    if (options.sample_every > 0 && !traj.aborted) traj.snapshots.emplace_back(options.steps, dd);
    if (traj.aborted) return traj;

    traj.final_d = lower_block(dd, offsets);
    traj.final_e = traj.final_d.adjoint();
    diag.final_d_squared = l1(traj.final_d * traj.final_d);
    diag.final_e_squared = l1(traj.final_e * traj.final_e);
    diag.max_d_squared = std::max(diag.max_d_squared, diag.final_d_squared);
    traj.d_squared_series.emplace_back(options.steps, diag.final_d_squared);
    diag.spectrum_end = eigenvalues(dd);
    diag.spectral_drift = match_spectra(diag.spectrum_start, diag.spectrum_end, 0.0).max_distance;
    diag.ranks_end = derivative_block_ranks(traj.final_d, complex, options.rank_tol);
    diag.betti_end = betti_from_ranks(complex, diag.ranks_end);
    diag.ranks_preserved = diag.ranks_start == diag.ranks_end;
    diag.d_change = l1(traj.final_d - d0);
    return traj;
}

DeformationTrajectory run_deformation(const RealOperator& DX0, const DeformationOptions& options)
{
    return run_deformation(ComplexMatrix(DX0.matrix.cast<Complex128>()), *DX0.complex, options);
}

std::vector<double> inflation_series(std::span<const double> u_series, int steps)
{
    if (u_series.size() < 2) throw InvalidInput("inflation_series: need at least two samples");
    const auto F = [](double x) { return x == 0.0 ? 0.0 : -std::log(std::abs(x)); };
    std::vector<double> v;
    v.reserve(u_series.size() - 1);
    for (std::size_t k = 0; k + 1 < u_series.size(); ++k) v.push_back(steps * (F(u_series[k + 1]) - F(u_series[k])));
    return v;
}

}  // namespace cartan
