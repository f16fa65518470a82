#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cartan/complex.hpp"
#include "cartan/exterior.hpp"
#include "cartan/linalg.hpp"

namespace cartan {

/**
 * Keep entries strictly below the block diagonal given by `offsets`
 * (entry (i, j) survives iff i > j and i, j lie in different degree
 * blocks). On D_X = d + i_X this returns d.
 */
ComplexMatrix strict_lower_block(const ComplexMatrix& a, std::span<const std::size_t> offsets);
RealMatrix strict_lower_block(const RealMatrix& a, std::span<const std::size_t> offsets);

/// How B is refreshed inside one RK4 step.
enum class StageMode {
    frozen,     ///< B from the step's start state for all four stages (reference loop)
    consistent  ///< B recomputed from each stage input; fourth order for the nonlinear flow
};

struct DeformationOptions {
    int steps = 1000;
    double total_time = 2.0;
    /// Keep DD every this many steps (0 = no snapshots).
    int sample_every = 0;
    StageMode mode = StageMode::frozen;
    /// |d d|_1 is recorded every this many steps.
    int check_every = 10;
    /// Relative singular-value threshold for the block ranks of d.
    double rank_tol = 1e-6;
};

struct DeformationDiagnostics {
    double max_d_squared = 0.0;   ///< over all checked steps and the endpoint
    double final_d_squared = 0.0;
    double final_e_squared = 0.0;
    Spectrum spectrum_start;
    Spectrum spectrum_end;
    double spectral_drift = 0.0;  ///< max pairing distance between the two spectra
    std::vector<std::size_t> ranks_start;  ///< rank of d: degree p -> p+1
    std::vector<std::size_t> ranks_end;
    std::vector<std::size_t> betti_start;
    std::vector<std::size_t> betti_end;
    bool ranks_preserved = false;
    double d_change = 0.0;  ///< |d(T) - d(0)|_1
};

struct DeformationTrajectory {
    int steps = 0;
    double dt = 0.0;
    std::vector<std::pair<int, ComplexMatrix>> snapshots;
    std::vector<double> u_series;  ///< |d|_1 at the start of each step
    std::vector<std::pair<int, double>> d_squared_series;
    ComplexMatrix final_dd;
    ComplexMatrix final_d;
    ComplexMatrix final_e;
    DeformationDiagnostics diagnostics;
    bool aborted = false;
    std::string error;
};

/**
 * Integrate D' = [B, D] from D(0) = DX0 with h = T / M. Each step:
 *   d = strict_lower_block(D), e = d^*, b = D - d - e,
 *   B = (d - e) + i b, D <- rk4_step(x -> B x - x B, D, h).
 * A non-finite state aborts the run; the partial trajectory is returned.
 */
DeformationTrajectory run_deformation(const ComplexMatrix& DX0, const Complex& complex,
                                      const DeformationOptions& options = {});
DeformationTrajectory run_deformation(const RealOperator& DX0, const DeformationOptions& options = {});

/// Ranks of the degree blocks p -> p+1 of a (deformed) exterior derivative.
std::vector<std::size_t> derivative_block_ranks(const ComplexMatrix& d, const Complex& complex, double tol);

/// b_k = f_k - rank_k - rank_{k-1}.
std::vector<std::size_t> betti_from_ranks(const Complex& complex, const std::vector<std::size_t>& ranks);

/// v_k = M (F(u_{k+1}) - F(u_k)) with F(x) = -log|x| and F(0) = 0.
std::vector<double> inflation_series(std::span<const double> u_series, int steps);

}  // namespace cartan
