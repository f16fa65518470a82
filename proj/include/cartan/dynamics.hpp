#pragma once

#include <vector>

#include "cartan/linalg.hpp"

namespace cartan {

/// Complex wave psi = f - i D^{-1} f_t at time t.
struct WaveState {
    ComplexVector psi;
    double t = 0.0;
    /// Norm of the part of the initial velocity outside the image of D (dropped by the pseudo-inverse).
    double discarded_velocity = 0.0;
};

/**
 * Package position and velocity into one complex wave:
 * psi = f0 - i * pinv(DX) * ft0. Velocity components the pseudo-inverse
 * cannot reproduce are reported in `discarded_velocity`, not rejected.
 */
WaveState wave_pack(const RealVector& f0, const RealVector& ft0, const RealMatrix& DX);

/// psi(t0 + t) = exp(i t DX) psi(t0).
WaveState evolve_schrodinger(const WaveState& state, const RealMatrix& DX, double t);

/// Real d'Alembert form cos(Dt) f0 + sin(Dt) pinv(D) ft0, built from exp(+-iDt).
RealVector dalembert_solution(const RealVector& f0, const RealVector& ft0, const RealMatrix& D, double t);

/**
 * Second-difference residual of f_tt = -L f over consecutive samples
 * spaced by h: max over interior k of
 * |(f[k+1] - 2 f[k] + f[k-1]) / h^2 + L f[k]|.
 */
double wave_residual_check(const std::vector<RealVector>& samples, double h, const RealMatrix& L);

/// f(t) = exp(-t L) f0.
RealVector evolve_heat(const RealVector& f0, const RealMatrix& L, double t);

/// States at start.t + k h for k = 0..steps.
std::vector<WaveState> wave_trajectory(const WaveState& start, const RealMatrix& DX, double h, int steps);

}  // namespace cartan
