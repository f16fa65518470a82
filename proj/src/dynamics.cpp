#include "cartan/dynamics.hpp"

#include <string>

#include "cartan/error.hpp"

namespace cartan {

namespace {

void require_square_match(const RealMatrix& a, Eigen::Index n, const char* where)
{
    if (a.rows() != a.cols()) throw InvalidInput(std::string(where) + ": operator must be square");
    if (a.rows() != n || n == 0)
        throw InvalidInput(std::string(where) + ": vector length " + std::to_string(n) +
                           " does not match operator order " + std::to_string(a.rows()));
}

const Complex128 kI(0.0, 1.0);

}  // namespace

WaveState wave_pack(const RealVector& f0, const RealVector& ft0, const RealMatrix& DX)
{
    require_square_match(DX, f0.size(), "wave_pack");
    require_square_match(DX, ft0.size(), "wave_pack");
    const RealVector g = apply_pseudo_inverse(DX, ft0);
    WaveState s;
    s.psi = f0.cast<Complex128>() - kI * g.cast<Complex128>();
    s.discarded_velocity = (DX * g - ft0).norm();
    return s;
}

WaveState evolve_schrodinger(const WaveState& state, const RealMatrix& DX, double t)
{
    require_square_match(DX, state.psi.size(), "evolve_schrodinger");
    const ComplexMatrix generator = (kI * t) * DX.cast<Complex128>();
    WaveState out = state;
    out.psi = matrix_exponential(generator) * state.psi;
    out.t = state.t + t;
    return out;
}

RealVector dalembert_solution(const RealVector& f0, const RealVector& ft0, const RealMatrix& D, double t)
{
    require_square_match(D, f0.size(), "dalembert_solution");
    require_square_match(D, ft0.size(), "dalembert_solution");
    const ComplexMatrix gen = (kI * t) * D.cast<Complex128>();
    const ComplexMatrix plus = matrix_exponential(gen);
    const ComplexMatrix minus = matrix_exponential(ComplexMatrix(-gen));
    const RealMatrix cos_dt = ((plus + minus) / 2.0).real();
    const RealMatrix sin_dt = ((plus - minus) / (2.0 * kI)).real();
    return cos_dt * f0 + sin_dt * apply_pseudo_inverse(D, ft0);
}

double wave_residual_check(const std::vector<RealVector>& samples, double h, const RealMatrix& L)
{
    if (samples.size() < 3) throw InvalidInput("wave_residual_check: need at least 3 samples");
    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < samples.size(); ++k) {
        require_square_match(L, samples[k].size(), "wave_residual_check");
        const RealVector ftt = (samples[k + 1] - 2.0 * samples[k] + samples[k - 1]) / (h * h);
        worst = std::max(worst, (ftt + L * samples[k]).norm());
    }
    return worst;
}

RealVector evolve_heat(const RealVector& f0, const RealMatrix& L, double t)
{
    require_square_match(L, f0.size(), "evolve_heat");
    return matrix_exponential(RealMatrix(-t * L)) * f0;
}

std::vector<WaveState> wave_trajectory(const WaveState& start, const RealMatrix& DX, double h, int steps)
{
    if (steps < 0) throw InvalidInput("wave_trajectory: negative step count");
    require_square_match(DX, start.psi.size(), "wave_trajectory");
    const ComplexMatrix step = matrix_exponential(ComplexMatrix((kI * h) * DX.cast<Complex128>()));
    std::vector<WaveState> out{start};
    for (int k = 0; k < steps; ++k) {
        WaveState next = out.back();
        next.psi = step * out.back().psi;
        next.t = start.t + h * (k + 1);
        out.push_back(std::move(next));
    }
    return out;
}

}  // namespace cartan
