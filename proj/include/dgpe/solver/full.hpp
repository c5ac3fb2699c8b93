#pragma once

#include "dgpe/solver/steps.hpp"

namespace dgpe {

// Strang splitting of the full rescaled model
//   i dpsi/dt = (1/eps^2) H_z psi - (alpha/2) Dx psi + |x|^2/(2 alpha) psi
//               + (sigma |psi|^2 + 3 lambda0 V^gamma * |psi|^2) psi
// with every substep exact: the transversal propagator through its Hermite
// eigenphases, the x harmonic flow through the tan/sin kick-drift-kick
// factorization, and the nonlinear potential as a pointwise phase. The
// dt <= eps^2/10 bound controls the commutator between the fast transversal
// phase and the nonlinearity.
inline Trajectory solve_full(const WaveField& psi0, const SolverConfig& cfg) {
  cfg.validate_common();
  if (cfg.variant != Variant::Full) throw ConfigError("solve_full: variant mismatch");
  const ModelParams& p = cfg.params;
  if (p.epsilon <= 0.0 || p.alpha <= 0.0)
    throw ConfigError("solve_full: epsilon and alpha must be positive");
  if (cfg.dt > p.epsilon * p.epsilon / 10.0 * (1.0 + 1e-9))
    throw SolverError("solve_full: dt must satisfy dt <= eps^2/10");
  if (psi0.frame != Frame::Lab || psi0.rep != Representation::Physical)
    throw PreconditionError("solve_full: initial state must be a Physical lab field");
  if (!psi0.grid.compatible(cfg.grid)) throw PreconditionError("solve_full: grid mismatch");
  if (std::abs(norm_l2(psi0) - 1.0) > 1e-8)
    throw SolverError("solve_full: initial state must have unit mass");

  const double eps2 = p.epsilon * p.epsilon;
  const int trail = static_cast<int>(cfg.grid.z_points());

  Trajectory traj;
  detail::Recorder rec(traj, cfg, 1e-8);
  WaveField psi = psi0;
  const auto steps = detail::time_steps(cfg.t_final, cfg.dt);
  const long total = static_cast<long>(steps.size());

  double t = 0.0;
  rec.record(t, psi, 0, total);
  for (long i = 0; i < total; ++i) {
    const double h = steps[i];
    psi = propagate_hz(psi, h / (2.0 * eps2));
    detail::harmonic_x_step(psi.values, cfg.grid, p.alpha, h / 2.0, trail);
    detail::nonlinear_phase_step(psi, p, h);
    detail::harmonic_x_step(psi.values, cfg.grid, p.alpha, h / 2.0, trail);
    psi = propagate_hz(psi, h / (2.0 * eps2));
    t += h;
    rec.record(t, psi, i + 1, total);
  }
  traj.final_state = std::move(psi);
  return traj;
}

}  // namespace dgpe
