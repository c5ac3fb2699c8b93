#pragma once

#include "dgpe/solver/steps.hpp"

namespace dgpe {

// Strang splitting of the averaged model
//   i dPhi/dt = -(alpha/2) Dx Phi + |x|^2/(2 alpha) Phi + F_av(Phi):
// exact x harmonic flow around an RK4 integration of the F_av substep
// (F_av is not a pointwise potential, so no exact phase step exists).
inline Trajectory solve_averaged(const WaveField& phi0, const SolverConfig& cfg) {
  cfg.validate_common();
  if (cfg.variant != Variant::Averaged) throw ConfigError("solve_averaged: variant mismatch");
  const ModelParams& p = cfg.params;
  if (p.alpha <= 0.0) throw ConfigError("solve_averaged: alpha must be positive");
  if (phi0.rep != Representation::Physical)
    throw PreconditionError("solve_averaged: initial state must be Physical");
  if (!phi0.grid.compatible(cfg.grid)) throw PreconditionError("solve_averaged: grid mismatch");

  const ThetaQuadrature quad = cfg.theta_nodes > 0
                                   ? ThetaQuadrature::with_nodes(cfg.theta_nodes, cfg.grid)
                                   : ThetaQuadrature::for_grid(cfg.grid);
  const int trail = static_cast<int>(cfg.grid.z_points());
  auto rhs = [&](const WaveField& u) { return eval_f_av(u, p, quad); };

  Trajectory traj;
  detail::Recorder rec(traj, cfg, 1e-6);
  WaveField phi = phi0;
  const auto steps = detail::time_steps(cfg.t_final, cfg.dt);
  const long total = static_cast<long>(steps.size());

  double t = 0.0;
  rec.record(t, phi, 0, total);
  for (long i = 0; i < total; ++i) {
    const double h = steps[i];
    detail::harmonic_x_step(phi.values, cfg.grid, p.alpha, h / 2.0, trail);
    detail::rk4_step(phi, h, rhs);
    detail::harmonic_x_step(phi.values, cfg.grid, p.alpha, h / 2.0, trail);
    t += h;
    rec.record(t, phi, i + 1, total);
  }
  traj.final_state = std::move(phi);
  return traj;
}

}  // namespace dgpe
