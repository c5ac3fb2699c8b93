#pragma once

#include "dgpe/core/resample.hpp"
#include "dgpe/solver/steps.hpp"

namespace dgpe {

// Semi-Lagrangian integration of the filtered transport models
//   dA/dt + grad S . grad_x A + A (Dx S)/2 = i(alpha/2) Dx A - i N(t, A)
// with N = F^gamma(t/eps^2, .) (oscillatory), F_av (limit) or G^{gamma,k}
// (polarized). The characteristics x' = grad S are affine with fundamental
// matrix C(t) = cos t I + sin t M0 and shift sin(t) b0, so the advection step
// is exact: pull back through the affine flow by spectral resampling and
// scale by (det C(t_n)/det C(t_{n+1}))^{1/2}, which integrates the (Dx S)/2
// term exactly. The alpha-Laplacian, when present, is Strang-split around the
// Lagrangian step; the nonlinearity is split outermost (exact conjugated
// phase for the oscillatory variant, RK4 for the averaged ones).

namespace detail {

struct FlowStep {
  Eigen::MatrixXd pullback_linear;
  Eigen::VectorXd pullback_shift;
  double jacobian_factor;  // (det C(t)/det C(t+h))^{1/2}
};

inline FlowStep flow_step(const QuadraticPhase& s0, double t, double h) {
  const Eigen::MatrixXd c_now = s0.flow_matrix(t);
  const Eigen::MatrixXd c_next = s0.flow_matrix(t + h);
  const Eigen::MatrixXd c_next_inv = c_next.inverse();
  FlowStep fs;
  fs.pullback_linear = c_now * c_next_inv;
  fs.pullback_shift = s0.flow_shift(t) - fs.pullback_linear * s0.flow_shift(t + h);
  fs.jacobian_factor = std::sqrt(c_now.determinant() / c_next.determinant());
  return fs;
}

/// Exact flow of dA/dt = -i F^gamma(theta, A) at frozen theta: conjugate by
/// the transversal propagator and apply the pointwise potential phase.
inline void oscillatory_phase_step(WaveField& a, const ModelParams& p, double theta, double tau) {
  WaveField u = propagate_hz(a, theta);
  nonlinear_phase_step(u, p, tau);
  a = propagate_hz(u, -theta);
}

}  // namespace detail

inline Trajectory solve_transport(const WaveField& a0, const SolverConfig& cfg) {
  cfg.validate_common();
  const bool oscillatory = cfg.variant == Variant::TransportOscillatory;
  if (!oscillatory && cfg.variant != Variant::TransportLimit)
    throw ConfigError("solve_transport: variant mismatch");
  const ModelParams& p = cfg.params;
  if (oscillatory) {
    if (p.epsilon <= 0.0) throw ConfigError("solve_transport: oscillatory variant needs epsilon > 0");
    if (p.alpha != 0.0) throw ConfigError("solve_transport: oscillatory variant is the alpha = 0 model");
    if (cfg.dt > p.epsilon * p.epsilon / 10.0 * (1.0 + 1e-9))
      throw SolverError("solve_transport: dt must satisfy dt <= eps^2/10");
  }
  if (a0.frame != Frame::Filtered || a0.rep != Representation::Physical)
    throw PreconditionError("solve_transport: initial state must be a Physical filtered field");
  if (!a0.grid.compatible(cfg.grid)) throw PreconditionError("solve_transport: grid mismatch");
  const QuadraticPhase s0 = cfg.initial_phase();
  if (cfg.t_final >= s0.t_caustic())
    throw SolverError("solve_transport: t_final reaches the caustic");

  const double eps2 = p.epsilon * p.epsilon;
  const int trail = static_cast<int>(cfg.grid.z_points());
  const ThetaQuadrature quad = cfg.theta_nodes > 0
                                   ? ThetaQuadrature::with_nodes(cfg.theta_nodes, cfg.grid)
                                   : ThetaQuadrature::for_grid(cfg.grid);
  auto rhs = [&](const WaveField& u) { return eval_f_av(u, p, quad); };

  Trajectory traj;
  detail::Recorder rec(traj, cfg, 1e-6);
  WaveField a = a0;
  const auto steps = detail::time_steps(cfg.t_final, cfg.dt);
  const long total = static_cast<long>(steps.size());

  double t = 0.0;
  rec.record(t, a, 0, total);
  for (long i = 0; i < total; ++i) {
    const double h = steps[i];
    if (oscillatory)
      detail::oscillatory_phase_step(a, p, (t + h / 4.0) / eps2, h / 2.0);
    else
      detail::rk4_step(a, h / 2.0, rhs);
    if (p.alpha > 0.0) detail::x_kinetic_step(a.values, cfg.grid, p.alpha, h / 2.0, trail);

    const detail::FlowStep fs = detail::flow_step(s0, t, h);
    a = resample_affine(a, fs.pullback_linear, fs.pullback_shift);
    scale(a, Complex(fs.jacobian_factor, 0.0));

    if (p.alpha > 0.0) detail::x_kinetic_step(a.values, cfg.grid, p.alpha, h / 2.0, trail);
    if (oscillatory)
      detail::oscillatory_phase_step(a, p, (t + 3.0 * h / 4.0) / eps2, h / 2.0);
    else
      detail::rk4_step(a, h / 2.0, rhs);
    t += h;
    rec.record(t, a, i + 1, total);
  }
  traj.final_state = std::move(a);
  return traj;
}

/// Reduced polarized model on the x grid: same splitting as TransportLimit
/// with the nonlinearity G^{gamma,k}.
inline Trajectory solve_polarized(const std::vector<Complex>& b0, const SolverConfig& cfg) {
  cfg.validate_common();
  if (cfg.variant != Variant::PolarizedReduced)
    throw ConfigError("solve_polarized: variant mismatch");
  const ModelParams& p = cfg.params;
  if (static_cast<int>(cfg.polarized_k.size()) != cfg.grid.d())
    throw ConfigError("solve_polarized: mode index must have d entries");
  for (int k : cfg.polarized_k)
    if (k < 0 || k >= cfg.grid.k_z()) throw ConfigError("solve_polarized: mode index >= K_z");
  if (b0.size() != cfg.grid.x_points()) throw PreconditionError("solve_polarized: state size mismatch");
  const QuadraticPhase s0 = cfg.initial_phase();
  if (cfg.t_final >= s0.t_caustic())
    throw SolverError("solve_polarized: t_final reaches the caustic");

  const Grid& g = cfg.grid;
  const double x_vol = std::pow(g.x_spacing(), g.x_axes());
  auto mass = [&](const std::vector<Complex>& v) {
    double s = 0.0;
    for (const Complex& c : v) s += std::norm(c);
    return std::sqrt(s * x_vol);
  };

  auto rk4_g = [&](std::vector<Complex>& b, double h) {
    const Complex mi(0.0, -1.0);
    auto f = [&](const std::vector<Complex>& v) { return g_reduced(v, cfg.polarized_k, p, g); };
    std::vector<Complex> k1 = f(b), stage(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) stage[j] = b[j] + mi * (h / 2.0) * k1[j];
    std::vector<Complex> k2 = f(stage);
    for (std::size_t j = 0; j < b.size(); ++j) stage[j] = b[j] + mi * (h / 2.0) * k2[j];
    std::vector<Complex> k3 = f(stage);
    for (std::size_t j = 0; j < b.size(); ++j) stage[j] = b[j] + mi * h * k3[j];
    std::vector<Complex> k4 = f(stage);
    for (std::size_t j = 0; j < b.size(); ++j)
      b[j] += mi * (h / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  };

  Trajectory traj;
  std::vector<Complex> b = b0;
  const auto steps = detail::time_steps(cfg.t_final, cfg.dt);
  const long total = static_cast<long>(steps.size());

  auto record = [&](double t, long step) {
    if (step % cfg.record_stride != 0 && step != total) return;
    DiagnosticsRow row;
    row.t = t;
    row.mass = mass(b);
    for (const Complex& c : b) row.max_mod = std::max(row.max_mod, std::abs(c));
    WaveField embedded = embed_polarized(g, b, cfg.polarized_k, Frame::Filtered);
    row.energy = detail::quadratic_energy(embedded);
    row.b2_norm = discrete_b_norm(embedded, 2);
    traj.diagnostics.push_back(row);
  };

  double t = 0.0;
  record(t, 0);
  for (long i = 0; i < total; ++i) {
    const double h = steps[i];
    rk4_g(b, h / 2.0);
    if (p.alpha > 0.0) detail::x_kinetic_step(b, g, p.alpha, h / 2.0, 1);

    const detail::FlowStep fs = detail::flow_step(s0, t, h);
    b = resample_affine_x(g, b, fs.pullback_linear, fs.pullback_shift);
    for (Complex& c : b) c *= fs.jacobian_factor;

    if (p.alpha > 0.0) detail::x_kinetic_step(b, g, p.alpha, h / 2.0, 1);
    rk4_g(b, h / 2.0);
    t += h;
    record(t, i + 1);
  }
  traj.final_state = embed_polarized(g, b, cfg.polarized_k, Frame::Filtered);
  traj.final_x_state = std::move(b);
  return traj;
}

}  // namespace dgpe
