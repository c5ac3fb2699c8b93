#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dgpe/core/bnorm.hpp"
#include "dgpe/harness/initial_data.hpp"
#include "dgpe/harness/physical.hpp"
#include "dgpe/harness/ratefit.hpp"
#include "dgpe/harness/runner.hpp"
#include "dgpe/solver/averaged.hpp"
#include "dgpe/solver/full.hpp"
#include "dgpe/solver/transport.hpp"

namespace dgpe {

enum class Estimate { EpsRate, AlphaRate, GammaRate, GammaRatePolarized, GlobalRate, CoupledPhysical };

inline std::string estimate_name(Estimate e) {
  switch (e) {
    case Estimate::EpsRate: return "eps_rate";
    case Estimate::AlphaRate: return "alpha_rate";
    case Estimate::GammaRate: return "gamma_rate";
    case Estimate::GammaRatePolarized: return "gamma_rate_polarized";
    case Estimate::GlobalRate: return "global_rate";
    case Estimate::CoupledPhysical: return "coupled_physical";
  }
  return "?";
}

struct SweepSpec {
  Estimate estimate = Estimate::EpsRate;
  std::vector<double> ladder;  // strictly decreasing values in (0,1]
  ModelParams fixed;           // d, sigma, lambda0, axis + the held parameters
  Grid grid;                   // ladder-run grid
  std::optional<Grid> reference_grid;  // coarser grid for the limit solve; x must subsample
  std::optional<QuadraticPhase> phase0;
  InitialData initial_data;
  double t_final = 0.5;
  double dt = 0.01;
  double reference_dt = 0.0;  // 0 -> dt, before refinement
  int ref_refine = 1;         // reference dt divided by 2^ref_refine
  int theta_nodes = 0;
  std::vector<int> norms = {0, 2};
  double beta = 1.0;                // CoupledPhysical
  std::vector<int> polarized_k;     // GammaRatePolarized

  void validate() const {
    fixed.validate();
    if (ladder.size() < 3) throw ConfigError("sweep: ladder needs at least 3 values");
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      if (ladder[i] <= 0.0 || ladder[i] > 1.0) throw ConfigError("sweep: ladder values in (0,1]");
      if (i > 0 && ladder[i] >= ladder[i - 1])
        throw ConfigError("sweep: ladder must be strictly decreasing");
    }
    if (norms.empty()) throw ConfigError("sweep: need at least one norm index");
    for (int m : norms)
      if (m < 0 || m > 3) throw ConfigError("sweep: norm index must be in 0..3");
    if (t_final <= 0.0 || dt <= 0.0) throw ConfigError("sweep: t_final and dt must be positive");
    if (ref_refine < 0 || ref_refine > 6) throw ConfigError("sweep: ref_refine in 0..6");
    if (reference_grid) {
      const Grid& r = *reference_grid;
      if (r.d() != grid.d() || r.n_z() != grid.n_z() || r.k_z() != grid.k_z() ||
          r.z_half_width() != grid.z_half_width() || r.x_half_width() != grid.x_half_width() ||
          grid.n_x() % r.n_x() != 0)
        throw ConfigError("sweep: reference grid must subsample the run grid in x");
    }
    if (estimate == Estimate::GammaRatePolarized &&
        static_cast<int>(polarized_k.size()) != fixed.d)
      throw ConfigError("sweep: polarized sweep needs a d-entry mode index");
  }
};

struct SweepRow {
  std::string estimate;
  int norm = 0;
  double param = 0.0;
  double error = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;      // grouped by norm, ladder order
  std::map<int, RateFit> fits;     // per norm index
  double t_final = 0.0;
  std::string grid_descriptor;
  int ref_refine = 1;
};

inline std::string grid_descriptor(const Grid& g) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "d=%d;x=%d^%d@%g;z=%d^%d@%g;K=%d", g.d(), g.n_x(), g.x_axes(),
                g.x_half_width(), g.n_z(), g.z_axes(), g.z_half_width(), g.k_z());
  return buf;
}

namespace detail {

/// Restrict a field to a coarser grid sharing the box (x subsampling only).
inline WaveField subsample_to(const WaveField& f, const Grid& coarse) {
  const Grid& fine = f.grid;
  if (fine.compatible(coarse)) return WaveField{coarse, f.values, f.rep, f.frame};
  const int stride = fine.n_x() / coarse.n_x();
  WaveField out = WaveField::zeros(coarse, f.frame);
  const std::size_t zp = fine.z_points();
  if (fine.x_axes() == 1) {
    for (int i = 0; i < coarse.n_x(); ++i)
      for (std::size_t z = 0; z < zp; ++z)
        out.values[i * zp + z] = f.values[static_cast<std::size_t>(i) * stride * zp + z];
  } else {
    for (int i = 0; i < coarse.n_x(); ++i)
      for (int j = 0; j < coarse.n_x(); ++j) {
        const std::size_t src =
            (static_cast<std::size_t>(i) * stride * fine.n_x() + static_cast<std::size_t>(j) * stride) * zp;
        const std::size_t dst = (static_cast<std::size_t>(i) * coarse.n_x() + j) * zp;
        for (std::size_t z = 0; z < zp; ++z) out.values[dst + z] = f.values[src + z];
      }
  }
  return out;
}

struct RouteContext {
  const SweepSpec& spec;
  Grid ref_grid;
  double ref_dt;

  double full_dt(double eps) const {
    return std::min(spec.dt, eps * eps / 10.0);
  }
};

/// Full solve from WKB data, mapped to the filtered frame at T.
inline WaveField full_route(const RouteContext& ctx, double eps, double alpha, double gamma) {
  const SweepSpec& s = ctx.spec;
  ModelParams p = s.fixed;
  p.epsilon = eps;
  p.alpha = alpha;
  p.gamma = gamma;
  QuadraticPhase s0 = s.phase0 ? *s.phase0 : QuadraticPhase::zero(s.grid.x_axes());
  SolverConfig cfg{Variant::Full, s.grid, p, s0, s.t_final, ctx.full_dt(eps), 1000000, false, {},
                   s.theta_nodes};
  WaveField psi0 = build_wkb_state(s.initial_data, s.grid, s0, alpha);
  Trajectory traj = solve_full(psi0, cfg);
  FrameStamp stamp{s.t_final, eps, alpha, s0};
  return to_filtered(traj.final_state, stamp);
}

/// Averaged solve, gauged to the filtered frame at T (runs on the reference grid).
inline WaveField averaged_route(const RouteContext& ctx, double alpha, double gamma) {
  const SweepSpec& s = ctx.spec;
  ModelParams p = s.fixed;
  p.epsilon = 0.0;
  p.alpha = alpha;
  p.gamma = gamma;
  QuadraticPhase s0 = s.phase0 ? *s.phase0 : QuadraticPhase::zero(s.grid.x_axes());
  SolverConfig cfg{Variant::Averaged, ctx.ref_grid, p, s0, s.t_final, ctx.ref_dt, 1000000, false, {},
                   s.theta_nodes};
  WaveField phi0 = build_wkb_state(s.initial_data, ctx.ref_grid, s0, alpha);
  Trajectory traj = solve_averaged(phi0, cfg);
  WaveField a = apply_phase_gauge(traj.final_state, s0.evolve(s.t_final), alpha, -1);
  a.frame = Frame::Filtered;
  return a;
}

inline WaveField transport_route(const RouteContext& ctx, Variant variant, double eps,
                                 double alpha, double gamma) {
  const SweepSpec& s = ctx.spec;
  ModelParams p = s.fixed;
  p.epsilon = eps;
  p.alpha = alpha;
  p.gamma = gamma;
  QuadraticPhase s0 = s.phase0 ? *s.phase0 : QuadraticPhase::zero(s.grid.x_axes());
  double dt = ctx.ref_dt;
  if (variant == Variant::TransportOscillatory) dt = std::min(dt, eps * eps / 10.0);
  SolverConfig cfg{variant, ctx.ref_grid, p, s0, s.t_final, dt, 1000000, false, {}, s.theta_nodes};
  WaveField a0 = build_amplitude(s.initial_data, ctx.ref_grid, Frame::Filtered);
  Trajectory traj = solve_transport(a0, cfg);
  return traj.final_state;
}

inline WaveField polarized_route(const RouteContext& ctx, double alpha, double gamma, double dt) {
  const SweepSpec& s = ctx.spec;
  ModelParams p = s.fixed;
  p.epsilon = 0.0;
  p.alpha = alpha;
  p.gamma = gamma;
  QuadraticPhase s0 = s.phase0 ? *s.phase0 : QuadraticPhase::zero(s.grid.x_axes());
  SolverConfig cfg{Variant::PolarizedReduced, ctx.ref_grid, p, s0, s.t_final, dt, 1000000, false,
                   s.polarized_k.empty() ? s.initial_data.k : s.polarized_k, s.theta_nodes};
  std::vector<Complex> b0 = build_x_profile(s.initial_data, ctx.ref_grid);
  Trajectory traj = solve_polarized(b0, cfg);
  return traj.final_state;
}

}  // namespace detail

/// Runs the designated solver pair over the ladder, measures filtered-frame
/// B-norm errors at T_final and fits the log-log rate per norm. Ladder points
/// and the reference run as independent tasks; output order follows the
/// ladder regardless of completion order.
inline SweepResult run_sweep(const SweepSpec& spec, int jobs = 1) {
  spec.validate();
  detail::RouteContext ctx{spec, spec.reference_grid ? *spec.reference_grid : spec.grid,
                           (spec.reference_dt > 0.0 ? spec.reference_dt : spec.dt) /
                               static_cast<double>(1 << spec.ref_refine)};

  const std::size_t n = spec.ladder.size();
  std::vector<WaveField> targets(n);
  WaveField reference;

  std::vector<std::function<void()>> tasks;
  tasks.emplace_back([&] {
    switch (spec.estimate) {
      case Estimate::EpsRate:
        reference = detail::averaged_route(ctx, spec.fixed.alpha, spec.fixed.gamma);
        break;
      case Estimate::AlphaRate: {
        detail::RouteContext osc = ctx;
        osc.ref_dt = std::min(ctx.ref_dt, spec.fixed.epsilon * spec.fixed.epsilon / 10.0);
        reference = detail::transport_route(osc, Variant::TransportOscillatory,
                                            spec.fixed.epsilon, 0.0, spec.fixed.gamma);
        break;
      }
      case Estimate::GammaRate: {
        // A^{eps,alpha,0}: the full model at gamma = 0, refined in dt.
        const double ref_dt = ctx.full_dt(spec.fixed.epsilon) /
                              static_cast<double>(1 << spec.ref_refine);
        ModelParams p = spec.fixed;
        QuadraticPhase s0 = spec.phase0 ? *spec.phase0 : QuadraticPhase::zero(spec.grid.x_axes());
        SolverConfig cfg{Variant::Full, spec.grid, p, s0, spec.t_final, ref_dt, 1000000,
                         false, {}, spec.theta_nodes};
        cfg.params.gamma = 0.0;
        WaveField psi0 = build_wkb_state(spec.initial_data, spec.grid, s0, spec.fixed.alpha);
        Trajectory traj = solve_full(psi0, cfg);
        FrameStamp stamp{spec.t_final, spec.fixed.epsilon, spec.fixed.alpha, s0};
        reference = to_filtered(traj.final_state, stamp);
        break;
      }
      case Estimate::GammaRatePolarized:
        reference = detail::polarized_route(ctx, spec.fixed.alpha, 0.0, ctx.ref_dt);
        break;
      case Estimate::GlobalRate:
      case Estimate::CoupledPhysical:
        reference = detail::transport_route(ctx, Variant::TransportLimit, 0.0, 0.0, 0.0);
        break;
    }
  });

  for (std::size_t i = 0; i < n; ++i) {
    tasks.emplace_back([&, i] {
      const double p = spec.ladder[i];
      switch (spec.estimate) {
        case Estimate::EpsRate:
          targets[i] = detail::full_route(ctx, p, spec.fixed.alpha, spec.fixed.gamma);
          break;
        case Estimate::AlphaRate:
          targets[i] = detail::full_route(ctx, spec.fixed.epsilon, p, spec.fixed.gamma);
          break;
        case Estimate::GammaRate:
          targets[i] = detail::full_route(ctx, spec.fixed.epsilon, spec.fixed.alpha, p);
          break;
        case Estimate::GammaRatePolarized:
          targets[i] = detail::polarized_route(ctx, spec.fixed.alpha, p, spec.dt);
          break;
        case Estimate::GlobalRate:
          targets[i] = detail::full_route(ctx, p, p, p * std::sqrt(p));
          break;
        case Estimate::CoupledPhysical: {
          const ScaledParams sp = derive_scaled_params(p, spec.beta, spec.fixed.d);
          if (sp.alpha > 1.0)
            throw ConfigError("sweep: derived alpha exceeds 1 (outside the scaling regime)");
          targets[i] = detail::full_route(ctx, p, sp.alpha, sp.gamma);
          break;
        }
      }
    });
  }

  run_parallel(jobs, tasks);

  SweepResult result;
  result.t_final = spec.t_final;
  result.grid_descriptor = grid_descriptor(spec.grid);
  result.ref_refine = spec.ref_refine;

  for (int m : spec.norms) {
    std::vector<std::pair<double, double>> points;
    for (std::size_t i = 0; i < n; ++i) {
      WaveField t_c = detail::subsample_to(targets[i], ctx.ref_grid);
      WaveField diff = difference(t_c, reference);
      points.emplace_back(spec.ladder[i], discrete_b_norm(diff, m));
    }
    RateFit fit = fit_rate(points);
    result.fits.emplace(m, fit);
    for (std::size_t i = 0; i < n; ++i)
      result.rows.push_back(SweepRow{estimate_name(spec.estimate), m, points[i].first,
                                     points[i].second, fit.slope, fit.r_squared});
  }
  return result;
}

}  // namespace dgpe
