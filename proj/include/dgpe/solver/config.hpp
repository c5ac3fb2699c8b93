#pragma once

#include <optional>
#include <vector>

#include "dgpe/core/wavefield.hpp"
#include "dgpe/model/params.hpp"
#include "dgpe/model/phase.hpp"

namespace dgpe {

enum class Variant { Full, Averaged, TransportOscillatory, TransportLimit, PolarizedReduced };

struct SolverConfig {
  Variant variant = Variant::Full;
  Grid grid;
  ModelParams params;
  std::optional<QuadraticPhase> phase0;  // eikonal data; zero phase when absent
  double t_final = 0.5;
  double dt = 1e-2;
  int record_stride = 1;
  bool keep_snapshots = false;
  std::vector<int> polarized_k;  // PolarizedReduced mode multi-index
  int theta_nodes = 0;           // 0 -> minimal admissible for the grid

  QuadraticPhase initial_phase() const {
    if (phase0) return *phase0;
    return QuadraticPhase::zero(grid.x_axes());
  }

  void validate_common() const {
    params.validate();
    if (params.d != grid.d()) throw ConfigError("solver: params.d != grid.d");
    if (t_final <= 0.0 || dt <= 0.0) throw ConfigError("solver: t_final and dt must be positive");
    if (record_stride < 1) throw ConfigError("solver: record_stride must be >= 1");
    if (phase0 && phase0->dim() != grid.x_axes())
      throw ConfigError("solver: phase dimension != 3-d");
  }
};

struct DiagnosticsRow {
  double t = 0.0;
  double mass = 0.0;      // L2 norm (= B0)
  double energy = 0.0;    // quadratic energy density (H1 seminorm + moment)
  double max_mod = 0.0;
  double b2_norm = 0.0;
};

struct Trajectory {
  std::vector<DiagnosticsRow> diagnostics;
  WaveField final_state;
  std::vector<Complex> final_x_state;  // populated by the polarized solver
  std::vector<std::pair<double, WaveField>> snapshots;

  double initial_mass() const { return diagnostics.empty() ? 0.0 : diagnostics.front().mass; }
  double final_mass() const { return diagnostics.empty() ? 0.0 : diagnostics.back().mass; }
  double max_mass_drift() const {
    if (diagnostics.empty()) return 0.0;
    const double m0 = diagnostics.front().mass;
    double d = 0.0;
    for (const auto& row : diagnostics) d = std::max(d, std::abs(row.mass - m0));
    return d;
  }
};

namespace detail {

/// Step sizes covering [0, t_final] with a possibly shorter final step.
inline std::vector<double> time_steps(double t_final, double dt) {
  std::vector<double> steps;
  const long n_full = static_cast<long>(t_final / dt + 1e-12);
  for (long i = 0; i < n_full; ++i) steps.push_back(dt);
  const double rem = t_final - n_full * dt;
  if (rem > 1e-12 * t_final) steps.push_back(rem);
  return steps;
}

}  // namespace detail

}  // namespace dgpe
