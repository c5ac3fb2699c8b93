#pragma once

#include <json.hpp>

#include <fstream>
#include <optional>
#include <set>
#include <string>

#include "dgpe/harness/physical.hpp"
#include "dgpe/harness/sweep.hpp"

namespace dgpe {

using Json = nlohmann::json;

namespace detail {

inline void check_keys(const Json& j, const std::set<std::string>& allowed,
                       const std::string& context) {
  if (!j.is_object()) throw ConfigError("config: '" + context + "' must be an object");
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key))
      throw ConfigError("config: unknown key '" + key + "' in '" + context + "'");
}

template <typename T>
T get_or(const Json& j, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError("config: bad value for '" + key + "': " + e.what());
  }
}

template <typename T>
T require(const Json& j, const std::string& key, const std::string& context) {
  if (!j.contains(key)) throw ConfigError("config: missing '" + key + "' in '" + context + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError("config: bad value for '" + key + "': " + e.what());
  }
}

}  // namespace detail

struct OutputConfig {
  std::string dir = "out";
  std::string prefix = "run";
  bool dump_trajectory = false;
  bool dump_kernel_slice = false;
};

struct RunConfig {
  Grid grid;
  ModelParams params;
  std::optional<QuadraticPhase> phase;
  InitialData initial_data;
  SolverConfig solver;
  std::optional<SweepSpec> sweep;
  OutputConfig output;
};

namespace detail {

inline Grid parse_grid(const Json& j, const std::string& context) {
  check_keys(j, {"d", "x_half_width", "n_x", "z_half_width", "n_z", "K_z"}, context);
  return Grid::make(require<int>(j, "d", context), require<double>(j, "x_half_width", context),
                    require<int>(j, "n_x", context), require<double>(j, "z_half_width", context),
                    require<int>(j, "n_z", context), require<int>(j, "K_z", context));
}

inline ModelParams parse_params(const Json& j, int d) {
  check_keys(j, {"sigma", "lambda0", "axis_x", "axis_z", "epsilon", "alpha", "gamma"}, "params");
  ModelParams p;
  p.d = d;
  p.sigma = require<int>(j, "sigma", "params");
  p.lambda0 = require<double>(j, "lambda0", "params");
  p.axis = DipoleAxis::make(require<std::vector<double>>(j, "axis_x", "params"),
                            require<std::vector<double>>(j, "axis_z", "params"));
  p.epsilon = get_or<double>(j, "epsilon", 1.0);
  p.alpha = get_or<double>(j, "alpha", 1.0);
  p.gamma = get_or<double>(j, "gamma", 1.0);
  p.validate();
  return p;
}

inline QuadraticPhase parse_phase(const Json& j, int x_axes) {
  check_keys(j, {"M0", "b0", "c0"}, "phase");
  const auto m_rows = require<std::vector<std::vector<double>>>(j, "M0", "phase");
  Eigen::MatrixXd m(x_axes, x_axes);
  if (static_cast<int>(m_rows.size()) != x_axes)
    throw ConfigError("config: phase.M0 must be (3-d)x(3-d)");
  for (int i = 0; i < x_axes; ++i) {
    if (static_cast<int>(m_rows[i].size()) != x_axes)
      throw ConfigError("config: phase.M0 must be (3-d)x(3-d)");
    for (int k = 0; k < x_axes; ++k) m(i, k) = m_rows[i][k];
  }
  const auto b_vec = require<std::vector<double>>(j, "b0", "phase");
  if (static_cast<int>(b_vec.size()) != x_axes)
    throw ConfigError("config: phase.b0 must have 3-d entries");
  Eigen::VectorXd b(x_axes);
  for (int i = 0; i < x_axes; ++i) b(i) = b_vec[i];
  return QuadraticPhase(m, b, get_or<double>(j, "c0", 0.0));
}

inline InitialData parse_initial_data(const Json& j) {
  check_keys(j,
             {"family", "x_sigma", "x_center", "x_momentum", "z_sigma", "z_odd_amp",
              "z_odd_sigma", "k", "normalize"},
             "initial_data");
  InitialData id;
  id.family = get_or<std::string>(j, "family", "gaussian");
  id.x_sigma = get_or<double>(j, "x_sigma", 1.0);
  id.x_center = get_or<std::vector<double>>(j, "x_center", {});
  id.x_momentum = get_or<std::vector<double>>(j, "x_momentum", {});
  id.z_sigma = get_or<double>(j, "z_sigma", 1.0);
  id.z_odd_amp = get_or<double>(j, "z_odd_amp", 0.0);
  id.z_odd_sigma = get_or<double>(j, "z_odd_sigma", 1.0);
  id.k = get_or<std::vector<int>>(j, "k", {});
  id.normalize = get_or<bool>(j, "normalize", true);
  return id;
}

inline Variant parse_variant(const std::string& name) {
  if (name == "full") return Variant::Full;
  if (name == "averaged") return Variant::Averaged;
  if (name == "transport_oscillatory") return Variant::TransportOscillatory;
  if (name == "transport_limit") return Variant::TransportLimit;
  if (name == "polarized_reduced") return Variant::PolarizedReduced;
  throw ConfigError("config: unknown solver variant '" + name + "'");
}

inline Estimate parse_estimate(const std::string& name) {
  if (name == "eps_rate") return Estimate::EpsRate;
  if (name == "alpha_rate") return Estimate::AlphaRate;
  if (name == "gamma_rate") return Estimate::GammaRate;
  if (name == "gamma_rate_polarized") return Estimate::GammaRatePolarized;
  if (name == "global_rate") return Estimate::GlobalRate;
  if (name == "coupled_physical") return Estimate::CoupledPhysical;
  throw ConfigError("config: unknown sweep estimate '" + name + "'");
}

}  // namespace detail

inline RunConfig parse_config(const Json& j) {
  detail::check_keys(j, {"grid", "params", "phase", "initial_data", "solver", "sweep", "output"},
                     "config");
  RunConfig cfg;
  if (!j.contains("grid")) throw ConfigError("config: missing 'grid'");
  cfg.grid = detail::parse_grid(j.at("grid"), "grid");
  if (!j.contains("params")) throw ConfigError("config: missing 'params'");
  cfg.params = detail::parse_params(j.at("params"), cfg.grid.d());
  if (j.contains("phase")) cfg.phase = detail::parse_phase(j.at("phase"), cfg.grid.x_axes());
  if (j.contains("initial_data")) cfg.initial_data = detail::parse_initial_data(j.at("initial_data"));
  cfg.initial_data.validate(cfg.grid);

  cfg.solver.grid = cfg.grid;
  cfg.solver.params = cfg.params;
  cfg.solver.phase0 = cfg.phase;
  if (j.contains("solver")) {
    const Json& s = j.at("solver");
    detail::check_keys(s,
                       {"variant", "t_final", "dt", "record_stride", "keep_snapshots",
                        "polarized_k", "theta_nodes"},
                       "solver");
    cfg.solver.variant = detail::parse_variant(detail::get_or<std::string>(s, "variant", "full"));
    cfg.solver.t_final = detail::get_or<double>(s, "t_final", 0.5);
    cfg.solver.dt = detail::get_or<double>(s, "dt", 1e-2);
    cfg.solver.record_stride = detail::get_or<int>(s, "record_stride", 1);
    cfg.solver.keep_snapshots = detail::get_or<bool>(s, "keep_snapshots", false);
    cfg.solver.polarized_k = detail::get_or<std::vector<int>>(s, "polarized_k", {});
    cfg.solver.theta_nodes = detail::get_or<int>(s, "theta_nodes", 0);
  }

  if (j.contains("sweep")) {
    const Json& s = j.at("sweep");
    detail::check_keys(s,
                       {"estimate", "ladder", "norms", "ref_refine", "reference_dt",
                        "reference_grid", "beta", "polarized_k"},
                       "sweep");
    SweepSpec spec;
    spec.estimate = detail::parse_estimate(detail::require<std::string>(s, "estimate", "sweep"));
    spec.ladder = detail::require<std::vector<double>>(s, "ladder", "sweep");
    spec.fixed = cfg.params;
    spec.grid = cfg.grid;
    spec.phase0 = cfg.phase;
    spec.initial_data = cfg.initial_data;
    spec.t_final = cfg.solver.t_final;
    spec.dt = cfg.solver.dt;
    spec.theta_nodes = cfg.solver.theta_nodes;
    spec.norms = detail::get_or<std::vector<int>>(s, "norms", {0, 2});
    spec.ref_refine = detail::get_or<int>(s, "ref_refine", 1);
    spec.reference_dt = detail::get_or<double>(s, "reference_dt", 0.0);
    if (s.contains("reference_grid"))
      spec.reference_grid = detail::parse_grid(s.at("reference_grid"), "sweep.reference_grid");
    spec.beta = detail::get_or<double>(s, "beta", 1.0);
    spec.polarized_k = detail::get_or<std::vector<int>>(s, "polarized_k", {});
    spec.validate();
    cfg.sweep = std::move(spec);
  }

  if (j.contains("output")) {
    const Json& o = j.at("output");
    detail::check_keys(o, {"dir", "prefix", "dump_trajectory", "dump_kernel_slice"}, "output");
    cfg.output.dir = detail::get_or<std::string>(o, "dir", "out");
    cfg.output.prefix = detail::get_or<std::string>(o, "prefix", "run");
    cfg.output.dump_trajectory = detail::get_or<bool>(o, "dump_trajectory", false);
    cfg.output.dump_kernel_slice = detail::get_or<bool>(o, "dump_kernel_slice", false);
  }
  return cfg;
}

inline RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config: JSON parse failure: ") + e.what());
  }
  return parse_config(j);
}

/// Physical-inputs file for the `params` subcommand.
inline std::pair<PhysicalInputs, std::optional<int>> load_physical_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config: JSON parse failure: ") + e.what());
  }
  detail::check_keys(
      j, {"mass_kg", "omega_x_rad_s", "omega_z_rad_s", "a_s_m", "N_atoms", "C_dip_SI", "d"},
      "physical");
  PhysicalInputs in_phys;
  in_phys.mass_kg = detail::require<double>(j, "mass_kg", "physical");
  in_phys.omega_x_rad_s = detail::require<double>(j, "omega_x_rad_s", "physical");
  in_phys.omega_z_rad_s = detail::require<double>(j, "omega_z_rad_s", "physical");
  in_phys.a_s_m = detail::require<double>(j, "a_s_m", "physical");
  in_phys.n_atoms = detail::require<double>(j, "N_atoms", "physical");
  in_phys.c_dip_si = detail::require<double>(j, "C_dip_SI", "physical");
  std::optional<int> d;
  if (j.contains("d")) d = j.at("d").get<int>();
  return {in_phys, d};
}

}  // namespace dgpe
