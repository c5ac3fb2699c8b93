// Command-line driver: single solves, convergence-rate sweeps, rate fits on
// existing CSVs, physical-parameter conversion and the invariant selftest.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "dgpe/dgpe.hpp"

namespace fs = std::filesystem;
using namespace dgpe;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitSolver = 2;
constexpr int kExitSelftest = 3;

std::ofstream open_out(const fs::path& path, bool binary = false) {
  std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
  if (!os) throw ConfigError("cannot open output file '" + path.string() + "'");
  return os;
}

int cmd_solve(const std::string& config_path, const std::string& out_override) {
  RunConfig cfg = load_config_file(config_path);
  if (!out_override.empty()) cfg.output.dir = out_override;
  fs::create_directories(cfg.output.dir);

  Trajectory traj;
  switch (cfg.solver.variant) {
    case Variant::Full: {
      WaveField psi0 = build_wkb_state(cfg.initial_data, cfg.grid, cfg.solver.initial_phase(),
                                       cfg.params.alpha);
      traj = solve_full(psi0, cfg.solver);
      break;
    }
    case Variant::Averaged: {
      WaveField phi0 = build_wkb_state(cfg.initial_data, cfg.grid, cfg.solver.initial_phase(),
                                       cfg.params.alpha);
      traj = solve_averaged(phi0, cfg.solver);
      break;
    }
    case Variant::TransportOscillatory:
    case Variant::TransportLimit: {
      WaveField a0 = build_amplitude(cfg.initial_data, cfg.grid, Frame::Filtered);
      traj = solve_transport(a0, cfg.solver);
      break;
    }
    case Variant::PolarizedReduced: {
      if (cfg.solver.polarized_k.empty()) cfg.solver.polarized_k = cfg.initial_data.k;
      traj = solve_polarized(build_x_profile(cfg.initial_data, cfg.grid), cfg.solver);
      break;
    }
  }

  const fs::path dir(cfg.output.dir);
  {
    auto os = open_out(dir / (cfg.output.prefix + "_diagnostics.csv"));
    write_diagnostics_csv(traj, os);
  }
  if (cfg.output.dump_trajectory) {
    auto os = open_out(dir / (cfg.output.prefix + "_trajectory.bin"), true);
    write_trajectory_binary(traj, cfg.grid, os);
  }
  if (cfg.output.dump_kernel_slice) {
    auto table = kernel_table(cfg.grid, cfg.params.gamma, cfg.params.axis);
    auto os = open_out(dir / (cfg.output.prefix + "_kernel.csv"));
    dump_multiplier_csv(*table, os);
  }
  std::cout << "solve: " << traj.diagnostics.size() << " diagnostic rows, final mass "
            << traj.final_mass() << "\n";
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_override, int jobs) {
  RunConfig cfg = load_config_file(config_path);
  if (!cfg.sweep) throw ConfigError("sweep: config has no 'sweep' block");
  if (!out_override.empty()) cfg.output.dir = out_override;
  fs::create_directories(cfg.output.dir);

  SweepResult result = run_sweep(*cfg.sweep, jobs);
  {
    auto os = open_out(fs::path(cfg.output.dir) / "rates.csv");
    write_rates_csv(result, os);
  }
  for (const auto& [norm, fit] : result.fits)
    std::cout << "sweep " << estimate_name(cfg.sweep->estimate) << " B" << norm << ": slope "
              << fit.slope << ", r^2 " << fit.r_squared << "\n";
  return kExitOk;
}

int cmd_rates(const std::string& in_path, const std::string& out_dir) {
  std::ifstream in(in_path);
  if (!in) throw ConfigError("rates: cannot open '" + in_path + "'");
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("rates: empty file");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, ',')) header.push_back(col);
  }
  auto col_index = [&](const std::string& name) -> int {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    return -1;
  };
  const int c_param = col_index("param");
  const int c_error = col_index("error");
  if (c_param < 0 || c_error < 0)
    throw ConfigError("rates: CSV must have 'param' and 'error' columns");
  const int c_estimate = col_index("estimate");
  const int c_norm = col_index("norm");

  std::map<std::string, std::vector<std::pair<double, double>>> groups;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    std::string key = "all";
    if (c_estimate >= 0 && c_norm >= 0)
      key = cells[c_estimate] + ",B" + cells[c_norm];
    groups[key].emplace_back(std::stod(cells[c_param]), std::stod(cells[c_error]));
  }

  std::ostringstream body;
  body << "group,slope,intercept,r2,n_points\n";
  for (const auto& [key, pts] : groups) {
    RateFit fit = fit_rate(pts);
    char buf[200];
    std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g,%zu\n", key.c_str(), fit.slope,
                  fit.intercept, fit.r_squared, pts.size());
    body << buf;
  }
  if (out_dir.empty()) {
    std::cout << body.str();
  } else {
    fs::create_directories(out_dir);
    auto os = open_out(fs::path(out_dir) / "fits.csv");
    os << body.str();
    std::cout << "rates: wrote " << (fs::path(out_dir) / "fits.csv").string() << "\n";
  }
  return kExitOk;
}

int cmd_params(const std::string& config_path) {
  auto [phys, d] = load_physical_file(config_path);
  Nondimensional nd = nondimensionalize(phys);
  std::cout << "epsilon = " << nd.epsilon << "\n"
            << "beta    = " << nd.beta << "\n"
            << "lambda0 = " << nd.lambda0 << "\n"
            << "a0_m    = " << nd.a0_m << "\n"
            << "sigma   = " << nd.sigma << "\n";
  if (d) {
    ScaledParams sp = derive_scaled_params(nd.epsilon, nd.beta, *d);
    std::cout << "alpha   = " << sp.alpha << "\n"
              << "gamma   = " << sp.gamma << "\n";
    if (sp.regime_warning)
      std::cout << "warning: alpha > 1, outside the alpha << 1 scaling regime\n";
  }
  return kExitOk;
}

int cmd_selftest() {
  SelftestReport report = selftest();
  for (const auto& c : report.checks)
    std::cout << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  (" << c.detail << ")\n";
  if (!report.all_passed()) {
    std::cout << "selftest: FAILURES present\n";
    return kExitSelftest;
  }
  std::cout << "selftest: all checks passed\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "dgpe - spectral solvers and convergence-rate harness for the rescaled "
      "dipolar Gross-Pitaevskii equation.\n"
      "Config files are strict JSON with top-level keys {grid, params, phase, "
      "initial_data, solver, sweep, output}; unknown keys are rejected.\n"
      "rates.csv columns: estimate,norm,param,error,slope,r2,t_final,grid,ref_refine.\n"
      "Diagnostics columns: t,mass,max_mod,B0_norm,B2_norm."};
  app.require_subcommand(1);

  std::string config_path, out_dir, in_path;
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  std::uint64_t seed = 0;
  app.add_option("--jobs", jobs, "worker threads for sweep-level parallelism");
  app.add_option("--seed", seed, "base seed recorded with the run (reserved for randomized data families)");

  auto* solve = app.add_subcommand("solve", "one run; dumps trajectory and diagnostics");
  solve->add_option("--config", config_path, "JSON run configuration")->required();
  solve->add_option("--out", out_dir, "output directory (overrides config)");

  auto* sweep = app.add_subcommand("sweep", "run a convergence sweep; emits rates.csv");
  sweep->add_option("--config", config_path, "JSON run configuration with a sweep block")->required();
  sweep->add_option("--out", out_dir, "output directory (overrides config)");

  auto* rates = app.add_subcommand("rates", "fit log-log rates on an existing CSV");
  rates->add_option("--in", in_path, "input CSV with param and error columns")->required();
  rates->add_option("--out", out_dir, "output directory (stdout when omitted)");

  auto* params = app.add_subcommand("params", "nondimensionalize physical inputs");
  params->add_option("--config", config_path, "JSON physical inputs")->required();

  app.add_subcommand("selftest", "run the bundled invariant checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("solve")) return cmd_solve(config_path, out_dir);
    if (app.got_subcommand("sweep")) return cmd_sweep(config_path, out_dir, jobs);
    if (app.got_subcommand("rates")) return cmd_rates(in_path, out_dir);
    if (app.got_subcommand("params")) return cmd_params(config_path);
    if (app.got_subcommand("selftest")) return cmd_selftest();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const PreconditionError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitOk;
}
