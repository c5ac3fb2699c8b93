#include <gtest/gtest.h>

#include <sstream>

#include "unit/test_support.hpp"

using namespace dgpe;

TEST(Nondimensionalize, EqualTrapsGiveUnitEpsilon) {
  PhysicalInputs in{2.7e-25, 2.0 * M_PI * 100.0, 2.0 * M_PI * 100.0, 5e-9, 1e4, 1e-50};
  Nondimensional nd = nondimensionalize(in);
  EXPECT_DOUBLE_EQ(nd.epsilon, 1.0);
  EXPECT_EQ(nd.sigma, 1);
}

TEST(Nondimensionalize, NegativeScatteringLength) {
  PhysicalInputs in{2.7e-25, 2.0 * M_PI * 50.0, 2.0 * M_PI * 500.0, -5e-9, 1e4, 1e-50};
  Nondimensional nd = nondimensionalize(in);
  EXPECT_EQ(nd.sigma, -1);
  EXPECT_GT(nd.beta, 0.0);
}

// Dy-164-style benchmark: expected values computed independently from the
// three defining formulas by hand arithmetic.
TEST(Nondimensionalize, BenchmarkInputSet) {
  PhysicalInputs in;
  in.mass_kg = 164.0 * 1.66053906660e-27;
  in.omega_x_rad_s = 2.0 * M_PI * 60.0;
  in.omega_z_rad_s = 2.0 * M_PI * 600.0;
  in.a_s_m = 92.0 * 5.29177210903e-11;
  in.n_atoms = 1.0e4;
  in.c_dip_si = 1.0657209132918932e-50;  // mu0 (9.93 mu_B)^2
  Nondimensional nd = nondimensionalize(in);
  EXPECT_NEAR(nd.epsilon, 0.31622776601683794, 1e-15);
  EXPECT_NEAR(nd.a0_m, 1.0135053563655539e-06, 1e-18);
  EXPECT_NEAR(nd.beta, 603.6327246052563, 1e-9);
  EXPECT_NEAR(nd.lambda0, 1.421883560842986, 1e-12);
  EXPECT_EQ(nd.sigma, 1);
}

TEST(Nondimensionalize, RejectsInvertedTrap) {
  PhysicalInputs in{2.7e-25, 2.0 * M_PI * 500.0, 2.0 * M_PI * 50.0, 5e-9, 1e4, 1e-50};
  EXPECT_THROW(nondimensionalize(in), ConfigError);
}

TEST(DeriveScaledParams, QuotedArithmetic) {
  // d=1: n=2, alpha = eps beta^{-1}
  ScaledParams sp = derive_scaled_params(0.1, 10.0, 1);
  EXPECT_NEAR(sp.alpha, 0.01, 1e-15);
  EXPECT_NEAR(sp.gamma, 0.01, 1e-15);
  EXPECT_FALSE(sp.regime_warning);
  // d=2 unit inputs
  ScaledParams sp2 = derive_scaled_params(1.0, 1.0, 2);
  EXPECT_DOUBLE_EQ(sp2.alpha, 1.0);
  EXPECT_DOUBLE_EQ(sp2.gamma, 1.0);
}

TEST(DeriveScaledParams, ConsistencyIdentity) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ue(0.05, 1.0), ub(0.5, 50.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + trial % 2;
    const double eps = ue(rng), beta = ub(rng);
    ScaledParams sp = derive_scaled_params(eps, beta, d);
    const double n = 3.0 - d;
    EXPECT_NEAR(beta * std::pow(eps, -d) * std::pow(sp.alpha, n / 2.0), 1.0, 1e-12);
  }
  EXPECT_TRUE(derive_scaled_params(1.0, 0.1, 1).regime_warning);  // alpha > 1
}

TEST(FitRate, ExactPowerLaws) {
  std::vector<std::pair<double, double>> quad, lin;
  for (double p : {0.4, 0.2, 0.1}) {
    quad.emplace_back(p, 3.7 * p * p);
    lin.emplace_back(p, 0.9 * p);
  }
  RateFit f2 = fit_rate(quad);
  EXPECT_NEAR(f2.slope, 2.0, 1e-12);
  EXPECT_NEAR(f2.r_squared, 1.0, 1e-12);
  RateFit f1 = fit_rate(lin);
  EXPECT_NEAR(f1.slope, 1.0, 1e-12);
}

TEST(FitRate, NoisyPowerLaw) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> noise(0.0, 0.01);
  std::vector<std::pair<double, double>> pts;
  for (double p : {0.8, 0.4, 0.2, 0.1, 0.05, 0.025})
    pts.emplace_back(p, 2.3 * std::pow(p, 1.5) * (1.0 + noise(rng)));
  RateFit fit = fit_rate(pts);
  EXPECT_NEAR(fit.slope, 1.5, 0.05);
}

TEST(FitRate, RejectsDegenerateInput) {
  std::vector<std::pair<double, double>> two = {{0.4, 1.0}, {0.2, 0.5}};
  EXPECT_THROW(fit_rate(two), ConfigError);
  std::vector<std::pair<double, double>> neg = {{0.4, 1.0}, {0.2, -0.5}, {0.1, 0.2}};
  EXPECT_THROW(fit_rate(neg), ConfigError);
  std::vector<std::pair<double, double>> flat = {{0.2, 1.0}, {0.2, 0.5}, {0.2, 0.2}};
  EXPECT_THROW(fit_rate(flat), ConfigError);
}

TEST(SweepSpec, LadderValidation) {
  SweepSpec spec;
  spec.estimate = Estimate::EpsRate;
  spec.fixed = ModelParams{1, 1, 0.5, DipoleAxis::make({0.6, 0.0}, {0.8}), 0.5, 0.5, 0.25};
  spec.grid = Grid::make(1, 6.0, 8, 6.0, 8, 4);
  spec.ladder = {0.4, 0.4, 0.2};  // not strictly decreasing
  EXPECT_THROW(spec.validate(), ConfigError);
  spec.ladder = {0.4, 0.2};  // too short
  EXPECT_THROW(spec.validate(), ConfigError);
  spec.ladder = {0.4, 0.2, 0.1};
  EXPECT_NO_THROW(spec.validate());
  spec.norms = {5};
  EXPECT_THROW(spec.validate(), ConfigError);
}

namespace {

const char* kConfigJson = R"({
  "grid": {"d": 2, "x_half_width": 6.0, "n_x": 16, "z_half_width": 6.0, "n_z": 8, "K_z": 3},
  "params": {"sigma": 1, "lambda0":
    0.4, "axis_x": [0.38941834230865], "axis_z": [0.552810100456754, 0.737080133942339],
    "epsilon": 0.5, "alpha": 0.5, "gamma": 0.3},
  "phase": {"M0": [[0.1]], "b0": [0.2], "c0": 0.0},
  "initial_data": {"family": "gaussian", "x_sigma": 1.1},
  "solver": {"variant": "full", "t_final": 0.2, "dt": 0.02, "record_stride": 4},
  "sweep": {"estimate": "eps_rate", "ladder": [0.5, 0.35, 0.25], "norms": [0], "ref_refine": 1},
  "output": {"dir": "out", "prefix": "demo"}
})";

}  // namespace

TEST(ConfigIo, ParsesFullDocument) {
  RunConfig cfg = parse_config(Json::parse(kConfigJson));
  EXPECT_EQ(cfg.grid.d(), 2);
  EXPECT_EQ(cfg.solver.variant, Variant::Full);
  ASSERT_TRUE(cfg.sweep.has_value());
  EXPECT_EQ(cfg.sweep->ladder.size(), 3u);
  EXPECT_EQ(cfg.sweep->estimate, Estimate::EpsRate);
  ASSERT_TRUE(cfg.phase.has_value());
  EXPECT_NEAR(cfg.phase->M()(0, 0), 0.1, 1e-15);
}

TEST(ConfigIo, RejectsUnknownKeys) {
  Json j = Json::parse(kConfigJson);
  j["typo_key"] = 1;
  EXPECT_THROW(parse_config(j), ConfigError);
  Json j2 = Json::parse(kConfigJson);
  j2["grid"]["extra"] = 2;
  EXPECT_THROW(parse_config(j2), ConfigError);
  Json j3 = Json::parse(kConfigJson);
  j3["solver"]["cadence"] = 2;
  EXPECT_THROW(parse_config(j3), ConfigError);
}

TEST(ConfigIo, RejectsMissingAndMalformed) {
  Json j = Json::parse(kConfigJson);
  j.erase("params");
  EXPECT_THROW(parse_config(j), ConfigError);
  Json j2 = Json::parse(kConfigJson);
  j2["params"]["axis_z"] = {1.0};  // wrong arity for d=2
  EXPECT_THROW(parse_config(j2), ConfigError);
  Json j3 = Json::parse(kConfigJson);
  j3["sweep"]["estimate"] = "bogus";
  EXPECT_THROW(parse_config(j3), ConfigError);
}

TEST(TrajectoryIo, BinaryRoundTrip) {
  Grid g = Grid::make(2, 6.0, 8, 6.0, 8, 3);
  Trajectory traj;
  traj.final_state = tsupport::random_field(g, 5);
  traj.diagnostics.push_back({0.25, 1.0, 0.5, 0.3, 2.0});
  std::stringstream buf(std::ios::in | std::ios::out | std::ios::binary);
  write_trajectory_binary(traj, g, buf);
  TrajectoryDump dump = read_trajectory_binary(buf);
  EXPECT_EQ(dump.d, 2);
  EXPECT_EQ(dump.n_x, 8);
  ASSERT_EQ(dump.states.size(), 1u);
  ASSERT_EQ(dump.states[0].size(), g.total_points());
  double dev = 0.0;
  for (std::size_t i = 0; i < dump.states[0].size(); ++i)
    dev = std::max(dev, std::abs(dump.states[0][i] - traj.final_state.values[i]));
  EXPECT_EQ(dev, 0.0);
  EXPECT_DOUBLE_EQ(dump.times[0], 0.25);
}

namespace {

SweepSpec tiny_sweep_spec() {
  SweepSpec spec;
  spec.estimate = Estimate::EpsRate;
  spec.fixed = ModelParams{2, 1, 0.4,
                           DipoleAxis::make({0.38941834230865},
                                            {0.552810100456754, 0.737080133942339}),
                           0.5, 0.6, 0.3};
  spec.grid = Grid::make(2, 6.0, 16, 6.0, 8, 3);
  spec.ladder = {0.5, 0.35, 0.25};
  spec.initial_data.x_sigma = 1.1;
  spec.t_final = 0.15;
  spec.dt = 0.004;
  spec.norms = {0, 2};
  spec.ref_refine = 1;
  return spec;
}

}  // namespace

TEST(Sweep, DeterministicAcrossRunsAndJobCounts) {
  SweepSpec spec = tiny_sweep_spec();
  auto render = [&](int jobs) {
    SweepResult r = run_sweep(spec, jobs);
    std::stringstream ss;
    write_rates_csv(r, ss);
    return ss.str();
  };
  const std::string once = render(1);
  const std::string twice = render(1);
  EXPECT_EQ(once, twice);
  const std::string parallel = render(4);
  EXPECT_EQ(once, parallel);
  EXPECT_NE(once.find("eps_rate"), std::string::npos);
}

TEST(Sweep, RowOrderFollowsLadderAndCarriesMetadata) {
  SweepSpec spec = tiny_sweep_spec();
  SweepResult r = run_sweep(spec, 2);
  ASSERT_EQ(r.rows.size(), 6u);  // 2 norms x 3 ladder points
  EXPECT_EQ(r.rows[0].norm, 0);
  EXPECT_DOUBLE_EQ(r.rows[0].param, 0.5);
  EXPECT_DOUBLE_EQ(r.rows[1].param, 0.35);
  EXPECT_DOUBLE_EQ(r.rows[2].param, 0.25);
  EXPECT_EQ(r.rows[3].norm, 2);
  EXPECT_DOUBLE_EQ(r.t_final, 0.15);
  EXPECT_EQ(r.ref_refine, 1);
  EXPECT_FALSE(r.grid_descriptor.empty());
  ASSERT_TRUE(r.fits.count(0));
  ASSERT_TRUE(r.fits.count(2));
  for (const auto& row : r.rows) EXPECT_GT(row.error, 0.0);
}

TEST(Sweep, SubsampledReferenceGrid) {
  SweepSpec spec = tiny_sweep_spec();
  spec.reference_grid = Grid::make(2, 6.0, 8, 6.0, 8, 3);
  SweepResult r = run_sweep(spec, 1);
  EXPECT_EQ(r.rows.size(), 6u);
  for (const auto& row : r.rows) EXPECT_GT(row.error, 0.0);
  spec.reference_grid = Grid::make(2, 6.0, 8, 6.0, 8, 4);  // K_z mismatch
  EXPECT_THROW(spec.validate(), ConfigError);
}

TEST(RunParallel, PropagatesFirstException) {
  std::vector<std::function<void()>> tasks;
  tasks.emplace_back([] {});
  tasks.emplace_back([] { throw SolverError("boom"); });
  tasks.emplace_back([] {});
  EXPECT_THROW(run_parallel(3, tasks), SolverError);
}

TEST(Selftest, AllChecksGreen) {
  SelftestReport report = selftest();
  for (const auto& c : report.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

TEST(Selftest, InjectedKernelSignFlipFails) {
  Grid g = Grid::make(1, 6.0, 8, 6.0, 8, 4);
  const DipoleAxis axis = DipoleAxis::make({0.6, 0.0}, {0.8});
  KernelTable table = KernelTable::build(g, 0.5, axis);
  for (double& v : table.multiplier) v = -v;  // off-by-sign fixture
  CheckResult result = check_kernel_bounds(table);
  EXPECT_FALSE(result.passed);
}
