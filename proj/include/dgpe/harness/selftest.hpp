#pragma once

#include <random>
#include <string>
#include <vector>

#include "dgpe/core/bnorm.hpp"
#include "dgpe/model/gauge.hpp"
#include "dgpe/model/nonlinearity.hpp"
#include "dgpe/oracle/direct_convolution.hpp"
#include "dgpe/oracle/riccati_ode.hpp"

namespace dgpe {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelftestReport {
  std::vector<CheckResult> checks;
  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

namespace selftest_detail {

/// Smooth random field: Gaussian-decaying random Fourier content.
inline WaveField random_field(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  WaveField hat = WaveField::zeros(g);
  hat.rep = Representation::Fourier;
  const double kx_ref = M_PI * g.n_x() / (2.0 * g.x_half_width()) / 3.0;
  const double kz_ref = M_PI * g.n_z() / (2.0 * g.z_half_width()) / 3.0;
  detail::for_each_wavenumber(g, [&](std::size_t idx, const double* kx, const double* kz) {
    double decay = 0.0;
    for (int a = 0; a < 3 - g.d(); ++a) decay += kx[a] * kx[a] / (kx_ref * kx_ref);
    for (int a = 0; a < g.d(); ++a) decay += kz[a] * kz[a] / (kz_ref * kz_ref);
    const double amp = std::exp(-decay);
    hat.values[idx] = amp * Complex(normal(rng), normal(rng));
  });
  WaveField f = transform(hat, Direction::Inverse);
  const double n = norm_l2(f);
  scale(f, Complex(1.0 / n, 0.0));
  return f;
}

inline CheckResult result(const std::string& name, bool ok, double measured, double bound) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "measured %.3e against bound %.3e", measured, bound);
  return CheckResult{name, ok, buf};
}

}  // namespace selftest_detail

/// Every table entry within [-1/3, 2/3] (with 1e-12 slack).
inline CheckResult check_kernel_bounds(const KernelTable& table) {
  double lo = 1e300, hi = -1e300;
  for (double v : table.multiplier) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const bool ok = lo >= -1.0 / 3.0 - 1e-12 && hi <= 2.0 / 3.0 + 1e-12;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "range [%.12f, %.12f]", lo, hi);
  return CheckResult{"kernel_bounds", ok, buf};
}

/// w1 + w2 == vdip(gamma) - vdip(0) on random wavenumbers.
inline CheckResult check_w_split(const DipoleAxis& axis, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-6.0, 6.0);
  std::uniform_real_distribution<double> ug(0.01, 1.0);
  const int d = axis.d();
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    double kx[2], kz[2];
    for (int a = 0; a < 3 - d; ++a) kx[a] = uni(rng);
    for (int a = 0; a < d; ++a)
      do kz[a] = uni(rng);
      while (kz[a] == 0.0);
    const double gamma = ug(rng);
    const auto [w1, w2] = w_split_hat(kx, kz, gamma, axis);
    const double diff = vdip_hat(kx, kz, gamma, axis) - vdip_hat(kx, kz, 0.0, axis);
    worst = std::max(worst, std::abs(w1 + w2 - diff));
  }
  return selftest_detail::result("w_split_identity", worst <= 1e-12, worst, 1e-12);
}

inline CheckResult check_transform_unitarity(const Grid& g, std::uint64_t seed) {
  WaveField f = selftest_detail::random_field(g, seed);
  WaveField hat = transform(f, Direction::Forward);
  WaveField back = transform(hat, Direction::Inverse);
  const double norm_dev = std::abs(norm_l2(hat) - norm_l2(f));
  const double roundtrip = norm_l2_diff(back, f) / norm_l2(f);
  const double worst = std::max(norm_dev, roundtrip);
  return selftest_detail::result("transform_unitarity", worst <= 1e-12, worst, 1e-12);
}

inline CheckResult check_propagator(const Grid& g, std::uint64_t seed) {
  WaveField f = selftest_detail::random_field(g, seed);
  double worst = 0.0;
  // unitarity
  WaveField u = propagate_hz(f, 0.37);
  worst = std::max(worst, std::abs(norm_l2(u) - norm_l2(f)));
  // pointwise 2pi periodicity
  WaveField p = propagate_hz(f, 2.0 * M_PI);
  double dev = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    dev = std::max(dev, std::abs(p.values[i] - f.values[i]));
  worst = std::max(worst, dev);
  // composition
  WaveField one = propagate_hz(propagate_hz(f, 0.4), 0.9);
  WaveField two = propagate_hz(f, 1.3);
  worst = std::max(worst, norm_l2_diff(one, two));
  return selftest_detail::result("hz_propagator", worst <= 1e-10, worst, 1e-10);
}

inline CheckResult check_gauge_invariance(const Grid& g, const ModelParams& p, std::uint64_t seed) {
  WaveField f = selftest_detail::random_field(g, seed);
  QuadraticPhase s(0.2 * Eigen::MatrixXd::Identity(g.x_axes(), g.x_axes()),
                   0.3 * Eigen::VectorXd::Ones(g.x_axes()), 0.1);
  const double alpha = 0.7;
  WaveField fg = apply_phase_gauge(f, s, alpha, +1);
  const ThetaQuadrature quad = ThetaQuadrature::for_grid(g);
  double worst = 0.0;
  {
    WaveField lhs = eval_f(0.8, fg, p);
    WaveField rhs = apply_phase_gauge(eval_f(0.8, f, p), s, alpha, +1);
    worst = std::max(worst, norm_l2_diff(lhs, rhs));
  }
  {
    WaveField lhs = eval_f_av(fg, p, quad);
    WaveField rhs = apply_phase_gauge(eval_f_av(f, p, quad), s, alpha, +1);
    worst = std::max(worst, norm_l2_diff(lhs, rhs));
  }
  return selftest_detail::result("gauge_invariance", worst <= 1e-10, worst, 1e-10);
}

inline CheckResult check_polarization(const Grid& g, const ModelParams& p) {
  std::vector<int> k(g.d(), 0);
  k[0] = std::min(1, g.k_z() - 1);
  InitialData id;
  id.family = "polarized";
  id.k = k;
  id.x_sigma = 1.1;
  WaveField u = build_amplitude(id, g);
  WaveField fav = eval_f_av(u, p, ThetaQuadrature::for_grid(g));
  const double off = offmode_norm(fav, k);
  const double total = norm_l2(fav);
  const double rel = total > 0.0 ? off / total : 0.0;
  return selftest_detail::result("polarization_preserved", rel <= 1e-9, rel, 1e-9);
}

inline CheckResult check_riccati_oracle(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 0.5);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const int dim = 1 + static_cast<int>(trial % 2);
    Eigen::MatrixXd m0(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j <= i; ++j) m0(i, j) = m0(j, i) = normal(rng);
    Eigen::VectorXd b0(dim);
    for (int i = 0; i < dim; ++i) b0(i) = normal(rng);
    QuadraticPhase s0(m0, b0, 0.3);
    const double t = 0.5 * std::min(1.0, s0.t_caustic());
    QuadraticPhase st = s0.evolve(t);
    oracle::RiccatiState ode = oracle::riccati_rk4(m0, b0, 0.3, t, 4000);
    worst = std::max(worst, (st.M() - ode.m).cwiseAbs().maxCoeff());
    worst = std::max(worst, (st.b() - ode.b).cwiseAbs().maxCoeff());
    worst = std::max(worst, std::abs(st.c() - ode.c));
  }
  const double caustic_dev = std::abs(QuadraticPhase::zero(2).t_caustic() - M_PI / 2.0);
  worst = std::max(worst, caustic_dev);
  return selftest_detail::result("riccati_oracle", worst <= 1e-9, worst, 1e-9);
}

inline CheckResult check_convolution_bruteforce(const ModelParams& p, std::uint64_t seed) {
  Grid g = Grid::make(p.d, 4.0, 8, 4.0, 8, 4);
  WaveField f = selftest_detail::random_field(g, seed);
  WaveField dens = WaveField::zeros(g);
  for (std::size_t i = 0; i < f.values.size(); ++i)
    dens.values[i] = Complex(std::norm(f.values[i]), 0.0);
  auto table = kernel_table(g, p.gamma, p.axis);
  WaveField spectral = apply_convolution(dens, *table);
  WaveField direct = oracle::direct_convolution(dens, *table);
  const double dev = norm_l2_diff(spectral, direct) / std::max(1e-300, norm_l2(dens));
  return selftest_detail::result("convolution_bruteforce", dev <= 1e-8, dev, 1e-8);
}

/// F_av must be node-count independent once the quadrature is admissible.
inline CheckResult check_quadrature_doubling(const Grid& g, const ModelParams& p, int n_nodes,
                                             std::uint64_t seed) {
  WaveField f = selftest_detail::random_field(g, seed);
  ThetaQuadrature q1{n_nodes};
  ThetaQuadrature q2{2 * n_nodes};
  WaveField a = eval_f_av(f, p, q1);
  WaveField b = eval_f_av(f, p, q2);
  const double dev = norm_l2_diff(a, b) / std::max(1e-300, norm_l2(b));
  return selftest_detail::result("quadrature_doubling", dev <= 1e-11, dev, 1e-11);
}

/// Bundled invariant checks on small grids; nonzero exit is the caller's job.
inline SelftestReport selftest() {
  SelftestReport report;
  DipoleAxis axis1 = DipoleAxis::make({std::sin(0.3), 0.0}, {std::cos(0.3)});
  DipoleAxis axis2 = DipoleAxis::make({std::sin(0.4)}, {std::cos(0.4), 0.0});
  ModelParams p1{1, 1, 0.5, axis1, 0.5, 0.5, 0.25};
  ModelParams p2{2, -1, 0.4, axis2, 0.5, 0.5, 0.25};

  Grid g1 = Grid::make(1, 8.0, 16, 8.0, 16, 6);
  Grid g2 = Grid::make(2, 8.0, 16, 6.0, 16, 4);

  for (double gamma : {0.0, 0.1, 0.5, 1.0}) {
    auto t = kernel_table(g1, gamma, axis1);
    CheckResult c = check_kernel_bounds(*t);
    c.name += "_g" + std::to_string(gamma).substr(0, 4);
    report.checks.push_back(c);
  }
  report.checks.push_back(check_w_split(axis1, 11));
  report.checks.push_back(check_w_split(axis2, 12));
  report.checks.push_back(check_transform_unitarity(g1, 21));
  report.checks.push_back(check_transform_unitarity(g2, 22));
  report.checks.push_back(check_propagator(g1, 31));
  report.checks.push_back(check_propagator(g2, 32));
  report.checks.push_back(check_gauge_invariance(g1, p1, 41));
  report.checks.push_back(check_gauge_invariance(g2, p2, 42));
  report.checks.push_back(check_polarization(g1, p1));
  report.checks.push_back(check_polarization(g2, p2));
  report.checks.push_back(check_riccati_oracle(51));
  report.checks.push_back(check_convolution_bruteforce(p1, 61));
  report.checks.push_back(check_convolution_bruteforce(p2, 62));
  report.checks.push_back(check_quadrature_doubling(g1, p1, ThetaQuadrature::min_nodes(g1.k_z()), 71));
  return report;
}

}  // namespace dgpe
