#include <gtest/gtest.h>

#include "unit/test_support.hpp"

using namespace dgpe;

TEST(Hermite, DiscreteOrthonormality) {
  for (auto [n, k] : {std::pair{32, 8}, std::pair{64, 12}}) {
    Grid g = Grid::make(1, 8.0, 16, 8.0, n, k);
    const auto& basis = g.hermite();
    const Eigen::MatrixXd gram =
        g.z_spacing() * (basis.synthesis().transpose() * basis.synthesis());
    const double dev = (gram - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff();
    EXPECT_LT(dev, 1e-10) << "n=" << n << " K=" << k;
  }
}

TEST(Hermite, GroundStateMatchesClosedForm) {
  Grid g = Grid::make(1, 8.0, 16, 8.0, 32, 8);
  const auto& zc = g.z_coords();
  Eigen::VectorXd w0 = g.hermite().mode(0);
  double worst = 0.0;
  for (int i = 0; i < g.n_z(); ++i) {
    const double exact = std::pow(M_PI, -0.25) * std::exp(-zc[i] * zc[i] / 2.0);
    worst = std::max(worst, std::abs(w0(i) - exact));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Hermite, RoundTripOnSpan) {
  for (int d : {1, 2}) {
    Grid g = Grid::make(d, 8.0, 8, 8.0, 32, 6);
    // random in-span field
    std::mt19937_64 rng(5);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Complex> coeffs(g.x_points() * (d == 1 ? g.k_z() : g.k_z() * g.k_z()));
    for (Complex& c : coeffs) c = Complex(normal(rng), normal(rng));
    WaveField f = hermite_synthesize(g, coeffs);
    std::vector<Complex> back = hermite_analyze(f);
    double dev = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      dev = std::max(dev, std::abs(back[i] - coeffs[i]));
    EXPECT_LT(dev, 1e-10) << "d=" << d;
  }
}

TEST(Propagator, EigenphasesAllModes) {
  Grid g = Grid::make(1, 8.0, 8, 8.0, 64, 12);
  std::vector<Complex> a(g.x_points(), Complex(1.0, 0.5));
  const double theta = 0.731;
  for (int k = 0; k < g.k_z(); ++k) {
    WaveField f = embed_polarized(g, a, {k});
    WaveField out = propagate_hz(f, theta);
    WaveField expected = f;
    scale(expected, std::polar(1.0, -theta * k));
    EXPECT_LT(norm_l2_diff(out, expected), 1e-10) << "k=" << k;
  }
}

TEST(Propagator, TwoPiIdentityPointwise) {
  for (int d : {1, 2}) {
    Grid g = Grid::make(d, 8.0, 8, 8.0, 16, 6);
    WaveField f = tsupport::random_field(g, 17 + d);
    WaveField p = propagate_hz(f, 2.0 * M_PI);
    EXPECT_LT(tsupport::max_pointwise_diff(p, f), 1e-12) << "d=" << d;
    // theta + 2pi equals theta
    WaveField a = propagate_hz(f, 0.9);
    WaveField b = propagate_hz(f, 0.9 + 2.0 * M_PI);
    EXPECT_LT(tsupport::max_pointwise_diff(a, b), 1e-12) << "d=" << d;
  }
}

TEST(Propagator, ModeOneHalfPeriodFlips) {
  Grid g = Grid::make(1, 8.0, 8, 8.0, 32, 6);
  std::vector<Complex> a(g.x_points());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = Complex(0.3 + 0.01 * i, -0.2);
  WaveField f = embed_polarized(g, a, {1});
  WaveField out = propagate_hz(f, M_PI);
  WaveField expected = f;
  scale(expected, Complex(-1.0, 0.0));
  EXPECT_LT(norm_l2_diff(out, expected), 1e-12);
}

TEST(Propagator, UnitarityAndComposition) {
  Grid g = Grid::make(2, 6.0, 8, 6.0, 16, 5);
  WaveField f = tsupport::random_field(g, 23);
  WaveField u = propagate_hz(f, 0.37);
  EXPECT_NEAR(norm_l2(u), norm_l2(f), 1e-12);
  WaveField once = propagate_hz(f, 1.17);
  WaveField twice = propagate_hz(propagate_hz(f, 0.8), 0.37);
  EXPECT_LT(norm_l2_diff(once, twice), 1e-10);
}

TEST(Propagator, RequiresPhysicalRepresentation) {
  Grid g = Grid::make(1, 8.0, 8, 8.0, 16, 4);
  WaveField hat = transform(tsupport::random_field(g, 2), Direction::Forward);
  EXPECT_THROW(propagate_hz(hat, 0.5), PreconditionError);
}

TEST(Propagator, TruncationLeakageDetectsUnresolvedContent) {
  Grid g = Grid::make(1, 8.0, 8, 8.0, 32, 4);
  // resolved: ground-state profile
  WaveField resolved = tsupport::sampled_field(g, [](const double*, const double* z) {
    return Complex(std::exp(-z[0] * z[0] / 2.0), 0.0);
  });
  EXPECT_LT(truncation_leakage(resolved), 1e-12);
  // unresolved: narrow z profile spreads over many modes
  WaveField narrow = tsupport::sampled_field(g, [](const double*, const double* z) {
    return Complex(std::exp(-z[0] * z[0] / (2.0 * 0.16)), 0.0);
  });
  EXPECT_GT(truncation_leakage(narrow), 1e-8);
}
