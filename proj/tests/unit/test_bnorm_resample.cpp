#include <gtest/gtest.h>

#include "unit/test_support.hpp"

using namespace dgpe;

TEST(BNorm, MZeroIsL2) {
  Grid g = Grid::make(1, 8.0, 16, 8.0, 16, 6);
  WaveField f = tsupport::random_field(g, 31);
  EXPECT_NEAR(discrete_b_norm(f, 0), 1.0, 1e-12);
  EXPECT_NEAR(discrete_b_norm(f, 0), norm_l2(f), 1e-14);
}

// Gaussian m=1 value from analytic 1D Gaussian integrals composed across
// dimensions, checked against an independent quadrature oracle.
TEST(BNorm, GaussianAgainstQuadratureOracle) {
  Grid g = Grid::make(1, 8.0, 32, 8.0, 32, 8);
  WaveField f = tsupport::sampled_field(g, [](const double* x, const double* z) {
    return Complex(std::exp(-(x[0] * x[0] + x[1] * x[1] + z[0] * z[0]) / 2.0), 0.0);
  });
  // 1D building blocks for u = exp(-r^2/2) in 3 dimensions
  const double i0 = tsupport::quad_1d([](double t) { return std::exp(-t * t); });
  const double i2 = tsupport::quad_1d([](double t) { return t * t * std::exp(-t * t); });
  // ||u||^2 = i0^3, ||du/dx_i||^2 = i2 i0^2 per axis, || |x| u ||^2 = 3 i2 i0^2
  const double expected = std::sqrt(i0 * i0 * i0 + 3.0 * i2 * i0 * i0 + 3.0 * i2 * i0 * i0);
  EXPECT_NEAR(discrete_b_norm(f, 1), expected, 1e-8);
}

TEST(BNorm, MonotoneAndHomogeneous) {
  Grid g = Grid::make(2, 6.0, 16, 6.0, 16, 5);
  WaveField f = tsupport::random_field(g, 37);
  double prev = 0.0;
  for (int m = 0; m <= 3; ++m) {
    const double v = discrete_b_norm(f, m);
    EXPECT_GE(v, prev);
    prev = v;
  }
  WaveField scaled = f;
  scale(scaled, Complex(0.0, -2.5));
  EXPECT_NEAR(discrete_b_norm(scaled, 2), 2.5 * discrete_b_norm(f, 2), 1e-10);
  EXPECT_THROW(discrete_b_norm(f, 4), PreconditionError);
}

TEST(Resample, IdentityMapExact) {
  Grid g = Grid::make(1, 8.0, 16, 8.0, 8, 4);
  WaveField f = tsupport::random_field(g, 41);
  WaveField out = resample_affine(f, Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2));
  EXPECT_LT(tsupport::max_pointwise_diff(out, f), 1e-12);
}

TEST(Resample, UnitShiftIsCircular) {
  Grid g = Grid::make(2, 8.0, 16, 8.0, 8, 4);
  WaveField f = tsupport::random_field(g, 43);
  Eigen::VectorXd shift(1);
  shift(0) = g.x_spacing();
  WaveField out = resample_affine(f, Eigen::MatrixXd::Identity(1, 1), shift);
  // out(x_j) = f(x_{j+1}) circularly
  const std::size_t zp = g.z_points();
  double dev = 0.0;
  for (int j = 0; j < g.n_x(); ++j) {
    const int src = (j + 1) % g.n_x();
    for (std::size_t z = 0; z < zp; ++z)
      dev = std::max(dev, std::abs(out.values[j * zp + z] - f.values[src * zp + z]));
  }
  EXPECT_LT(dev, 1e-11);
}

TEST(Resample, HalfScaleGaussianClosedForm) {
  Grid g = Grid::make(1, 8.0, 32, 8.0, 8, 4);
  auto gauss = [](const double* x, const double* z) {
    return Complex(std::exp(-(x[0] * x[0] + x[1] * x[1]) / 2.0 - z[0] * z[0] / 2.0), 0.0);
  };
  WaveField f = tsupport::sampled_field(g, gauss);
  Eigen::MatrixXd lin = 0.5 * Eigen::MatrixXd::Identity(2, 2);
  WaveField out = resample_affine(f, lin, Eigen::VectorXd::Zero(2));
  WaveField expected = tsupport::sampled_field(g, [&](const double* x, const double* z) {
    const double y[2] = {0.5 * x[0], 0.5 * x[1]};
    return gauss(y, z);
  });
  EXPECT_LT(tsupport::max_pointwise_diff(out, expected), 1e-8);
}

TEST(Resample, GeneralLinearMapAgainstDirectEvaluation) {
  Grid g = Grid::make(1, 8.0, 16, 8.0, 8, 4);
  auto gauss = [](const double* x, const double* z) {
    return Complex(std::exp(-(x[0] * x[0] + x[1] * x[1]) / 2.0 - z[0] * z[0] / 2.0), 0.0);
  };
  WaveField f = tsupport::sampled_field(g, gauss);
  Eigen::MatrixXd lin(2, 2);
  lin << 0.8, 0.15, -0.1, 0.75;  // non-diagonal, contracting
  Eigen::VectorXd shift(2);
  shift << 0.2, -0.3;
  WaveField out = resample_affine(f, lin, shift);
  WaveField expected = tsupport::sampled_field(g, [&](const double* x, const double* z) {
    const double y[2] = {lin(0, 0) * x[0] + lin(0, 1) * x[1] + shift(0),
                         lin(1, 0) * x[0] + lin(1, 1) * x[1] + shift(1)};
    return gauss(y, z);
  });
  EXPECT_LT(tsupport::max_pointwise_diff(out, expected), 1e-7);
}

TEST(Resample, RejectsSingularAndBoundaryHeavyMaps) {
  Grid g = Grid::make(2, 4.0, 16, 4.0, 8, 4);
  // broad field: significant boundary mass
  WaveField broad = tsupport::sampled_field(g, [](const double* x, const double* z) {
    return Complex(std::exp(-(x[0] * x[0] + z[0] * z[0] + z[1] * z[1]) / 32.0), 0.0);
  });
  EXPECT_THROW(
      resample_affine(broad, Eigen::MatrixXd::Zero(1, 1), Eigen::VectorXd::Zero(1)),
      PreconditionError);
  Eigen::VectorXd shift(1);
  shift(0) = 2.0;  // pushes targets outside the box
  EXPECT_THROW(resample_affine(broad, Eigen::MatrixXd::Identity(1, 1), shift),
               PreconditionError);
  // decaying field: same shift is fine (wrap hits only vacuum)
  WaveField tight = tsupport::sampled_field(g, [](const double* x, const double* z) {
    return Complex(std::exp(-2.0 * (x[0] * x[0] + z[0] * z[0] + z[1] * z[1])), 0.0);
  });
  EXPECT_NO_THROW(resample_affine(tight, Eigen::MatrixXd::Identity(1, 1), shift));
}
