#include <gtest/gtest.h>

#include "unit/test_support.hpp"

using namespace dgpe;

namespace {
const DipoleAxis kAxis1 = DipoleAxis::make({std::sin(0.3), 0.0}, {std::cos(0.3)});
const DipoleAxis kAxis2 = DipoleAxis::make({std::sin(0.4)}, {std::cos(0.4) * 0.6, std::cos(0.4) * 0.8});
}  // namespace

TEST(UdipHat, ExtremalDirections) {
  // k parallel to n -> 2/3, k perpendicular -> -1/3
  const DipoleAxis axis = DipoleAxis::make({0.6, 0.0}, {0.8});
  const double k_par[3] = {1.2, 0.0, 1.6};
  EXPECT_NEAR(udip_hat(k_par, axis), 2.0 / 3.0, 1e-14);
  const double k_perp[3] = {-0.8, 0.0, 0.6};
  EXPECT_NEAR(udip_hat(k_perp, axis), -1.0 / 3.0, 1e-14);
  // (k.n)^2/|k|^2 = 1/3 -> 0
  const double c = std::sqrt(1.0 / 3.0);
  const double k_mid[3] = {c * 0.6 - 0.8 * std::sqrt(2.0 / 3.0), 0.0,
                           c * 0.8 + 0.6 * std::sqrt(2.0 / 3.0)};
  EXPECT_NEAR(udip_hat(k_mid, axis), 0.0, 1e-14);
  const double k0[3] = {0.0, 0.0, 0.0};
  EXPECT_THROW(udip_hat(k0, axis), PreconditionError);
}

TEST(VdipHat, GammaOneMatchesUdip) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uni(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    double kx[2] = {uni(rng), uni(rng)};
    double kz[1] = {uni(rng)};
    if (kx[0] == 0 && kx[1] == 0 && kz[0] == 0) continue;
    const double k[3] = {kx[0], kx[1], kz[0]};
    EXPECT_NEAR(vdip_hat(kx, kz, 1.0, kAxis1), udip_hat(k, kAxis1), 1e-14);
  }
}

TEST(VdipHat, GammaZeroIndependentOfKx) {
  double kz[1] = {0.7};
  double kx_a[2] = {1.0, -2.0};
  double kx_b[2] = {5.0, 3.0};
  EXPECT_DOUBLE_EQ(vdip_hat(kx_a, kz, 0.0, kAxis1), vdip_hat(kx_b, kz, 0.0, kAxis1));
  const double nz = kAxis1.n_z[0];
  EXPECT_NEAR(vdip_hat(kx_a, kz, 0.0, kAxis1), -1.0 / 3.0 + nz * nz, 1e-14);
}

TEST(VdipHat, VanishingNumeratorGivesMinusThird) {
  // n_x = 0 axis, k_z orthogonal to n_z (d=2)
  const DipoleAxis axis = DipoleAxis::make({0.0}, {1.0, 0.0});
  double kx[1] = {2.0};
  double kz[2] = {0.0, 1.5};
  EXPECT_NEAR(vdip_hat(kx, kz, 0.5, axis), -1.0 / 3.0, 1e-14);
}

TEST(VdipHat, DegenerateConventions) {
  double kx0[2] = {0.0, 0.0};
  double kz0[1] = {0.0};
  EXPECT_DOUBLE_EQ(vdip_hat(kx0, kz0, 0.5, kAxis1), 0.0);  // true origin, gamma > 0
  double kx[2] = {1.0, 2.0};
  const double nz2 = kAxis1.nz_norm_sq();
  EXPECT_DOUBLE_EQ(vdip_hat(kx, kz0, 0.0, kAxis1), -1.0 / 3.0 + nz2);      // gamma=0 line
  EXPECT_DOUBLE_EQ(vdip_hat(kx0, kz0, 0.0, kAxis1), -1.0 / 3.0 + nz2);     // gamma=0 origin
  // gamma > 0 with k_z = 0 but k_x != 0 is a regular point
  const double kn = kx[0] * kAxis1.n_x[0] + kx[1] * kAxis1.n_x[1];
  const double kk = kx[0] * kx[0] + kx[1] * kx[1];
  EXPECT_NEAR(vdip_hat(kx, kz0, 0.5, kAxis1), -1.0 / 3.0 + kn * kn / kk, 1e-14);
}

TEST(KernelTable, BoundsAndEvenness) {
  for (int d : {1, 2}) {
    const DipoleAxis& axis = d == 1 ? kAxis1 : kAxis2;
    Grid g = Grid::make(d, 8.0, 16, 8.0, 16, 6);
    for (double gamma : {0.0, 0.1, 0.5, 1.0}) {
      auto table = kernel_table(g, gamma, axis);
      for (double v : table->multiplier) {
        EXPECT_GE(v, -1.0 / 3.0 - 1e-12);
        EXPECT_LE(v, 2.0 / 3.0 + 1e-12);
      }
    }
    // evenness on interior modes
    auto table = kernel_table(g, 0.37, axis);
    const int nx = g.n_x(), nz = g.n_z();
    auto flat = [&](int a, int b, int c) {
      return (static_cast<std::size_t>(a) * (d == 1 ? nx : nz) + b) * nz + c;
    };
    for (int a = 1; a < (d == 1 ? nx : nx); ++a)
      for (int b = 1; b < (d == 1 ? nx : nz); ++b)
        for (int c = 1; c < nz; ++c) {
          const double v1 = table->multiplier[flat(a, b, c)];
          const double v2 =
              table->multiplier[flat((d == 1 ? nx : nx) - a, (d == 1 ? nx : nz) - b, nz - c)];
          ASSERT_DOUBLE_EQ(v1, v2);
        }
  }
}

TEST(WSplit, IdentityAndSpecialCases) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(-4.0, 4.0);
  for (int trial = 0; trial < 100; ++trial) {
    double kx[2] = {uni(rng), uni(rng)};
    double kz[1] = {0.0};
    while (kz[0] == 0.0) kz[0] = uni(rng);
    const double gamma = 0.01 + 0.99 * std::abs(uni(rng)) / 4.0;
    const auto [w1, w2] = w_split_hat(kx, kz, gamma, kAxis1);
    const double diff = vdip_hat(kx, kz, gamma, kAxis1) - vdip_hat(kx, kz, 0.0, kAxis1);
    EXPECT_NEAR(w1 + w2, diff, 1e-12);
  }
  // k_x = 0 -> both vanish
  double kx0[2] = {0.0, 0.0};
  double kz[1] = {1.3};
  const auto [w1, w2] = w_split_hat(kx0, kz, 0.4, kAxis1);
  EXPECT_DOUBLE_EQ(w1, 0.0);
  EXPECT_DOUBLE_EQ(w2, 0.0);
  // axis fully transversal -> w2 = 0 for all wavenumbers
  const DipoleAxis transversal = DipoleAxis::make({0.0, 0.0}, {1.0});
  double kx[2] = {1.0, -0.5};
  const auto [w1t, w2t] = w_split_hat(kx, kz, 0.6, transversal);
  EXPECT_DOUBLE_EQ(w2t, 0.0);
  EXPECT_NE(w1t, 0.0);
  double kz_zero[1] = {0.0};
  EXPECT_THROW(w_split_hat(kx, kz_zero, 0.4, kAxis1), PreconditionError);
}

TEST(Convolution, ZeroFieldAndLinearity) {
  Grid g = Grid::make(1, 6.0, 8, 6.0, 8, 4);
  auto table = kernel_table(g, 0.5, kAxis1);
  WaveField zero = WaveField::zeros(g);
  WaveField out = apply_convolution(zero, *table);
  EXPECT_LT(norm_l2(out), 1e-15);
}

// gamma = 0 on z-even densities: pointwise multiple of the density. At
// n_z = 0 the multiplier is the constant -1/3 for both d; for d = 1 and a
// general axis the constant is -1/3 + n_z^2.
TEST(Convolution, GammaZeroLocalLaw) {
  for (int d : {1, 2}) {
    std::vector<double> nx(3 - d, 0.0);
    nx[0] = d == 1 ? 0.6 : 1.0;
    if (d == 1) nx[1] = 0.8;
    const DipoleAxis axis = DipoleAxis::make(nx, std::vector<double>(d, 0.0));
    Grid g = Grid::make(d, 6.0, 8, 6.0, 16, 4);
    auto table = kernel_table(g, 0.0, axis);
    for (int trial = 0; trial < 5; ++trial) {
      // random z-even density: random smooth field mirrored in each z axis
      WaveField f = tsupport::random_field(g, 100 + trial);
      WaveField dens = WaveField::zeros(g);
      const int nz = g.n_z();
      detail::for_each_point(g, [&](std::size_t idx, const double*, const double*) {
        dens.values[idx] = Complex(std::norm(f.values[idx]), 0.0);
      });
      // symmetrize in z
      WaveField sym = dens;
      const std::size_t zp = g.z_points();
      for (std::size_t x = 0; x < g.x_points(); ++x)
        for (std::size_t z = 0; z < zp; ++z) {
          std::size_t zm;
          if (d == 1) {
            zm = (nz - z % nz) % nz;
          } else {
            const std::size_t z1 = z / nz, z2 = z % nz;
            zm = ((nz - z1) % nz) * nz + (nz - z2) % nz;
          }
          sym.values[x * zp + z] =
              0.5 * (dens.values[x * zp + z] + dens.values[x * zp + zm]);
        }
      WaveField out = apply_convolution(sym, *table);
      const double c = (axis.nz_norm_sq() - d) / (3.0 * d);  // = -1/3 at n_z = 0
      WaveField expected = sym;
      scale(expected, Complex(c, 0.0));
      EXPECT_LT(tsupport::max_pointwise_diff(out, expected), 1e-8) << "d=" << d;
    }
  }
  // d = 1 with a tilted axis: constant is -1/3 + n_z^2
  Grid g = Grid::make(1, 6.0, 8, 6.0, 16, 4);
  auto table = kernel_table(g, 0.0, kAxis1);
  WaveField dens = tsupport::sampled_field(g, [](const double* x, const double* z) {
    return Complex(std::exp(-(x[0] * x[0] + x[1] * x[1] + z[0] * z[0]) / 2.0), 0.0);
  });
  WaveField out = apply_convolution(dens, *table);
  const double c = -1.0 / 3.0 + kAxis1.nz_norm_sq();
  WaveField expected = dens;
  scale(expected, Complex(c, 0.0));
  EXPECT_LT(tsupport::max_pointwise_diff(out, expected), 1e-10);
}

TEST(Convolution, ContractionAndReality) {
  Grid g = Grid::make(2, 6.0, 8, 6.0, 8, 4);
  auto table = kernel_table(g, 0.45, kAxis2);
  for (int trial = 0; trial < 100; ++trial) {
    WaveField f = tsupport::random_field(g, 500 + trial);
    WaveField dens = WaveField::zeros(g);
    for (std::size_t i = 0; i < f.values.size(); ++i)
      dens.values[i] = Complex(std::norm(f.values[i]), 0.0);
    WaveField out = apply_convolution(dens, *table);
    EXPECT_LE(norm_l2(out), (2.0 / 3.0) * norm_l2(dens) * (1.0 + 1e-12));
    double imag = 0.0;
    for (const Complex& v : out.values) imag += v.imag() * v.imag();
    EXPECT_LE(std::sqrt(imag * g.cell_volume()), 1e-11 * norm_l2(dens));
  }
  WaveField complex_dens = tsupport::random_field(g, 999);
  EXPECT_THROW(apply_convolution(complex_dens, *table), PreconditionError);
}

TEST(Convolution, BruteForceOracle) {
  for (int d : {1, 2}) {
    const DipoleAxis& axis = d == 1 ? kAxis1 : kAxis2;
    Grid g = Grid::make(d, 4.0, 8, 4.0, 8, 4);
    auto table = kernel_table(g, 0.35, axis);
    WaveField f = tsupport::random_field(g, 600 + d);
    WaveField dens = WaveField::zeros(g);
    for (std::size_t i = 0; i < f.values.size(); ++i)
      dens.values[i] = Complex(std::norm(f.values[i]), 0.0);
    WaveField spectral = apply_convolution(dens, *table);
    WaveField direct = oracle::direct_convolution(dens, *table);
    EXPECT_LT(norm_l2_diff(spectral, direct), 1e-8 * norm_l2(dens)) << "d=" << d;
  }
}

TEST(Convolution, PointwiseKernelLimit) {
  // |vdip(gamma) - vdip(0)| decreases monotonically on a log-spaced ladder
  double kx[2] = {2.0, -1.0};
  double kz[1] = {0.9};
  double prev = 1e300;
  for (double gamma : {0.4, 0.2, 0.1, 0.05, 0.025, 0.0125}) {
    const double dev = std::abs(vdip_hat(kx, kz, gamma, kAxis1) - vdip_hat(kx, kz, 0.0, kAxis1));
    EXPECT_LT(dev, prev);
    prev = dev;
  }
  EXPECT_LT(prev, 1e-3);
}

TEST(KernelTable, CacheReturnsSameInstance) {
  Grid g = Grid::make(1, 6.0, 8, 6.0, 8, 4);
  auto a = kernel_table(g, 0.3, kAxis1);
  auto b = kernel_table(g, 0.3, kAxis1);
  EXPECT_EQ(a.get(), b.get());
  auto c = kernel_table(g, 0.31, kAxis1);
  EXPECT_NE(a.get(), c.get());
}
