#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "dgpe/dgpe.hpp"

namespace dgpe::tsupport {

/// Smooth random field with Gaussian-decaying Fourier content, unit mass.
inline WaveField random_field(const Grid& g, std::uint64_t seed, double band_frac = 1.0 / 3.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  WaveField hat = WaveField::zeros(g);
  hat.rep = Representation::Fourier;
  const double kx_ref = M_PI * g.n_x() / (2.0 * g.x_half_width()) * band_frac;
  const double kz_ref = M_PI * g.n_z() / (2.0 * g.z_half_width()) * band_frac;
  detail::for_each_wavenumber(g, [&](std::size_t idx, const double* kx, const double* kz) {
    double decay = 0.0;
    for (int a = 0; a < 3 - g.d(); ++a) decay += kx[a] * kx[a] / (kx_ref * kx_ref);
    for (int a = 0; a < g.d(); ++a) decay += kz[a] * kz[a] / (kz_ref * kz_ref);
    hat.values[idx] = std::exp(-decay) * Complex(normal(rng), normal(rng));
  });
  WaveField f = transform(hat, Direction::Inverse);
  scale(f, Complex(1.0 / norm_l2(f), 0.0));
  return f;
}

/// Field sampled from a closed-form function f(x[3-d], z[d]).
inline WaveField sampled_field(const Grid& g,
                               const std::function<Complex(const double*, const double*)>& fn,
                               Frame frame = Frame::Lab) {
  WaveField out = WaveField::zeros(g, frame);
  detail::for_each_point(g, [&](std::size_t idx, const double* x, const double* z) {
    out.values[idx] = fn(x, z);
  });
  return out;
}

/// Independent 1D quadrature on [-lim, lim]; trapezoid at fine resolution is
/// spectrally accurate for smooth decaying integrands.
inline double quad_1d(const std::function<double(double)>& f, double lim = 14.0, int n = 40000) {
  const double h = 2.0 * lim / n;
  double s = 0.5 * (f(-lim) + f(lim));
  for (int i = 1; i < n; ++i) s += f(-lim + i * h);
  return s * h;
}

inline double max_pointwise_diff(const WaveField& a, const WaveField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

}  // namespace dgpe::tsupport
