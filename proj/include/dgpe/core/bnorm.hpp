#pragma once

#include <cmath>
#include <vector>

#include "dgpe/core/wavefield.hpp"

namespace dgpe {

// Discrete norm of the oscillator-adapted Sobolev scale: for m >= 1,
//   ||u||_{B^m}^2 = sum_{|kappa|<=m} ||d^kappa u||_{L2}^2 + || |x|^m u ||_{L2}^2
// with spectral derivatives; m = 0 is the plain L2 norm.
inline double discrete_b_norm(const WaveField& f, int m) {
  if (m < 0 || m > 3) throw PreconditionError("discrete_b_norm: m must be in 0..3");
  if (f.rep != Representation::Physical)
    throw PreconditionError("discrete_b_norm: field must be Physical");
  if (m == 0) return norm_l2(f);

  WaveField hat = transform(f, Direction::Forward);
  double deriv_sq = 0.0;
  detail::for_each_wavenumber(f.grid, [&](std::size_t idx, const double* kx, const double* kz) {
    const double k2[3] = {kx[0] * kx[0],
                          f.grid.d() == 1 ? kx[1] * kx[1] : kz[0] * kz[0],
                          f.grid.d() == 1 ? kz[0] * kz[0] : kz[1] * kz[1]};
    double w = 0.0;
    for (int a = 0; a <= m; ++a)
      for (int b = 0; a + b <= m; ++b)
        for (int c = 0; a + b + c <= m; ++c)
          w += std::pow(k2[0], a) * std::pow(k2[1], b) * std::pow(k2[2], c);
    deriv_sq += w * std::norm(hat.values[idx]);
  });
  deriv_sq *= f.grid.cell_volume();

  double moment_sq = 0.0;
  detail::for_each_point(f.grid, [&](std::size_t idx, const double* x, const double* z) {
    double r2 = z[f.grid.d() - 1] * z[f.grid.d() - 1];
    r2 += x[0] * x[0];
    r2 += f.grid.d() == 1 ? x[1] * x[1] : z[0] * z[0];
    moment_sq += std::pow(r2, m) * std::norm(f.values[idx]);
  });
  moment_sq *= f.grid.cell_volume();

  return std::sqrt(deriv_sq + moment_sq);
}

}  // namespace dgpe
