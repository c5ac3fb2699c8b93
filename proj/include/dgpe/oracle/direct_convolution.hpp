#pragma once

#include <vector>

#include "dgpe/model/kernel.hpp"

namespace dgpe::oracle {

// Brute-force O(N^2) evaluation of the multiplier-defined convolution:
//   out(x_i) = (1/N) sum_k m(k) [ sum_j u(x_j) e^{-i k.x_j} ] e^{+i k.x_i}.
// Same object the spectral path computes, with explicit Fourier sums instead
// of FFTs. Only usable on tiny grids.
inline WaveField direct_convolution(const WaveField& density, const KernelTable& table) {
  const Grid& g = density.grid;
  const std::size_t n = g.total_points();

  std::vector<std::array<double, 3>> coords(n), kvecs(n);
  detail::for_each_point(g, [&](std::size_t idx, const double* x, const double* z) {
    coords[idx] = {x[0], g.d() == 1 ? x[1] : z[0], z[g.d() - 1]};
  });
  detail::for_each_wavenumber(g, [&](std::size_t idx, const double* kx, const double* kz) {
    kvecs[idx] = {kx[0], g.d() == 1 ? kx[1] : kz[0], kz[g.d() - 1]};
  });

  std::vector<Complex> hat(n, Complex(0.0, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double phase = kvecs[k][0] * coords[j][0] + kvecs[k][1] * coords[j][1] +
                           kvecs[k][2] * coords[j][2];
      acc += density.values[j] * std::polar(1.0, -phase);
    }
    hat[k] = acc * table.multiplier[k];
  }
  WaveField out = WaveField::zeros(g, density.frame);
  for (std::size_t i = 0; i < n; ++i) {
    Complex acc(0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      const double phase = kvecs[k][0] * coords[i][0] + kvecs[k][1] * coords[i][1] +
                           kvecs[k][2] * coords[i][2];
      acc += hat[k] * std::polar(1.0, phase);
    }
    out.values[i] = acc / static_cast<double>(n);
  }
  return out;
}

}  // namespace dgpe::oracle
