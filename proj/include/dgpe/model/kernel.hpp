#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <vector>

#include "dgpe/core/wavefield.hpp"
#include "dgpe/model/params.hpp"

namespace dgpe {

// Fourier multipliers of the dipole-dipole interaction.
//
// Degenerate wavenumbers (where the anisotropy ratio has no limit) take the
// angular average of the multiplier over the vanishing directions: 0 at the
// true origin, -1/3 + |n_z|^2/d on the gamma = 0 line k_z = 0. For d = 1 the
// k_z = 0 singularity of the gamma = 0 multiplier is removable and the
// average coincides with the removable value.

/// U_dip_hat(k) = -1/3 + (k.n)^2 / |k|^2 for k != 0.
inline double udip_hat(const double k[3], const DipoleAxis& axis) {
  const int d = axis.d();
  double kn = 0.0, kk = 0.0;
  for (int a = 0; a < 3 - d; ++a) kn += k[a] * axis.n_x[a];
  for (int a = 0; a < d; ++a) kn += k[3 - d + a] * axis.n_z[a];
  for (int a = 0; a < 3; ++a) kk += k[a] * k[a];
  if (kk == 0.0) throw PreconditionError("udip_hat: k = 0 needs the zero-mode convention");
  return -1.0 / 3.0 + kn * kn / kk;
}

/// V_dip^gamma_hat(k_x, k_z) = -1/3 + (gamma k_x.n_x + k_z.n_z)^2 /
/// (|gamma k_x|^2 + |k_z|^2), with the degenerate-set convention above.
inline double vdip_hat(const double* kx, const double* kz, double gamma,
                       const DipoleAxis& axis) {
  const int d = axis.d();
  double a = 0.0, b = 0.0, gkx2 = 0.0, kz2 = 0.0;
  for (int i = 0; i < 3 - d; ++i) {
    a += kx[i] * axis.n_x[i];
    gkx2 += gamma * kx[i] * gamma * kx[i];
  }
  for (int i = 0; i < d; ++i) {
    b += kz[i] * axis.n_z[i];
    kz2 += kz[i] * kz[i];
  }
  const double denom = gkx2 + kz2;
  if (denom == 0.0) {
    // gamma = 0 acts in z only, so the whole k_z = 0 line (origin included)
    // carries the z-angular average; for gamma > 0 the origin averages to 0.
    if (gamma == 0.0) return -1.0 / 3.0 + axis.nz_norm_sq() / d;
    return 0.0;
  }
  const double num = gamma * a + b;
  return -1.0 / 3.0 + num * num / denom;
}

/// W1/W2 split of V^gamma - V^0 (requires k_z != 0).
inline std::pair<double, double> w_split_hat(const double* kx, const double* kz,
                                             double gamma, const DipoleAxis& axis) {
  const int d = axis.d();
  double a = 0.0, b = 0.0, gkx2 = 0.0, kz2 = 0.0;
  for (int i = 0; i < 3 - d; ++i) {
    a += kx[i] * axis.n_x[i];
    gkx2 += gamma * kx[i] * gamma * kx[i];
  }
  for (int i = 0; i < d; ++i) {
    b += kz[i] * axis.n_z[i];
    kz2 += kz[i] * kz[i];
  }
  if (kz2 == 0.0 || gkx2 + kz2 == 0.0)
    throw PreconditionError("w_split_hat: degenerate wavenumber");
  const double denom = gkx2 + kz2;
  const double w1 = -b * b * gkx2 / (denom * kz2) + gamma * gamma * a * a / denom;
  const double w2 = 2.0 * gamma * a * b / denom;
  return {w1, w2};
}

/// Precomputed multiplier table over the discrete wavenumbers of a grid.
struct KernelTable {
  Grid grid;
  DipoleAxis axis;
  double gamma = 0.0;
  std::vector<double> multiplier;

  static KernelTable build(const Grid& g, double gamma, const DipoleAxis& axis) {
    if (gamma < 0.0 || gamma > 1.0) throw ConfigError("kernel: gamma must lie in [0,1]");
    KernelTable t{g, axis, gamma, {}};
    t.multiplier.resize(g.total_points());
    detail::for_each_wavenumber(g, [&](std::size_t idx, const double* kx, const double* kz) {
      t.multiplier[idx] = vdip_hat(kx, kz, gamma, axis);
    });
    return t;
  }
};

namespace detail {

struct KernelKey {
  int d, n_x, n_z, k_z;
  std::uint64_t xw, zw, gamma;
  std::vector<std::uint64_t> axis_bits;

  auto operator<=>(const KernelKey&) const = default;
};

inline std::uint64_t bits(double v) {
  std::uint64_t u;
  std::memcpy(&u, &v, sizeof(u));
  return u;
}

}  // namespace detail

/// Shared table cache keyed by (grid shape, gamma, axis); insertion is
/// serialized so sweeps can request tables concurrently.
inline std::shared_ptr<const KernelTable> kernel_table(const Grid& g, double gamma,
                                                       const DipoleAxis& axis) {
  static std::mutex mtx;
  static std::map<detail::KernelKey, std::shared_ptr<const KernelTable>> cache;

  detail::KernelKey key{g.d(), g.n_x(), g.n_z(), g.k_z(),
                        detail::bits(g.x_half_width()), detail::bits(g.z_half_width()),
                        detail::bits(gamma), {}};
  for (double v : axis.n_x) key.axis_bits.push_back(detail::bits(v));
  for (double v : axis.n_z) key.axis_bits.push_back(detail::bits(v));

  std::lock_guard lock(mtx);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto table = std::make_shared<const KernelTable>(KernelTable::build(g, gamma, axis));
  cache.emplace(std::move(key), table);
  return table;
}

/// K^gamma u = V_dip^gamma * u, applied spectrally. Expects a Physical,
/// essentially real density; the output keeps its (tiny) imaginary residue.
inline WaveField apply_convolution(const WaveField& density, const KernelTable& table) {
  if (density.rep != Representation::Physical)
    throw PreconditionError("apply_convolution: density must be Physical");
  if (!density.grid.compatible(table.grid))
    throw PreconditionError("apply_convolution: table built for another grid");
  double imag_sq = 0.0, total_sq = 0.0;
  for (const Complex& v : density.values) {
    imag_sq += v.imag() * v.imag();
    total_sq += std::norm(v);
  }
  if (total_sq > 0.0 && imag_sq > 1e-24 * total_sq)
    throw PreconditionError("apply_convolution: density has a complex part beyond tolerance");

  WaveField hat = transform(density, Direction::Forward);
  for (std::size_t i = 0; i < hat.values.size(); ++i) hat.values[i] *= table.multiplier[i];
  return transform(hat, Direction::Inverse);
}

/// CSV dump of the multiplier (columns kx..., kz..., value) for plotting.
inline void dump_multiplier_csv(const KernelTable& table, std::ostream& os) {
  const Grid& g = table.grid;
  os << (g.d() == 1 ? "kx1,kx2,kz1,value\n" : "kx1,kz1,kz2,value\n");
  char buf[128];
  detail::for_each_wavenumber(g, [&](std::size_t idx, const double* kx, const double* kz) {
    if (g.d() == 1)
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", kx[0], kx[1], kz[0],
                    table.multiplier[idx]);
    else
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", kx[0], kz[0], kz[1],
                    table.multiplier[idx]);
    os << buf;
  });
}

}  // namespace dgpe
