#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "dgpe/core/errors.hpp"
#include "dgpe/core/fft.hpp"
#include "dgpe/core/grid.hpp"

namespace dgpe {

using Complex = std::complex<double>;

enum class Representation { Physical, Fourier };
enum class Frame { Lab, Filtered };
enum class Direction { Forward, Inverse };

struct WaveField {
  Grid grid;
  std::vector<Complex> values;
  Representation rep = Representation::Physical;
  Frame frame = Frame::Lab;

  static WaveField zeros(const Grid& g, Frame f = Frame::Lab) {
    WaveField w;
    w.grid = g;
    w.values.assign(g.total_points(), Complex(0.0, 0.0));
    w.frame = f;
    return w;
  }
};

/// Discrete L2 norm including the volume element; representation-independent
/// under the unitary transform convention.
inline double norm_l2(const WaveField& f) {
  double s = 0.0;
  for (const Complex& v : f.values) s += std::norm(v);
  return std::sqrt(s * f.grid.cell_volume());
}

inline double max_modulus(const WaveField& f) {
  double m = 0.0;
  for (const Complex& v : f.values) m = std::max(m, std::abs(v));
  return m;
}

inline Complex inner_product(const WaveField& a, const WaveField& b) {
  Complex s(0.0, 0.0);
  for (std::size_t i = 0; i < a.values.size(); ++i)
    s += std::conj(a.values[i]) * b.values[i];
  return s * a.grid.cell_volume();
}

inline double norm_l2_diff(const WaveField& a, const WaveField& b) {
  if (!a.grid.compatible(b.grid))
    throw PreconditionError("norm_l2_diff: incompatible grids");
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    s += std::norm(a.values[i] - b.values[i]);
  return std::sqrt(s * a.grid.cell_volume());
}

/// Full 3D unitary Fourier transform, flipping the representation tag.
inline WaveField transform(const WaveField& f, Direction dir) {
  if (dir == Direction::Forward && f.rep != Representation::Physical)
    throw PreconditionError("transform: forward expects a Physical field");
  if (dir == Direction::Inverse && f.rep != Representation::Fourier)
    throw PreconditionError("transform: inverse expects a Fourier field");
  WaveField out = f;
  fft::transform_all(out.values.data(), f.grid.dims(),
                     dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD);
  out.rep = dir == Direction::Forward ? Representation::Fourier : Representation::Physical;
  return out;
}

namespace detail {

/// Calls fn(flat_index, kx[3-d], kz[d]) over the whole Fourier grid.
template <typename Fn>
void for_each_wavenumber(const Grid& g, Fn&& fn) {
  const auto& kx = g.x_wavenumbers();
  const auto& kz = g.z_wavenumbers();
  const int nx = g.n_x(), nz = g.n_z();
  std::size_t idx = 0;
  double k[3];
  if (g.d() == 1) {
    for (int a = 0; a < nx; ++a) {
      k[0] = kx[a];
      for (int b = 0; b < nx; ++b) {
        k[1] = kx[b];
        for (int c = 0; c < nz; ++c) {
          k[2] = kz[c];
          fn(idx++, k, k + 2);
        }
      }
    }
  } else {
    for (int a = 0; a < nx; ++a) {
      k[0] = kx[a];
      for (int b = 0; b < nz; ++b) {
        k[1] = kz[b];
        for (int c = 0; c < nz; ++c) {
          k[2] = kz[c];
          fn(idx++, k, k + 1);
        }
      }
    }
  }
}

/// Calls fn(flat_index, x[3-d], z[d]) over the physical grid.
template <typename Fn>
void for_each_point(const Grid& g, Fn&& fn) {
  const auto& xc = g.x_coords();
  const auto& zc = g.z_coords();
  const int nx = g.n_x(), nz = g.n_z();
  std::size_t idx = 0;
  double p[3];
  if (g.d() == 1) {
    for (int a = 0; a < nx; ++a) {
      p[0] = xc[a];
      for (int b = 0; b < nx; ++b) {
        p[1] = xc[b];
        for (int c = 0; c < nz; ++c) {
          p[2] = zc[c];
          fn(idx++, p, p + 2);
        }
      }
    }
  } else {
    for (int a = 0; a < nx; ++a) {
      p[0] = xc[a];
      for (int b = 0; b < nz; ++b) {
        p[1] = zc[b];
        for (int c = 0; c < nz; ++c) {
          p[2] = zc[c];
          fn(idx++, p, p + 1);
        }
      }
    }
  }
}

}  // namespace detail

/// out += c * in
inline void axpy(WaveField& out, Complex c, const WaveField& in) {
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += c * in.values[i];
}

inline void scale(WaveField& f, Complex c) {
  for (Complex& v : f.values) v *= c;
}

inline WaveField difference(const WaveField& a, const WaveField& b) {
  WaveField d = a;
  for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] -= b.values[i];
  return d;
}

}  // namespace dgpe
