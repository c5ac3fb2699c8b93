#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <vector>

#include "dgpe/core/wavefield.hpp"

namespace dgpe {

// Evaluation of the trigonometric interpolant at affinely mapped x points,
// out(x) = interp(f)(linear*x + shift), with z untouched. The Nyquist mode is
// split symmetrically so the interpolant is real for real data.
//
// Queries that leave the box wrap around periodically; that is rejected when
// the field carries more than 1e-8 of its mass on the outermost x layer.

namespace detail {

using MatC = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

/// Per-axis evaluation matrix E(i,m) = exp(i k_m (y_i + L)) / sqrt(n).
inline MatC eval_matrix(const Grid& g, const std::vector<double>& targets) {
  const int n = g.n_x();
  const double L = g.x_half_width();
  const auto& k = g.x_wavenumbers();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  MatC e(targets.size(), n);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const double y = targets[i] + L;
    for (int m = 0; m < n; ++m) {
      if (m == n / 2)
        e(i, m) = scale * std::cos(k[m] * y);
      else
        e(i, m) = scale * std::polar(1.0, k[m] * y);
    }
  }
  return e;
}

/// Mass fraction on the outermost x layer of an array with z block size zp.
inline double x_boundary_mass_fraction(const std::vector<Complex>& values, const Grid& g,
                                       std::size_t zp) {
  const int nx = g.n_x();
  const int xa = g.x_axes();
  double total = 0.0, edge = 0.0;
  const std::size_t xp = values.size() / zp;
  for (std::size_t x = 0; x < xp; ++x) {
    bool on_edge = false;
    std::size_t xi = x;
    for (int a = xa - 1; a >= 0; --a) {
      const int c = static_cast<int>(xi % nx);
      xi /= nx;
      if (c == 0 || c == nx - 1) on_edge = true;
    }
    double m = 0.0;
    for (std::size_t z = 0; z < zp; ++z) m += std::norm(values[x * zp + z]);
    total += m;
    if (on_edge) edge += m;
  }
  return total > 0.0 ? edge / total : 0.0;
}

/// Shared core: values has x_points * zp entries (x-major, z fastest).
inline void resample_core(std::vector<Complex>& values, const Grid& g, std::size_t zp,
                          const Eigen::MatrixXd& linear, const Eigen::VectorXd& shift) {
  const int xa = g.x_axes();
  if (linear.rows() != xa || linear.cols() != xa || shift.size() != xa)
    throw PreconditionError("resample_affine: map dimension mismatch");
  if (std::abs(linear.determinant()) < 1e-12)
    throw PreconditionError("resample_affine: singular map");

  const int nx = g.n_x();
  const double L = g.x_half_width();
  const auto& xc = g.x_coords();
  const auto zpi = static_cast<Eigen::Index>(zp);

  bool diagonal = true;
  for (int a = 0; a < xa; ++a)
    for (int b = 0; b < xa; ++b)
      if (a != b && std::abs(linear(a, b)) > 1e-13 * (1.0 + linear.cwiseAbs().maxCoeff()))
        diagonal = false;

  bool out_of_box = false;
  auto track = [&](double y) {
    if (y < -L || y > L) out_of_box = true;
    return y;
  };

  const double boundary_frac_pre = x_boundary_mass_fraction(values, g, zp);

  std::vector<Complex> hat = values;
  std::vector<int> lead(xa, nx);
  fft::transform_leading(hat.data(), lead, static_cast<int>(zp), FFTW_FORWARD);

  if (xa == 1) {
    std::vector<double> targets(nx);
    for (int i = 0; i < nx; ++i) targets[i] = track(linear(0, 0) * xc[i] + shift(0));
    MatC e = eval_matrix(g, targets);
    Eigen::Map<const MatC> u(hat.data(), zpi, nx);
    Eigen::Map<MatC> o(values.data(), zpi, nx);
    o = u * e.transpose();
  } else if (diagonal) {
    std::vector<double> t0(nx), t1(nx);
    for (int i = 0; i < nx; ++i) {
      t0[i] = track(linear(0, 0) * xc[i] + shift(0));
      t1[i] = track(linear(1, 1) * xc[i] + shift(1));
    }
    MatC e0 = eval_matrix(g, t0);
    MatC e1 = eval_matrix(g, t1);
    std::vector<Complex> tmp(hat.size());
    {
      Eigen::Map<const MatC> u(hat.data(), static_cast<Eigen::Index>(nx) * zpi, nx);
      Eigen::Map<MatC> o(tmp.data(), static_cast<Eigen::Index>(nx) * zpi, nx);
      o = u * e0.transpose();
    }
    for (int x0 = 0; x0 < nx; ++x0) {
      Eigen::Map<const MatC> u(tmp.data() + static_cast<std::size_t>(x0) * nx * zp, zpi, nx);
      Eigen::Map<MatC> o(values.data() + static_cast<std::size_t>(x0) * nx * zp, zpi, nx);
      o = u * e1.transpose();
    }
  } else {
    // General invertible map: direct evaluation per z index.
    const std::size_t npts = static_cast<std::size_t>(nx) * nx;
    std::vector<double> y0(npts), y1(npts);
    std::size_t p = 0;
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < nx; ++j, ++p) {
        y0[p] = track(linear(0, 0) * xc[i] + linear(0, 1) * xc[j] + shift(0));
        y1[p] = track(linear(1, 0) * xc[i] + linear(1, 1) * xc[j] + shift(1));
      }
    MatC p0 = eval_matrix(g, y0);
    MatC p1 = eval_matrix(g, y1);
    for (std::size_t z = 0; z < zp; ++z) {
      for (std::size_t q = 0; q < npts; ++q) {
        Complex acc(0.0, 0.0);
        for (int m1 = 0; m1 < nx; ++m1) {
          Complex inner(0.0, 0.0);
          const Complex* row = hat.data() + (static_cast<std::size_t>(m1) * nx) * zp + z;
          for (int m2 = 0; m2 < nx; ++m2) inner += p1(q, m2) * row[static_cast<std::size_t>(m2) * zp];
          acc += p0(q, m1) * inner;
        }
        values[q * zp + z] = acc;
      }
    }
  }

  if (out_of_box && boundary_frac_pre > 1e-8)
    throw PreconditionError("resample_affine: targets leave the box with boundary mass above 1e-8");
}

}  // namespace detail

inline WaveField resample_affine(const WaveField& f, const Eigen::MatrixXd& linear,
                                 const Eigen::VectorXd& shift) {
  if (f.rep != Representation::Physical)
    throw PreconditionError("resample_affine: field must be Physical");
  WaveField out = f;
  detail::resample_core(out.values, f.grid, f.grid.z_points(), linear, shift);
  return out;
}

/// Same map applied to a state living on the x grid alone.
inline std::vector<Complex> resample_affine_x(const Grid& g, const std::vector<Complex>& a,
                                              const Eigen::MatrixXd& linear,
                                              const Eigen::VectorXd& shift) {
  if (a.size() != g.x_points()) throw PreconditionError("resample_affine_x: size mismatch");
  std::vector<Complex> out = a;
  detail::resample_core(out, g, 1, linear, shift);
  return out;
}

}  // namespace dgpe
