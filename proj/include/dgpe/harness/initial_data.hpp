#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "dgpe/core/transverse.hpp"
#include "dgpe/model/gauge.hpp"

namespace dgpe {

// Initial amplitude families. "gaussian" is a Gaussian x profile (optionally
// shifted and momentum-modulated) times an even z Gaussian plus an optional
// z-odd admixture, which breaks both polarization and z parity; "polarized"
// is a0(x) times a single Hermite mode.
struct InitialData {
  std::string family = "gaussian";
  double x_sigma = 1.0;
  std::vector<double> x_center;    // defaults to 0
  std::vector<double> x_momentum;  // defaults to 0
  double z_sigma = 1.0;
  double z_odd_amp = 0.0;
  double z_odd_sigma = 1.0;
  std::vector<int> k;  // polarized mode multi-index
  bool normalize = true;

  void validate(const Grid& g) const {
    if (family != "gaussian" && family != "polarized")
      throw ConfigError("initial_data: unknown family '" + family + "'");
    if (x_sigma <= 0.0 || z_sigma <= 0.0 || z_odd_sigma <= 0.0)
      throw ConfigError("initial_data: widths must be positive");
    if (!x_center.empty() && static_cast<int>(x_center.size()) != g.x_axes())
      throw ConfigError("initial_data: x_center needs 3-d entries");
    if (!x_momentum.empty() && static_cast<int>(x_momentum.size()) != g.x_axes())
      throw ConfigError("initial_data: x_momentum needs 3-d entries");
    if (family == "polarized") {
      if (static_cast<int>(k.size()) != g.d())
        throw ConfigError("initial_data: polarized mode index needs d entries");
      for (int ki : k)
        if (ki < 0 || ki >= g.k_z()) throw ConfigError("initial_data: mode index out of range");
    }
  }
};

namespace detail {

inline std::vector<Complex> x_gaussian(const InitialData& id, const Grid& g) {
  const int xa = g.x_axes();
  std::vector<double> c(xa, 0.0), p(xa, 0.0);
  for (std::size_t i = 0; i < id.x_center.size(); ++i) c[i] = id.x_center[i];
  for (std::size_t i = 0; i < id.x_momentum.size(); ++i) p[i] = id.x_momentum[i];
  const auto& xc = g.x_coords();
  std::vector<Complex> a(g.x_points());
  const double is2 = 1.0 / (2.0 * id.x_sigma * id.x_sigma);
  if (xa == 1) {
    for (int i = 0; i < g.n_x(); ++i) {
      const double dx = xc[i] - c[0];
      a[i] = std::polar(std::exp(-dx * dx * is2), p[0] * xc[i]);
    }
  } else {
    std::size_t q = 0;
    for (int i = 0; i < g.n_x(); ++i)
      for (int j = 0; j < g.n_x(); ++j, ++q) {
        const double dx = xc[i] - c[0], dy = xc[j] - c[1];
        a[q] = std::polar(std::exp(-(dx * dx + dy * dy) * is2), p[0] * xc[i] + p[1] * xc[j]);
      }
  }
  return a;
}

inline std::vector<double> z_profile(const InitialData& id, const Grid& g) {
  const auto& zc = g.z_coords();
  const int nz = g.n_z();
  const double ie = 1.0 / (2.0 * id.z_sigma * id.z_sigma);
  const double io = 1.0 / (2.0 * id.z_odd_sigma * id.z_odd_sigma);
  std::vector<double> f(g.z_points());
  if (g.d() == 1) {
    for (int z = 0; z < nz; ++z) {
      const double r2 = zc[z] * zc[z];
      f[z] = std::exp(-r2 * ie) + id.z_odd_amp * zc[z] * std::exp(-r2 * io);
    }
  } else {
    for (int z1 = 0; z1 < nz; ++z1)
      for (int z2 = 0; z2 < nz; ++z2) {
        const double r2 = zc[z1] * zc[z1] + zc[z2] * zc[z2];
        f[z1 * nz + z2] =
            std::exp(-r2 * ie) + id.z_odd_amp * (zc[z1] + zc[z2]) * std::exp(-r2 * io);
      }
  }
  return f;
}

}  // namespace detail

/// Normalized x profile a0 (used directly by the polarized solver).
inline std::vector<Complex> build_x_profile(const InitialData& id, const Grid& g) {
  id.validate(g);
  std::vector<Complex> a = detail::x_gaussian(id, g);
  if (id.normalize) {
    double s = 0.0;
    for (const Complex& v : a) s += std::norm(v);
    const double nrm = std::sqrt(s * std::pow(g.x_spacing(), g.x_axes()));
    for (Complex& v : a) v /= nrm;
  }
  return a;
}

/// Amplitude A0 on the full grid (unit mass when normalize is set).
inline WaveField build_amplitude(const InitialData& id, const Grid& g,
                                 Frame frame = Frame::Lab) {
  id.validate(g);
  if (id.family == "polarized")
    return embed_polarized(g, build_x_profile(id, g), id.k, frame);

  std::vector<Complex> a = detail::x_gaussian(id, g);
  std::vector<double> f = detail::z_profile(id, g);
  WaveField out = WaveField::zeros(g, frame);
  const std::size_t zp = g.z_points();
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t z = 0; z < zp; ++z) out.values[x * zp + z] = a[x] * f[z];
  if (id.normalize) {
    const double nrm = norm_l2(out);
    scale(out, Complex(1.0 / nrm, 0.0));
  }
  return out;
}

/// WKB initial state A0 e^{i S0(x)/alpha} for the full model.
inline WaveField build_wkb_state(const InitialData& id, const Grid& g,
                                 const QuadraticPhase& s0, double alpha) {
  WaveField a0 = build_amplitude(id, g, Frame::Lab);
  return apply_phase_gauge(a0, s0, alpha, +1);
}

}  // namespace dgpe
