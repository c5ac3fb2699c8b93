#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <vector>

#include "dgpe/core/wavefield.hpp"

namespace dgpe {

// Hermite transform of the transversal (z) content and the exact propagator
// of H_z = -Delta_z/2 + |z|^2/2 - d/2 on the retained span.
//
// Coefficient layout: x-major, then the z multi-index (k1 fastest-to-slowest
// matching the z axes), size x_points * K^d.
//
// Content outside the retained span is carried along with the integer phase
// tag R = d*K_z, which is larger than every retained total degree. This keeps
// the propagator unitary and 2pi-periodic and lets the theta-average
// annihilate unresolved content instead of leaking it onto mode zero.

namespace detail {

using MatC = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using MapC = Eigen::Map<MatC>;
using CMapC = Eigen::Map<const MatC>;

inline MatC analysis_c(const Grid& g) { return g.hermite().analysis().cast<Complex>(); }
inline MatC synthesis_c(const Grid& g) { return g.hermite().synthesis().cast<Complex>(); }

}  // namespace detail

/// Residual phase tag for out-of-span content.
inline int residual_degree(const Grid& g) { return g.d() * g.k_z(); }

/// Hermite coefficients of the z content for every x point.
inline std::vector<Complex> hermite_analyze(const WaveField& f) {
  const Grid& g = f.grid;
  const int nz = g.n_z(), K = g.k_z();
  const auto xp = static_cast<Eigen::Index>(g.x_points());
  detail::MatC an = detail::analysis_c(g);
  if (g.d() == 1) {
    detail::CMapC u(f.values.data(), nz, xp);
    detail::MatC c = an * u;  // K x xp
    std::vector<Complex> out(static_cast<std::size_t>(K) * xp);
    for (Eigen::Index x = 0; x < xp; ++x)
      for (int k = 0; k < K; ++k) out[x * K + k] = c(k, x);
    return out;
  }
  // d = 2: transform z2 (fastest), permute, transform z1.
  detail::CMapC u(f.values.data(), nz, xp * nz);
  detail::MatC a2 = an * u;  // (k2) x (x, z1)
  detail::MatC b(nz, xp * K);
  for (Eigen::Index x = 0; x < xp; ++x)
    for (int z1 = 0; z1 < nz; ++z1)
      for (int k2 = 0; k2 < K; ++k2) b(z1, x * K + k2) = a2(k2, x * nz + z1);
  detail::MatC c = an * b;  // (k1) x (x, k2)
  std::vector<Complex> out(static_cast<std::size_t>(K) * K * xp);
  for (Eigen::Index x = 0; x < xp; ++x)
    for (int k1 = 0; k1 < K; ++k1)
      for (int k2 = 0; k2 < K; ++k2)
        out[(x * K + k1) * K + k2] = c(k1, x * K + k2);
  return out;
}

/// Inverse of hermite_analyze onto the retained span.
inline WaveField hermite_synthesize(const Grid& g, const std::vector<Complex>& coeffs,
                                    Frame frame = Frame::Lab) {
  const int nz = g.n_z(), K = g.k_z();
  const auto xp = static_cast<Eigen::Index>(g.x_points());
  detail::MatC sy = detail::synthesis_c(g);
  WaveField out = WaveField::zeros(g, frame);
  if (g.d() == 1) {
    detail::MatC c(K, xp);
    for (Eigen::Index x = 0; x < xp; ++x)
      for (int k = 0; k < K; ++k) c(k, x) = coeffs[x * K + k];
    detail::MapC u(out.values.data(), nz, xp);
    u = sy * c;
    return out;
  }
  detail::MatC c(K, xp * K);
  for (Eigen::Index x = 0; x < xp; ++x)
    for (int k1 = 0; k1 < K; ++k1)
      for (int k2 = 0; k2 < K; ++k2) c(k1, x * K + k2) = coeffs[(x * K + k1) * K + k2];
  detail::MatC d = sy * c;  // (z1) x (x, k2)
  detail::MatC a2(K, xp * nz);
  for (Eigen::Index x = 0; x < xp; ++x)
    for (int z1 = 0; z1 < nz; ++z1)
      for (int k2 = 0; k2 < K; ++k2) a2(k2, x * nz + z1) = d(z1, x * K + k2);
  detail::MapC u(out.values.data(), nz, xp * nz);
  u = sy * a2;
  return out;
}

/// exp(-i theta H_z) with integer eigenphases on the retained span and the
/// residual tag R = d*K_z outside it. Unitary; exactly 2pi-periodic.
inline WaveField propagate_hz(const WaveField& f, double theta) {
  if (f.rep != Representation::Physical)
    throw PreconditionError("propagate_hz: field must be Physical");
  const Grid& g = f.grid;
  const int K = g.k_z(), d = g.d();
  const int R = residual_degree(g);
  const Complex tag = std::polar(1.0, -theta * R);

  std::vector<Complex> coeffs = hermite_analyze(f);
  std::vector<Complex> phases(static_cast<std::size_t>(R) + 1);
  for (int deg = 0; deg <= R; ++deg)
    phases[deg] = std::polar(1.0, -theta * deg) - tag;

  const auto xp = g.x_points();
  if (d == 1) {
    for (std::size_t x = 0; x < xp; ++x)
      for (int k = 0; k < K; ++k) coeffs[x * K + k] *= phases[k];
  } else {
    for (std::size_t x = 0; x < xp; ++x)
      for (int k1 = 0; k1 < K; ++k1)
        for (int k2 = 0; k2 < K; ++k2) coeffs[(x * K + k1) * K + k2] *= phases[k1 + k2];
  }

  WaveField out = f;
  scale(out, tag);
  WaveField span = hermite_synthesize(g, coeffs, f.frame);
  axpy(out, Complex(1.0, 0.0), span);
  return out;
}

/// Relative energy fraction outside the retained Hermite span.
inline double truncation_leakage(const WaveField& f) {
  std::vector<Complex> coeffs = hermite_analyze(f);
  WaveField proj = hermite_synthesize(f.grid, coeffs, f.frame);
  const double total = norm_l2(f);
  if (total == 0.0) return 0.0;
  const double out = norm_l2_diff(f, proj);
  return (out * out) / (total * total);
}

/// a(x) (x-major values over the x grid) times the Hermite mode with
/// multi-index k (one entry per z axis).
inline WaveField embed_polarized(const Grid& g, const std::vector<Complex>& a,
                                 const std::vector<int>& k, Frame frame = Frame::Lab) {
  if (static_cast<int>(k.size()) != g.d())
    throw PreconditionError("embed_polarized: mode index size must equal d");
  for (int ki : k)
    if (ki < 0 || ki >= g.k_z()) throw PreconditionError("embed_polarized: mode index out of range");
  if (a.size() != g.x_points()) throw PreconditionError("embed_polarized: x field size mismatch");
  const int nz = g.n_z();
  WaveField out = WaveField::zeros(g, frame);
  Eigen::VectorXd w1 = g.hermite().mode(k[0]);
  if (g.d() == 1) {
    for (std::size_t x = 0; x < a.size(); ++x)
      for (int z = 0; z < nz; ++z) out.values[x * nz + z] = a[x] * w1(z);
  } else {
    Eigen::VectorXd w2 = g.hermite().mode(k[1]);
    for (std::size_t x = 0; x < a.size(); ++x)
      for (int z1 = 0; z1 < nz; ++z1)
        for (int z2 = 0; z2 < nz; ++z2)
          out.values[(x * nz + z1) * nz + z2] = a[x] * w1(z1) * w2(z2);
  }
  return out;
}

/// x-profile on mode k: c_k(x) = <omega_k, u(x,.)>_z.
inline std::vector<Complex> extract_mode(const WaveField& f, const std::vector<int>& k) {
  const Grid& g = f.grid;
  const int K = g.k_z();
  std::vector<Complex> coeffs = hermite_analyze(f);
  std::vector<Complex> a(g.x_points());
  if (g.d() == 1) {
    for (std::size_t x = 0; x < a.size(); ++x) a[x] = coeffs[x * K + k[0]];
  } else {
    for (std::size_t x = 0; x < a.size(); ++x) a[x] = coeffs[(x * K + k[0]) * K + k[1]];
  }
  return a;
}

/// L2 norm of everything off mode k (other retained modes plus the residual).
inline double offmode_norm(const WaveField& f, const std::vector<int>& k) {
  std::vector<Complex> a = extract_mode(f, k);
  WaveField pol = embed_polarized(f.grid, a, k, f.frame);
  return norm_l2_diff(f, pol);
}

}  // namespace dgpe
