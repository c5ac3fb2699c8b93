#pragma once

#include <cmath>
#include <vector>

#include "dgpe/core/transverse.hpp"
#include "dgpe/model/kernel.hpp"
#include "dgpe/model/params.hpp"

namespace dgpe {

/// Uniform trapezoid nodes on [0, 2pi). The integrands produced by the
/// truncated Hermite spectra are trigonometric polynomials of degree at most
/// 2 d K_z, so any even N >= 4 K_z + 2 integrates them exactly.
struct ThetaQuadrature {
  int n_nodes = 0;

  static int min_nodes(int k_z) { return 4 * k_z + 2; }

  static ThetaQuadrature for_grid(const Grid& g) { return with_nodes(min_nodes(g.k_z()), g); }

  static ThetaQuadrature with_nodes(int n, const Grid& g) {
    if (n < min_nodes(g.k_z()) || n % 2 != 0)
      throw ConfigError("theta quadrature: need an even node count >= 4 K_z + 2");
    return ThetaQuadrature{n};
  }

  double node(int j) const { return 2.0 * M_PI * j / n_nodes; }
};

enum class Parts { Cubic, Dipolar, Both };

namespace detail {

/// w = (sigma |u|^2 + 3 lambda0 V^gamma * |u|^2) u restricted to `parts`.
inline WaveField apply_potential(const WaveField& u, const ModelParams& p, Parts parts) {
  WaveField out = u;
  const bool cubic = parts != Parts::Dipolar;
  const bool dipolar = parts != Parts::Cubic && p.lambda0 != 0.0;

  std::vector<double> pot(u.values.size(), 0.0);
  if (cubic) {
    for (std::size_t i = 0; i < u.values.size(); ++i)
      pot[i] = p.sigma * std::norm(u.values[i]);
  }
  if (dipolar) {
    WaveField dens = WaveField::zeros(u.grid, u.frame);
    for (std::size_t i = 0; i < u.values.size(); ++i)
      dens.values[i] = Complex(std::norm(u.values[i]), 0.0);
    auto table = kernel_table(u.grid, p.gamma, p.axis);
    WaveField conv = apply_convolution(dens, *table);
    for (std::size_t i = 0; i < u.values.size(); ++i)
      pot[i] += 3.0 * p.lambda0 * conv.values[i].real();
  }
  for (std::size_t i = 0; i < u.values.size(); ++i) out.values[i] *= pot[i];
  return out;
}

}  // namespace detail

/// F^gamma(theta, Phi) = e^{i theta H_z} [ (sigma|u|^2
///   + 3 lambda0 V^gamma * |u|^2) u ],  u = e^{-i theta H_z} Phi.
inline WaveField eval_f(double theta, const WaveField& phi, const ModelParams& p,
                        Parts parts = Parts::Both) {
  if (phi.rep != Representation::Physical)
    throw PreconditionError("eval_f: field must be Physical");
  WaveField u = propagate_hz(phi, theta);
  WaveField w = detail::apply_potential(u, p, parts);
  return propagate_hz(w, -theta);
}

/// Averaged vector field F_av = (2pi)^{-1} integral of F(theta, .), realized
/// as the uniform node average (exact on the truncated content).
inline WaveField eval_f_av(const WaveField& phi, const ModelParams& p,
                           const ThetaQuadrature& quad, Parts parts = Parts::Both) {
  WaveField acc = WaveField::zeros(phi.grid, phi.frame);
  for (int j = 0; j < quad.n_nodes; ++j) {
    WaveField term = eval_f(quad.node(j), phi, p, parts);
    axpy(acc, Complex(1.0 / quad.n_nodes, 0.0), term);
  }
  return acc;
}

/// Polarized reduction G^{gamma,k}: for u on the x grid,
///   G(u)(x) = u(x) [ sigma |u(x)|^2 ||omega_k||_{L4}^4
///             + 3 lambda0 Int |omega_k|^2 (V^gamma * |omega_k u|^2) dz ].
/// The z integral uses the grid quadrature, matching the averaged solver's
/// polarized projection exactly.
inline std::vector<Complex> g_reduced(const std::vector<Complex>& a, const std::vector<int>& k,
                                      const ModelParams& p, const Grid& g,
                                      Parts parts = Parts::Both) {
  for (int ki : k)
    if (ki >= g.k_z()) throw PreconditionError("g_reduced: mode index >= K_z");

  const int nz = g.n_z();
  const std::size_t zp = g.z_points();
  // |omega_k|^2 over the z block.
  std::vector<double> w2(zp);
  Eigen::VectorXd m1 = g.hermite().mode(k[0]);
  if (g.d() == 1) {
    for (int z = 0; z < nz; ++z) w2[z] = m1(z) * m1(z);
  } else {
    Eigen::VectorXd m2 = g.hermite().mode(k[1]);
    for (int z1 = 0; z1 < nz; ++z1)
      for (int z2 = 0; z2 < nz; ++z2)
        w2[z1 * nz + z2] = m1(z1) * m1(z1) * m2(z2) * m2(z2);
  }
  const double hz = std::pow(g.z_spacing(), g.d());
  double l4 = 0.0;
  for (double w : w2) l4 += w * w;
  l4 *= hz;

  const bool cubic = parts != Parts::Dipolar;
  const bool dipolar = parts != Parts::Cubic && p.lambda0 != 0.0;

  std::vector<Complex> out(a.size(), Complex(0.0, 0.0));
  std::vector<double> dip_integral(a.size(), 0.0);
  if (dipolar) {
    WaveField u = embed_polarized(g, a, k);
    WaveField dens = WaveField::zeros(g);
    for (std::size_t i = 0; i < u.values.size(); ++i)
      dens.values[i] = Complex(std::norm(u.values[i]), 0.0);
    auto table = kernel_table(g, p.gamma, p.axis);
    WaveField conv = apply_convolution(dens, *table);
    for (std::size_t x = 0; x < a.size(); ++x) {
      double s = 0.0;
      const Complex* blk = conv.values.data() + x * zp;
      for (std::size_t z = 0; z < zp; ++z) s += w2[z] * blk[z].real();
      dip_integral[x] = hz * s;
    }
  }
  for (std::size_t x = 0; x < a.size(); ++x) {
    double pot = 0.0;
    if (cubic) pot += p.sigma * std::norm(a[x]) * l4;
    if (dipolar) pot += 3.0 * p.lambda0 * dip_integral[x];
    out[x] = a[x] * pot;
  }
  return out;
}

/// Diagnostic ratio ||F_av(u) - F_av(v)|| / ||u - v|| in L2.
inline double lipschitz_probe(const WaveField& u, const WaveField& v, const ModelParams& p,
                              const ThetaQuadrature& quad) {
  const double denom = norm_l2_diff(u, v);
  if (denom == 0.0) throw PreconditionError("lipschitz_probe: u and v coincide");
  WaveField fu = eval_f_av(u, p, quad);
  WaveField fv = eval_f_av(v, p, quad);
  return norm_l2_diff(fu, fv) / denom;
}

}  // namespace dgpe
