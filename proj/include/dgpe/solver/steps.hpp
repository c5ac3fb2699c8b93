#pragma once

#include <cmath>
#include <vector>

#include "dgpe/core/bnorm.hpp"
#include "dgpe/core/transverse.hpp"
#include "dgpe/model/nonlinearity.hpp"
#include "dgpe/solver/config.hpp"

namespace dgpe::detail {

/// |x|^2 over the x grid (x-major order).
inline std::vector<double> x_radius_sq(const Grid& g) {
  std::vector<double> r2(g.x_points());
  const auto& xc = g.x_coords();
  if (g.x_axes() == 1) {
    for (int i = 0; i < g.n_x(); ++i) r2[i] = xc[i] * xc[i];
  } else {
    std::size_t p = 0;
    for (int i = 0; i < g.n_x(); ++i)
      for (int j = 0; j < g.n_x(); ++j, ++p) r2[p] = xc[i] * xc[i] + xc[j] * xc[j];
  }
  return r2;
}

/// |k_x|^2 over the x wavenumber grid.
inline std::vector<double> x_wave_sq(const Grid& g) {
  std::vector<double> k2(g.x_points());
  const auto& kx = g.x_wavenumbers();
  if (g.x_axes() == 1) {
    for (int i = 0; i < g.n_x(); ++i) k2[i] = kx[i] * kx[i];
  } else {
    std::size_t p = 0;
    for (int i = 0; i < g.n_x(); ++i)
      for (int j = 0; j < g.n_x(); ++j, ++p) k2[p] = kx[i] * kx[i] + kx[j] * kx[j];
  }
  return k2;
}

/// Pointwise x-block phase: values[x block] *= exp(i factor * table[x]).
inline void x_phase(std::vector<Complex>& values, const Grid& g,
                    const std::vector<double>& table, double factor) {
  const std::size_t zp = values.size() / table.size();
  for (std::size_t x = 0; x < table.size(); ++x) {
    const Complex ph = std::polar(1.0, factor * table[x]);
    Complex* blk = values.data() + x * zp;
    for (std::size_t z = 0; z < zp; ++z) blk[z] *= ph;
  }
}

/// exp(-i tau alpha |k_x|^2 / 2) applied over the leading x axes of a full
/// field (trail = z points) or an x-only state (trail = 1).
inline void x_kinetic_step(std::vector<Complex>& values, const Grid& g, double alpha,
                           double tau, int trail) {
  std::vector<int> lead(g.x_axes(), g.n_x());
  fft::transform_leading(values.data(), lead, trail, FFTW_FORWARD);
  x_phase(values, g, x_wave_sq(g), -0.5 * alpha * tau);
  fft::transform_leading(values.data(), lead, trail, FFTW_BACKWARD);
}

/// Exact propagator of H_x = -(alpha/2) Laplacian_x + |x|^2/(2 alpha) over
/// time tau, as the kick-drift-kick factorization with coefficients
/// tan(tau/2) and sin(tau). Exact for the quadratic Hamiltonian at any tau
/// below the caustic of the factorization.
inline void harmonic_x_step(std::vector<Complex>& values, const Grid& g, double alpha,
                            double tau, int trail) {
  if (tau == 0.0) return;
  const double kick = std::tan(tau / 2.0) / (2.0 * alpha);
  const auto r2 = x_radius_sq(g);
  x_phase(values, g, r2, -kick);
  x_kinetic_step(values, g, alpha, std::sin(tau), trail);
  x_phase(values, g, r2, -kick);
}

/// Exact flow of i dpsi/dt = (sigma|psi|^2 + 3 lambda0 V*|psi|^2) psi over
/// time tau: the effective potential is real, so |psi| is frozen and the step
/// is a pointwise phase.
inline void nonlinear_phase_step(WaveField& psi, const ModelParams& p, double tau) {
  std::vector<double> pot(psi.values.size(), 0.0);
  for (std::size_t i = 0; i < psi.values.size(); ++i)
    pot[i] = p.sigma * std::norm(psi.values[i]);
  if (p.lambda0 != 0.0) {
    WaveField dens = WaveField::zeros(psi.grid, psi.frame);
    for (std::size_t i = 0; i < psi.values.size(); ++i)
      dens.values[i] = Complex(std::norm(psi.values[i]), 0.0);
    auto table = kernel_table(psi.grid, p.gamma, p.axis);
    WaveField conv = apply_convolution(dens, *table);
    for (std::size_t i = 0; i < psi.values.size(); ++i)
      pot[i] += 3.0 * p.lambda0 * conv.values[i].real();
  }
  for (std::size_t i = 0; i < psi.values.size(); ++i)
    psi.values[i] *= std::polar(1.0, -tau * pot[i]);
}

/// Classical RK4 step of dPhi/dt = -i F(Phi).
template <typename RhsFn>
void rk4_step(WaveField& phi, double h, RhsFn&& f) {
  const Complex mi(0.0, -1.0);
  WaveField k1 = f(phi);
  WaveField stage = phi;
  axpy(stage, mi * (h / 2.0), k1);
  WaveField k2 = f(stage);
  stage = phi;
  axpy(stage, mi * (h / 2.0), k2);
  WaveField k3 = f(stage);
  stage = phi;
  axpy(stage, mi * h, k3);
  WaveField k4 = f(stage);
  axpy(phi, mi * (h / 6.0), k1);
  axpy(phi, mi * (h / 3.0), k2);
  axpy(phi, mi * (h / 3.0), k3);
  axpy(phi, mi * (h / 6.0), k4);
}

/// Quadratic energy diagnostic: (||grad u||^2 + || |x| u ||^2) / 2.
inline double quadratic_energy(const WaveField& f) {
  WaveField hat = transform(f, Direction::Forward);
  double grad_sq = 0.0;
  detail::for_each_wavenumber(f.grid, [&](std::size_t idx, const double* kx, const double* kz) {
    double k2 = kx[0] * kx[0] + kz[f.grid.d() - 1] * kz[f.grid.d() - 1];
    k2 += f.grid.d() == 1 ? kx[1] * kx[1] : kz[0] * kz[0];
    grad_sq += k2 * std::norm(hat.values[idx]);
  });
  double mom_sq = 0.0;
  detail::for_each_point(f.grid, [&](std::size_t idx, const double* x, const double* z) {
    double r2 = x[0] * x[0] + z[f.grid.d() - 1] * z[f.grid.d() - 1];
    r2 += f.grid.d() == 1 ? x[1] * x[1] : z[0] * z[0];
    mom_sq += r2 * std::norm(f.values[idx]);
  });
  return 0.5 * f.grid.cell_volume() * (grad_sq + mom_sq);
}

class Recorder {
 public:
  Recorder(Trajectory& traj, const SolverConfig& cfg, double blowup_tol)
      : traj_(traj), cfg_(cfg), blowup_tol_(blowup_tol) {}

  void record(double t, const WaveField& state, long step_index, long total_steps) {
    if (step_index % cfg_.record_stride != 0 && step_index != total_steps) return;
    DiagnosticsRow row;
    row.t = t;
    row.mass = norm_l2(state);
    row.energy = quadratic_energy(state);
    row.max_mod = max_modulus(state);
    row.b2_norm = discrete_b_norm(state, 2);
    if (!traj_.diagnostics.empty()) {
      const double m0 = traj_.diagnostics.front().mass;
      if (std::abs(row.mass - m0) > blowup_tol_ * std::max(1.0, m0))
        throw SolverError("solver: mass drift beyond tolerance");
    }
    traj_.diagnostics.push_back(row);
    if (cfg_.keep_snapshots && (step_index % cfg_.record_stride == 0))
      traj_.snapshots.emplace_back(t, state);
  }

 private:
  Trajectory& traj_;
  const SolverConfig& cfg_;
  double blowup_tol_;
};

}  // namespace dgpe::detail
