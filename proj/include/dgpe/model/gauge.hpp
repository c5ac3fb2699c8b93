#pragma once

#include <cmath>
#include <vector>

#include "dgpe/core/transverse.hpp"
#include "dgpe/model/phase.hpp"

namespace dgpe {

/// Time/parameter stamp fixing the gauge between the lab wavefunction psi and
/// the filtered amplitude A = e^{i t H_z / eps^2} e^{-i S(t)/alpha} psi.
struct FrameStamp {
  double t = 0.0;
  double epsilon = 1.0;
  double alpha = 1.0;
  QuadraticPhase phase0;  // eikonal data at time 0

  void validate() const {
    if (epsilon <= 0.0 || epsilon > 1.0 || alpha <= 0.0 || alpha > 1.0)
      throw PreconditionError("frame stamp: epsilon and alpha must lie in (0,1]");
    if (t < 0.0 || t >= phase0.t_caustic())
      throw PreconditionError("frame stamp: time outside the caustic-free window");
  }
};

namespace detail {

/// S(t, x) sampled over the x grid (x-major order).
inline std::vector<double> phase_samples(const Grid& g, const QuadraticPhase& s) {
  const int xa = g.x_axes();
  const auto& xc = g.x_coords();
  std::vector<double> out(g.x_points());
  Eigen::VectorXd x(xa);
  if (xa == 1) {
    for (int i = 0; i < g.n_x(); ++i) {
      x(0) = xc[i];
      out[i] = s.value(x);
    }
  } else {
    std::size_t p = 0;
    for (int i = 0; i < g.n_x(); ++i)
      for (int j = 0; j < g.n_x(); ++j, ++p) {
        x(0) = xc[i];
        x(1) = xc[j];
        out[p] = s.value(x);
      }
  }
  return out;
}

inline void multiply_x_phase(WaveField& f, const std::vector<double>& s, double scale) {
  const std::size_t zp = f.grid.z_points();
  for (std::size_t x = 0; x < s.size(); ++x) {
    const Complex ph = std::polar(1.0, scale * s[x]);
    Complex* blk = f.values.data() + x * zp;
    for (std::size_t z = 0; z < zp; ++z) blk[z] *= ph;
  }
}

}  // namespace detail

/// Multiply by e^{i sign S(t,x) / alpha} (the WKB gauge factor alone).
inline WaveField apply_phase_gauge(const WaveField& f, const QuadraticPhase& phase_at_t,
                                   double alpha, int sign) {
  if (alpha <= 0.0) throw PreconditionError("phase gauge: alpha must be positive");
  WaveField out = f;
  detail::multiply_x_phase(out, detail::phase_samples(f.grid, phase_at_t),
                           static_cast<double>(sign) / alpha);
  return out;
}

/// A = e^{i t H_z/eps^2} e^{-i S(t)/alpha} psi.
inline WaveField to_filtered(const WaveField& psi, const FrameStamp& stamp) {
  stamp.validate();
  if (psi.frame != Frame::Lab || psi.rep != Representation::Physical)
    throw PreconditionError("to_filtered: expects a Physical lab-frame field");
  const QuadraticPhase s_t = stamp.phase0.evolve(stamp.t);
  WaveField out = apply_phase_gauge(psi, s_t, stamp.alpha, -1);
  out = propagate_hz(out, -stamp.t / (stamp.epsilon * stamp.epsilon));
  out.frame = Frame::Filtered;
  return out;
}

/// psi = e^{i S(t)/alpha} e^{-i t H_z/eps^2} A.
inline WaveField from_filtered(const WaveField& a, const FrameStamp& stamp) {
  stamp.validate();
  if (a.frame != Frame::Filtered || a.rep != Representation::Physical)
    throw PreconditionError("from_filtered: expects a Physical filtered field");
  WaveField out = propagate_hz(a, stamp.t / (stamp.epsilon * stamp.epsilon));
  const QuadraticPhase s_t = stamp.phase0.evolve(stamp.t);
  out = apply_phase_gauge(out, s_t, stamp.alpha, +1);
  out.frame = Frame::Lab;
  return out;
}

}  // namespace dgpe
