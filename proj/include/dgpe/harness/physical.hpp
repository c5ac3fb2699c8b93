#pragma once

#include <cmath>

#include "dgpe/core/errors.hpp"

namespace dgpe {

inline constexpr double kHbar = 1.054571817e-34;  // J s

struct PhysicalInputs {
  double mass_kg = 0.0;
  double omega_x_rad_s = 0.0;
  double omega_z_rad_s = 0.0;
  double a_s_m = 0.0;  // signed s-wave scattering length
  double n_atoms = 0.0;
  double c_dip_si = 0.0;

  void validate() const {
    if (mass_kg <= 0.0 || omega_x_rad_s <= 0.0 || omega_z_rad_s <= 0.0 || n_atoms <= 0.0 ||
        c_dip_si <= 0.0 || a_s_m == 0.0)
      throw ConfigError("physical inputs: all quantities must be positive (a_s nonzero)");
    if (omega_x_rad_s > omega_z_rad_s)
      throw ConfigError("physical inputs: omega_z must dominate omega_x");
  }
};

struct Nondimensional {
  double epsilon = 0.0;
  double beta = 0.0;
  double lambda0 = 0.0;
  double a0_m = 0.0;
  int sigma = 1;
};

/// eps = sqrt(w_x/w_z), beta = 4 pi N |a_s| / a0, lambda0 = C_dip / (3|g|)
/// with a0 = sqrt(hbar/(m w_x)) and g = 4 pi hbar^2 a_s / m.
inline Nondimensional nondimensionalize(const PhysicalInputs& in) {
  in.validate();
  Nondimensional out;
  out.epsilon = std::sqrt(in.omega_x_rad_s / in.omega_z_rad_s);
  out.a0_m = std::sqrt(kHbar / (in.mass_kg * in.omega_x_rad_s));
  out.beta = 4.0 * M_PI * in.n_atoms * std::abs(in.a_s_m) / out.a0_m;
  const double g = 4.0 * M_PI * kHbar * kHbar * in.a_s_m / in.mass_kg;
  out.lambda0 = in.c_dip_si / (3.0 * std::abs(g));
  out.sigma = in.a_s_m > 0.0 ? 1 : -1;
  return out;
}

struct ScaledParams {
  double alpha = 0.0;
  double gamma = 0.0;
  bool regime_warning = false;  // alpha > 1 breaks the alpha << 1 assumption
};

/// alpha = eps^{2d/n} beta^{-2/n} with n = 3-d, gamma = eps sqrt(alpha).
/// The identity beta eps^{-d} alpha^{n/2} = 1 then holds by construction.
inline ScaledParams derive_scaled_params(double epsilon, double beta, int d) {
  if (epsilon <= 0.0 || epsilon > 1.0) throw ConfigError("derive_scaled_params: epsilon in (0,1]");
  if (beta <= 0.0) throw ConfigError("derive_scaled_params: beta must be positive");
  if (d != 1 && d != 2) throw ConfigError("derive_scaled_params: d must be 1 or 2");
  const double n = 3.0 - d;
  ScaledParams out;
  out.alpha = std::pow(epsilon, 2.0 * d / n) * std::pow(beta, -2.0 / n);
  out.gamma = epsilon * std::sqrt(out.alpha);
  out.regime_warning = out.alpha > 1.0;
  return out;
}

}  // namespace dgpe
