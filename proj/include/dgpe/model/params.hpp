#pragma once

#include <cmath>
#include <vector>

#include "dgpe/core/errors.hpp"

namespace dgpe {

/// Unit dipole axis split across the confined (x) and transversal (z)
/// directions: n = (n_x, n_z), |n| = 1.
struct DipoleAxis {
  std::vector<double> n_x;  // 3-d entries
  std::vector<double> n_z;  // d entries

  static DipoleAxis make(std::vector<double> nx, std::vector<double> nz) {
    DipoleAxis a{std::move(nx), std::move(nz)};
    a.validate();
    return a;
  }

  void validate() const {
    const int d = static_cast<int>(n_z.size());
    if ((d != 1 && d != 2) || static_cast<int>(n_x.size()) != 3 - d)
      throw ConfigError("axis: need 3-d confined and d transversal components");
    if (std::abs(norm_sq() - 1.0) > 1e-12)
      throw ConfigError("axis: |n| must be 1");
  }

  double norm_sq() const {
    double s = 0.0;
    for (double v : n_x) s += v * v;
    for (double v : n_z) s += v * v;
    return s;
  }

  double nz_norm_sq() const {
    double s = 0.0;
    for (double v : n_z) s += v * v;
    return s;
  }

  int d() const { return static_cast<int>(n_z.size()); }
};

/// Dimensionless model inputs. epsilon/alpha/gamma may be zero when a limit
/// model is selected; individual solvers enforce their own ranges.
struct ModelParams {
  int d = 1;
  int sigma = 1;        // sign of the s-wave scattering length; 0 disables the contact term
  double lambda0 = 0.0; // dipolar vs contact interaction strength
  DipoleAxis axis;
  double epsilon = 1.0;
  double alpha = 1.0;
  double gamma = 1.0;

  void validate() const {
    if (d != 1 && d != 2) throw ConfigError("params: d must be 1 or 2");
    if (sigma != 1 && sigma != -1 && sigma != 0)
      throw ConfigError("params: sigma must be -1, 0 or +1");
    if (axis.d() != d) throw ConfigError("params: axis dimension mismatch");
    axis.validate();
    for (double p : {epsilon, alpha, gamma})
      if (p < 0.0 || p > 1.0) throw ConfigError("params: epsilon/alpha/gamma must lie in [0,1]");
  }
};

}  // namespace dgpe
