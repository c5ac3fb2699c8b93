#pragma once

#include <Eigen/Dense>

namespace dgpe::oracle {

// Independent RK4 integration of the Riccati system
//   M' = -(M^2 + I),  b' = -M b,  c' = -|b|^2/2.
// Cross-validates the closed-form phase flow; never the production path.
struct RiccatiState {
  Eigen::MatrixXd m;
  Eigen::VectorXd b;
  double c = 0.0;
};

inline RiccatiState riccati_rk4(const Eigen::MatrixXd& m0, const Eigen::VectorXd& b0, double c0,
                                double t, int n_steps) {
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(m0.rows(), m0.cols());
  auto deriv = [&](const RiccatiState& s) {
    RiccatiState d;
    d.m = -(s.m * s.m + eye);
    d.b = -s.m * s.b;
    d.c = -0.5 * s.b.squaredNorm();
    return d;
  };
  auto advanced = [](const RiccatiState& s, const RiccatiState& d, double h) {
    return RiccatiState{s.m + h * d.m, s.b + h * d.b, s.c + h * d.c};
  };
  RiccatiState s{m0, b0, c0};
  const double h = t / n_steps;
  for (int i = 0; i < n_steps; ++i) {
    RiccatiState k1 = deriv(s);
    RiccatiState k2 = deriv(advanced(s, k1, h / 2.0));
    RiccatiState k3 = deriv(advanced(s, k2, h / 2.0));
    RiccatiState k4 = deriv(advanced(s, k3, h));
    s.m += (h / 6.0) * (k1.m + 2.0 * k2.m + 2.0 * k3.m + k4.m);
    s.b += (h / 6.0) * (k1.b + 2.0 * k2.b + 2.0 * k3.b + k4.b);
    s.c += (h / 6.0) * (k1.c + 2.0 * k2.c + 2.0 * k3.c + k4.c);
  }
  return s;
}

}  // namespace dgpe::oracle
