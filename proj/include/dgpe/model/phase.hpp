#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>

#include "dgpe/core/errors.hpp"

namespace dgpe {

// Quadratic solutions S(t,x) = x'Mx/2 + b.x + c of the eikonal equation
// dS/dt + |grad S|^2/2 + |x|^2/2 = 0.
//
// With C(t) = cos(t) I + sin(t) M0 the flow is closed form:
//   M(t) = (cos t M0 - sin t I) C(t)^{-1},  b(t) = C(t)^{-1} b0,
//   c(t) = c0 - b0' (sin t C(t)^{-1}) b0 / 2,
// and C(t) is also the fundamental matrix of the characteristics
// x' = grad S, whose affine flow is X(t; x0) = C(t) x0 + sin(t) b0.
// The first singular time of C(t) is the caustic.
class QuadraticPhase {
 public:
  QuadraticPhase() = default;

  QuadraticPhase(Eigen::MatrixXd m, Eigen::VectorXd b, double c)
      : m_(std::move(m)), b_(std::move(b)), c_(c) {
    if (m_.rows() != m_.cols() || m_.rows() != b_.size() || m_.rows() < 1 || m_.rows() > 2)
      throw ConfigError("phase: M must be (3-d)x(3-d) with matching b");
    if ((m_ - m_.transpose()).cwiseAbs().maxCoeff() > 1e-12)
      throw ConfigError("phase: M must be symmetric");
    t_caustic_ = find_caustic(m_);
  }

  static QuadraticPhase zero(int dim) {
    return QuadraticPhase(Eigen::MatrixXd::Zero(dim, dim), Eigen::VectorXd::Zero(dim), 0.0);
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& M() const { return m_; }
  const Eigen::VectorXd& b() const { return b_; }
  double c() const { return c_; }
  double t_caustic() const { return t_caustic_; }

  double value(const Eigen::VectorXd& x) const {
    return 0.5 * x.dot(m_ * x) + b_.dot(x) + c_;
  }
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const { return m_ * x + b_; }
  double laplacian() const { return m_.trace(); }

  /// C(t) = cos t I + sin t M0, the characteristic fundamental matrix.
  Eigen::MatrixXd flow_matrix(double t) const {
    return std::cos(t) * Eigen::MatrixXd::Identity(dim(), dim()) + std::sin(t) * m_;
  }
  /// Affine part of the characteristic flow from time 0.
  Eigen::VectorXd flow_shift(double t) const { return std::sin(t) * b_; }

  /// Phase coefficients at time t (0 <= t < t_caustic).
  QuadraticPhase evolve(double t) const {
    if (t < 0.0) throw PreconditionError("phase: negative time");
    if (t >= t_caustic_) throw SolverError("phase: time at or past the caustic");
    Eigen::MatrixXd c_t = flow_matrix(t);
    check_conditioning(c_t);
    Eigen::MatrixXd c_inv = c_t.inverse();
    Eigen::MatrixXd m_t = (std::cos(t) * m_ - std::sin(t) * Eigen::MatrixXd::Identity(dim(), dim())) * c_inv;
    m_t = 0.5 * (m_t + m_t.transpose());  // kill roundoff asymmetry
    Eigen::VectorXd b_t = c_inv * b_;
    const double c_val = c_ - 0.5 * std::sin(t) * b_.dot(c_inv * b_);
    return QuadraticPhase(std::move(m_t), std::move(b_t), c_val);
  }

  /// dS/dt at (t=0, x) from the eikonal equation itself.
  double time_derivative(const Eigen::VectorXd& x) const {
    const Eigen::VectorXd gs = gradient(x);
    return -0.5 * gs.squaredNorm() - 0.5 * x.squaredNorm();
  }

 private:
  static void check_conditioning(const Eigen::MatrixXd& c_t) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(c_t);
    const double smin = svd.singularValues().minCoeff();
    if (smin <= 0.0 || 1.0 / smin > 1e8)
      throw SolverError("phase: flow matrix conditioning beyond 1e8 (caustic)");
  }

  /// First positive root of cos t + mu sin t over the eigenvalues mu of M0,
  /// located by scan plus bisection refined below 1e-10.
  static double find_caustic(const Eigen::MatrixXd& m0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m0);
    double t_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m0.rows(); ++i) {
      const double mu = es.eigenvalues()(i);
      auto f = [mu](double t) { return std::cos(t) + mu * std::sin(t); };
      double lo = 0.0, hi = 0.0;
      bool found = false;
      const double step = 1e-2;
      for (double t = step; t <= M_PI + step; t += step) {
        if (f(t) <= 0.0) {
          lo = t - step;
          hi = t;
          found = true;
          break;
        }
      }
      if (!found) continue;
      for (int it = 0; it < 64; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) <= 0.0 ? hi : lo) = mid;
      }
      t_min = std::min(t_min, 0.5 * (lo + hi));
    }
    return t_min;
  }

  Eigen::MatrixXd m_;
  Eigen::VectorXd b_;
  double c_ = 0.0;
  double t_caustic_ = std::numeric_limits<double>::infinity();
};

}  // namespace dgpe
