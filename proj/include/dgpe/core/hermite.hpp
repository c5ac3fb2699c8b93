#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "dgpe/core/errors.hpp"

namespace dgpe {

/// Orthonormal Hermite functions of the 1D oscillator -d²/2 + z²/2 - 1/2,
/// sampled on a uniform grid and re-orthonormalized there.
///
/// Raw samples of the continuum functions are only approximately orthogonal
/// under the grid quadrature; a symmetric Gram correction W = V G^{-1/2}
/// restores exact discrete orthonormality, which the propagator and the
/// theta-averaging rely on. Mode k keeps the integer eigenvalue k.
class HermiteBasis1D {
 public:
  HermiteBasis1D() = default;

  HermiteBasis1D(const std::vector<double>& z, double spacing, int num_modes)
      : n_(static_cast<int>(z.size())), k_(num_modes), h_(spacing) {
    if (num_modes > n_)
      throw ConfigError("hermite: truncation order exceeds grid size");
    Eigen::MatrixXd v(n_, k_);
    for (int i = 0; i < n_; ++i) {
      const double zi = z[i];
      v(i, 0) = std::pow(M_PI, -0.25) * std::exp(-zi * zi / 2.0);
      if (k_ > 1) v(i, 1) = std::sqrt(2.0) * zi * v(i, 0);
      for (int m = 1; m + 1 < k_; ++m)
        v(i, m + 1) = std::sqrt(2.0 / (m + 1)) * zi * v(i, m) -
                      std::sqrt(static_cast<double>(m) / (m + 1)) * v(i, m - 1);
    }
    raw_ = v;
    Eigen::MatrixXd gram = h_ * (v.transpose() * v);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    if (es.eigenvalues().minCoeff() <= 0.0)
      throw ConfigError("hermite: grid cannot resolve requested modes (singular Gram matrix)");
    Eigen::MatrixXd g_inv_half =
        es.eigenvectors() *
        es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
        es.eigenvectors().transpose();
    modes_ = v * g_inv_half;
    analysis_ = h_ * modes_.transpose();
  }

  int grid_size() const { return n_; }
  int num_modes() const { return k_; }
  double spacing() const { return h_; }

  /// Grid samples of mode k (Gram-corrected), as a column.
  Eigen::VectorXd mode(int k) const { return modes_.col(k); }

  /// n x K synthesis matrix (columns are modes).
  const Eigen::MatrixXd& synthesis() const { return modes_; }
  /// K x n analysis matrix (includes the quadrature weight).
  const Eigen::MatrixXd& analysis() const { return analysis_; }
  /// Raw continuum samples prior to the Gram correction.
  const Eigen::MatrixXd& raw_samples() const { return raw_; }

  /// Max deviation of the corrected modes from the raw continuum samples.
  double correction_magnitude() const {
    return (modes_ - raw_).cwiseAbs().maxCoeff();
  }

 private:
  int n_ = 0;
  int k_ = 0;
  double h_ = 0.0;
  Eigen::MatrixXd modes_;     // n x K
  Eigen::MatrixXd analysis_;  // K x n
  Eigen::MatrixXd raw_;       // n x K
};

}  // namespace dgpe
