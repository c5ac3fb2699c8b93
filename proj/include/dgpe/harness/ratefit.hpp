#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "dgpe/core/errors.hpp"

namespace dgpe {

/// Least-squares fit of log(error) against log(parameter).
struct RateFit {
  std::vector<std::pair<double, double>> points;  // (parameter, error)
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

inline RateFit fit_rate(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw ConfigError("fit_rate: need at least 3 points");
  for (const auto& [p, e] : points)
    if (p <= 0.0 || e <= 0.0) throw ConfigError("fit_rate: parameters and errors must be positive");

  const auto n = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [p, e] : points) {
    sx += std::log(p);
    sy += std::log(e);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [p, e] : points) {
    const double dx = std::log(p) - mx, dy = std::log(e) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw ConfigError("fit_rate: parameters must not be all equal");

  RateFit fit;
  fit.points = points;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

}  // namespace dgpe
