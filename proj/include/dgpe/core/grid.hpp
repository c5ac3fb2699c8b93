#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "dgpe/core/errors.hpp"
#include "dgpe/core/hermite.hpp"

namespace dgpe {

namespace detail {
inline bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace detail

// Tensorized discretization of R^{3-d}_x x R^d_z. Arrays are stored
// row-major with the x axes slowest and the z axes fastest, so each x point
// owns a contiguous z block.
//
// Wavenumbers follow FFT ordering with spacing pi/half_width; coordinates
// run from -half_width with spacing 2*half_width/n.
class Grid {
 public:
  Grid() = default;

  static Grid make(int d, double x_half_width, int n_x, double z_half_width,
                   int n_z, int k_z) {
    if (d != 1 && d != 2) throw ConfigError("grid: d must be 1 or 2");
    if (!detail::is_pow2(n_x) || !detail::is_pow2(n_z))
      throw ConfigError("grid: point counts must be powers of two");
    if (x_half_width <= 0.0 || z_half_width <= 0.0)
      throw ConfigError("grid: half-widths must be positive");
    if (k_z > n_z) throw ConfigError("grid: K_z exceeds n_z");
    if (k_z < 1) throw ConfigError("grid: K_z must be at least 1");
    Grid g;
    auto data = std::make_shared<Data>();
    data->d = d;
    data->x_half_width = x_half_width;
    data->z_half_width = z_half_width;
    data->n_x = n_x;
    data->n_z = n_z;
    data->k_z = k_z;
    data->x_coords = coords(x_half_width, n_x);
    data->z_coords = coords(z_half_width, n_z);
    data->x_waves = waves(x_half_width, n_x);
    data->z_waves = waves(z_half_width, n_z);
    data->hermite = HermiteBasis1D(data->z_coords, 2.0 * z_half_width / n_z, k_z);
    g.data_ = std::move(data);
    return g;
  }

  int d() const { return data_->d; }
  int x_axes() const { return 3 - data_->d; }
  int z_axes() const { return data_->d; }
  int n_x() const { return data_->n_x; }
  int n_z() const { return data_->n_z; }
  int k_z() const { return data_->k_z; }
  double x_half_width() const { return data_->x_half_width; }
  double z_half_width() const { return data_->z_half_width; }
  double x_spacing() const { return 2.0 * data_->x_half_width / data_->n_x; }
  double z_spacing() const { return 2.0 * data_->z_half_width / data_->n_z; }

  std::size_t x_points() const {
    std::size_t p = 1;
    for (int a = 0; a < x_axes(); ++a) p *= static_cast<std::size_t>(data_->n_x);
    return p;
  }
  std::size_t z_points() const {
    std::size_t p = 1;
    for (int a = 0; a < z_axes(); ++a) p *= static_cast<std::size_t>(data_->n_z);
    return p;
  }
  std::size_t total_points() const { return x_points() * z_points(); }

  /// Product of grid spacings (discrete volume element).
  double cell_volume() const {
    return std::pow(x_spacing(), x_axes()) * std::pow(z_spacing(), z_axes());
  }

  const std::vector<double>& x_coords() const { return data_->x_coords; }
  const std::vector<double>& z_coords() const { return data_->z_coords; }
  const std::vector<double>& x_wavenumbers() const { return data_->x_waves; }
  const std::vector<double>& z_wavenumbers() const { return data_->z_waves; }

  const HermiteBasis1D& hermite() const { return data_->hermite; }

  /// Row-major dims, x axes first then z axes.
  std::vector<int> dims() const {
    std::vector<int> ds;
    for (int a = 0; a < x_axes(); ++a) ds.push_back(data_->n_x);
    for (int a = 0; a < z_axes(); ++a) ds.push_back(data_->n_z);
    return ds;
  }

  bool compatible(const Grid& other) const {
    return data_->d == other.data_->d && data_->n_x == other.data_->n_x &&
           data_->n_z == other.data_->n_z && data_->k_z == other.data_->k_z &&
           data_->x_half_width == other.data_->x_half_width &&
           data_->z_half_width == other.data_->z_half_width;
  }

  bool valid() const { return static_cast<bool>(data_); }

 private:
  struct Data {
    int d = 1;
    double x_half_width = 0.0, z_half_width = 0.0;
    int n_x = 0, n_z = 0, k_z = 0;
    std::vector<double> x_coords, z_coords, x_waves, z_waves;
    HermiteBasis1D hermite;
  };

  static std::vector<double> coords(double half_width, int n) {
    std::vector<double> c(n);
    const double h = 2.0 * half_width / n;
    for (int j = 0; j < n; ++j) c[j] = -half_width + j * h;
    return c;
  }

  static std::vector<double> waves(double half_width, int n) {
    std::vector<double> k(n);
    const double dk = M_PI / half_width;
    for (int j = 0; j < n; ++j) k[j] = dk * (j < n / 2 ? j : j - n);
    return k;
  }

  std::shared_ptr<const Data> data_;
};

}  // namespace dgpe
