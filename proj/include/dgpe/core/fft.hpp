#pragma once

#include <fftw3.h>

#include <array>
#include <cmath>
#include <complex>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace dgpe::fft {

// Thin wrapper over FFTW double-precision c2c transforms.
//
// Plans are created with FFTW_ESTIMATE only (timing-based planners would make
// results depend on machine load, breaking byte-reproducibility) and cached
// per layout. Planning is serialized behind a mutex; execution uses the
// new-array interface on per-call fftw_malloc'd scratch, so concurrent
// transforms on distinct fields are safe.

struct Layout {
  std::vector<int> dims;  // transformed dimensions, slowest first
  int howmany = 1;
  int stride = 1;  // stride between consecutive samples of one transform
  int dist = 1;    // distance between first samples of consecutive transforms
  int sign = FFTW_FORWARD;

  auto operator<=>(const Layout&) const = default;
};

namespace detail {

inline fftw_plan make_plan(const Layout& lay, std::complex<double>* buf) {
  auto* p = reinterpret_cast<fftw_complex*>(buf);
  return fftw_plan_many_dft(static_cast<int>(lay.dims.size()), lay.dims.data(),
                            lay.howmany, p, nullptr, lay.stride, lay.dist, p,
                            nullptr, lay.stride, lay.dist, lay.sign,
                            FFTW_ESTIMATE);
}

struct PlanCache {
  std::mutex mtx;
  std::map<Layout, fftw_plan> plans;

  fftw_plan get(const Layout& lay, std::complex<double>* buf) {
    std::lock_guard lock(mtx);
    auto it = plans.find(lay);
    if (it != plans.end()) return it->second;
    fftw_plan p = make_plan(lay, buf);
    plans.emplace(lay, p);
    return p;
  }
};

inline PlanCache& cache() {
  static PlanCache c;
  return c;
}

struct ScratchDeleter {
  void operator()(std::complex<double>* p) const { fftw_free(p); }
};
using Scratch = std::unique_ptr<std::complex<double>[], ScratchDeleter>;

inline Scratch alloc(std::size_t n) {
  return Scratch(static_cast<std::complex<double>*>(fftw_malloc(n * sizeof(std::complex<double>))));
}

}  // namespace detail

/// In-place unnormalized c2c transform of `data` described by `lay`.
/// `total` is the number of complex values covered by the layout.
inline void execute(const Layout& lay, std::complex<double>* data, std::size_t total) {
  auto scratch = detail::alloc(total);
  std::memcpy(scratch.get(), data, total * sizeof(std::complex<double>));
  fftw_plan plan = detail::cache().get(lay, scratch.get());
  auto* p = reinterpret_cast<fftw_complex*>(scratch.get());
  fftw_execute_dft(plan, p, p);
  std::memcpy(data, scratch.get(), total * sizeof(std::complex<double>));
}

/// Unitary transform over all `dims` (row-major contiguous array).
inline void transform_all(std::complex<double>* data, const std::vector<int>& dims, int sign) {
  std::size_t total = 1;
  for (int n : dims) total *= static_cast<std::size_t>(n);
  Layout lay{dims, 1, 1, 1, sign};
  execute(lay, data, total);
  const double scale = 1.0 / std::sqrt(static_cast<double>(total));
  for (std::size_t i = 0; i < total; ++i) data[i] *= scale;
}

/// Unitary transform over the leading `lead` axes of a row-major array whose
/// trailing axes have `trail` total points (one transform per trailing index).
inline void transform_leading(std::complex<double>* data, const std::vector<int>& lead_dims,
                              int trail, int sign) {
  std::size_t lead_total = 1;
  for (int n : lead_dims) lead_total *= static_cast<std::size_t>(n);
  Layout lay{lead_dims, trail, trail, 1, sign};
  execute(lay, data, lead_total * static_cast<std::size_t>(trail));
  const double scale = 1.0 / std::sqrt(static_cast<double>(lead_total));
  const std::size_t total = lead_total * static_cast<std::size_t>(trail);
  for (std::size_t i = 0; i < total; ++i) data[i] *= scale;
}

}  // namespace dgpe::fft
