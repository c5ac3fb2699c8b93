#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "dgpe/harness/sweep.hpp"
#include "dgpe/solver/config.hpp"

namespace dgpe {

namespace detail {

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

/// rates.csv: one row per (norm, ladder point), slope/r2 repeated per group.
inline void write_rates_csv(const SweepResult& result, std::ostream& os) {
  os << "estimate,norm,param,error,slope,r2,t_final,grid,ref_refine\n";
  for (const auto& row : result.rows) {
    os << row.estimate << ',' << row.norm << ',' << detail::fmt_double(row.param) << ','
       << detail::fmt_double(row.error) << ',' << detail::fmt_double(row.slope) << ','
       << detail::fmt_double(row.r_squared) << ',' << detail::fmt_double(result.t_final) << ','
       << result.grid_descriptor << ',' << result.ref_refine << '\n';
  }
}

/// Diagnostics CSV with the fixed column set t,mass,max_mod,B0_norm,B2_norm.
inline void write_diagnostics_csv(const Trajectory& traj, std::ostream& os) {
  os << "t,mass,max_mod,B0_norm,B2_norm\n";
  for (const auto& row : traj.diagnostics) {
    os << detail::fmt_double(row.t) << ',' << detail::fmt_double(row.mass) << ','
       << detail::fmt_double(row.max_mod) << ',' << detail::fmt_double(row.mass) << ','
       << detail::fmt_double(row.b2_norm) << '\n';
  }
}

// Binary trajectory dump: little-endian, fixed-width header then per-snapshot
// time + interleaved re/im doubles.
//   magic "DGPETRAJ", u32 version, u32 d, u32 n_x, u32 n_z, u32 K_z,
//   f64 x_half_width, f64 z_half_width, u64 n_snapshots, u64 points,
//   then for each snapshot: f64 t, points * (f64 re, f64 im).
inline void write_trajectory_binary(const Trajectory& traj, const Grid& g, std::ostream& os) {
  const char magic[8] = {'D', 'G', 'P', 'E', 'T', 'R', 'A', 'J'};
  os.write(magic, 8);
  auto put_u32 = [&](std::uint32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); };
  auto put_u64 = [&](std::uint64_t v) { os.write(reinterpret_cast<const char*>(&v), 8); };
  auto put_f64 = [&](double v) { os.write(reinterpret_cast<const char*>(&v), 8); };
  put_u32(1);
  put_u32(static_cast<std::uint32_t>(g.d()));
  put_u32(static_cast<std::uint32_t>(g.n_x()));
  put_u32(static_cast<std::uint32_t>(g.n_z()));
  put_u32(static_cast<std::uint32_t>(g.k_z()));
  put_f64(g.x_half_width());
  put_f64(g.z_half_width());

  std::vector<std::pair<double, const WaveField*>> snaps;
  for (const auto& [t, f] : traj.snapshots) snaps.emplace_back(t, &f);
  if (snaps.empty() && traj.final_state.grid.valid())
    snaps.emplace_back(traj.diagnostics.empty() ? 0.0 : traj.diagnostics.back().t,
                       &traj.final_state);
  put_u64(snaps.size());
  put_u64(g.total_points());
  for (const auto& [t, f] : snaps) {
    put_f64(t);
    for (const Complex& v : f->values) {
      put_f64(v.real());
      put_f64(v.imag());
    }
  }
}

struct TrajectoryDump {
  int d = 0, n_x = 0, n_z = 0, k_z = 0;
  double x_half_width = 0.0, z_half_width = 0.0;
  std::vector<double> times;
  std::vector<std::vector<Complex>> states;
};

inline TrajectoryDump read_trajectory_binary(std::istream& is) {
  char magic[8];
  is.read(magic, 8);
  if (std::string(magic, 8) != "DGPETRAJ") throw ConfigError("trajectory dump: bad magic");
  auto get_u32 = [&] {
    std::uint32_t v;
    is.read(reinterpret_cast<char*>(&v), 4);
    return v;
  };
  auto get_u64 = [&] {
    std::uint64_t v;
    is.read(reinterpret_cast<char*>(&v), 8);
    return v;
  };
  auto get_f64 = [&] {
    double v;
    is.read(reinterpret_cast<char*>(&v), 8);
    return v;
  };
  TrajectoryDump dump;
  if (get_u32() != 1) throw ConfigError("trajectory dump: unsupported version");
  dump.d = static_cast<int>(get_u32());
  dump.n_x = static_cast<int>(get_u32());
  dump.n_z = static_cast<int>(get_u32());
  dump.k_z = static_cast<int>(get_u32());
  dump.x_half_width = get_f64();
  dump.z_half_width = get_f64();
  const std::uint64_t n_snap = get_u64();
  const std::uint64_t points = get_u64();
  for (std::uint64_t s = 0; s < n_snap; ++s) {
    dump.times.push_back(get_f64());
    std::vector<Complex> vals(points);
    for (std::uint64_t i = 0; i < points; ++i) {
      const double re = get_f64();
      const double im = get_f64();
      vals[i] = Complex(re, im);
    }
    dump.states.push_back(std::move(vals));
  }
  if (!is) throw ConfigError("trajectory dump: truncated file");
  return dump;
}

}  // namespace dgpe
