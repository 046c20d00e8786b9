#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace music::solvers {

// ============================================================================
// GridSpec and FieldSeries: regular space-time sampling of one variable.
// Values are laid out [t][y][x] ([t][x] in 1D, ny = 1).
// ============================================================================

struct GridSpec {
  int nx = 1, ny = 1, nt = 1;
  double x0 = 0.0, dx = 1.0;
  double y0 = 0.0, dy = 0.0;
  double t0 = 0.0, dt_save = 1.0;
  double solver_dt = 0.0;

  bool is_1d() const { return ny == 1; }
  double x(int i) const { return x0 + i * dx; }
  double y(int j) const { return y0 + j * dy; }
  double t(int k) const { return t0 + k * dt_save; }
  double x_last() const { return x(nx - 1); }
  double y_last() const { return ny > 1 ? y(ny - 1) : y0; }
  double t_last() const { return t(nt - 1); }
  std::size_t frame_size() const { return static_cast<std::size_t>(nx) * ny; }
  std::size_t total_size() const { return frame_size() * static_cast<std::size_t>(nt); }

  bool same_layout(const GridSpec& o) const {
    return nx == o.nx && ny == o.ny && nt == o.nt && x0 == o.x0 && dx == o.dx && y0 == o.y0 &&
           dy == o.dy && t0 == o.t0 && dt_save == o.dt_save;
  }
};

struct FieldSeries {
  std::string name;
  GridSpec grid;
  std::vector<double> values;  // [t][y][x]

  FieldSeries() = default;
  FieldSeries(std::string n, const GridSpec& g)
      : name(std::move(n)), grid(g), values(g.total_size(), 0.0) {}

  double& at(int k, int j, int i) {
    return values[(static_cast<std::size_t>(k) * grid.ny + j) * grid.nx + i];
  }
  double at(int k, int j, int i) const {
    return values[(static_cast<std::size_t>(k) * grid.ny + j) * grid.nx + i];
  }
  // 1D convenience
  double& at(int k, int i) { return at(k, 0, i); }
  double at(int k, int i) const { return at(k, 0, i); }

  double min_value() const;
  double max_value() const;
  void check_finite() const;  // throws on NaN/Inf
};

// ----------------------------------------------------------------------------
// Dataset container on disk: manifest.txt plus one raw little-endian float64
// file per variable. Round-trips are bit exact.
// ----------------------------------------------------------------------------

struct DatasetFiles {
  std::string system;                          // swe | fn | rd | wildfire
  std::uint64_t seed = 0;
  std::vector<FieldSeries> fields;
  std::map<std::string, std::string> metadata;  // constants etc., echoed verbatim
};

void write_dataset_dir(const std::string& dir, const DatasetFiles& data);
DatasetFiles read_dataset_dir(const std::string& dir);

/// Content hash over the manifest and every field payload.
std::uint64_t dataset_digest(const std::string& dir);

}  // namespace music::solvers
