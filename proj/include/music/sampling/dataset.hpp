#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "music/network/normalizer.hpp"
#include "music/sampling/points.hpp"
#include "music/solvers/field.hpp"
#include "music/systems/system.hpp"

namespace music::sampling {

// ============================================================================
// Dataset: the stored ground-truth fields (physical units) together with
// the fitted min-max normalizer. Input coordinates normalize over the grid
// site extents, outputs over each field's value range; the RD system keeps
// identity maps throughout.
// ============================================================================

struct Dataset {
  systems::SystemSpec spec;
  std::vector<solvers::FieldSeries> fields;  // ordered per spec.variables
  net::Normalizer norm;
  std::uint64_t seed = 0;

  const solvers::GridSpec& grid() const { return fields.at(0).grid; }
  int n_sites() const { return grid().nx * grid().ny; }

  double normalized_time(int level) const {
    return norm.normalize_input(spec.time_coord(), grid().t(level));
  }

  /// Normalized (x[, y], t) coordinates of a grid site at a time level.
  Eigen::VectorXd normalized_coords(int site, int level) const;

  double value(int var, int site, int level) const {
    const auto& g = grid();
    return fields[var].at(level, site / g.nx, site % g.nx);
  }
};

/// Validate a field set against a system spec and fit the normalizer.
Dataset build_dataset(std::vector<solvers::FieldSeries> fields, const systems::SystemSpec& spec);

/// Load a dataset container directory and rebuild the normalizer.
Dataset load_dataset(const std::string& dir, bool swapped = false);

// ----------------------------------------------------------------------------
// Mesh-free sampling and noise
// ----------------------------------------------------------------------------

/// Draw n_spatial sites and n_time levels without replacement, take their
/// Cartesian product, split 80/20 by shuffle. The train batch carries the
/// IC subset (all drawn sites at the initial level, equation-variable
/// targets). With spec.forecast_cut >= 0 the time draw is restricted to
/// normalized t <= cut.
std::pair<PointBatch, PointBatch> sample_meshfree(const Dataset& ds, const SplitSpec& spec,
                                                  std::uint64_t seed);

/// Additive Gaussian noise on data-variable targets:
/// target += level * std(clean targets) * eta. IC targets are untouched.
PointBatch add_noise(const PointBatch& batch, double level, std::uint64_t seed);

/// Time levels on each side of the forecast cut t1 (normalized).
struct TimeWindows {
  std::vector<int> train_levels;
  std::vector<int> forecast_levels;
};
TimeWindows time_window_split(const Dataset& ds, double t1);

}  // namespace music::sampling
