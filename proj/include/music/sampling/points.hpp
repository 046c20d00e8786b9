#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace music::sampling {

// ============================================================================
// PointBatch: mesh-free training/validation samples.
//
// Coordinates are stored normalized, ordered (x[, y], t) column-wise, one
// column per sample. Data-variable targets are normalized (identity map for
// systems trained without normalization). The IC subset holds the sampled
// spatial sites at the dataset's initial time with equation-variable targets.
// ============================================================================

struct PointBatch {
  Eigen::MatrixXd coords;          // (d+1) x N
  Eigen::MatrixXd targets;         // n_data x N, possibly noisy
  Eigen::MatrixXd clean_targets;   // n_data x N
  Eigen::MatrixXd ic_coords;       // (d+1) x N_ic
  Eigen::MatrixXd ic_targets;      // n_eq x N_ic
  double noise_level = 0.0;
  std::uint64_t seed = 0;

  // grid provenance (site-major ordering used at sampling time)
  std::vector<int> site_index;     // flattened spatial site per sample
  std::vector<int> time_index;     // saved time level per sample

  int size() const { return static_cast<int>(coords.cols()); }
  int ic_size() const { return static_cast<int>(ic_coords.cols()); }
};

struct SplitSpec {
  int n_spatial = 100;      // total spatial sites (N_s or N_sx*N_sy)
  int n_time = 800;         // time levels
  double train_fraction = 0.8;
  double forecast_cut = -1.0;  // t1 in normalized time; < 0 means no cut
};

}  // namespace music::sampling
