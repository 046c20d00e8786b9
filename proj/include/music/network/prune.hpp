#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "music/network/params.hpp"

namespace music::net {

// ============================================================================
// Top-k hard thresholding over all weights and biases.
//
// Flat index order: per layer, weights row-major, then biases. Exactly k
// entries stay unmasked (ties broken toward the earlier flat index); all
// other entries are masked and set to 0. Unmasked values are unchanged.
// ============================================================================

inline void prune_topk(NetParams& p, int k) {
  const int total = p.param_count();
  if (k <= 0 || k > total)
    throw std::invalid_argument("prune_topk: k must lie in [1, " + std::to_string(total) +
                                "], got " + std::to_string(k));

  struct Entry {
    double mag;
    int flat;
  };
  std::vector<Entry> entries;
  entries.reserve(total);
  int flat = 0;
  for (std::size_t l = 0; l < p.weights().size(); ++l) {
    const auto& w = p.weights()[l];
    for (Eigen::Index i = 0; i < w.rows(); ++i)
      for (Eigen::Index j = 0; j < w.cols(); ++j) entries.push_back({std::abs(w(i, j)), flat++});
    const auto& b = p.biases()[l];
    for (Eigen::Index i = 0; i < b.size(); ++i) entries.push_back({std::abs(b(i)), flat++});
  }

  std::nth_element(entries.begin(), entries.begin() + (k - 1), entries.end(),
                   [](const Entry& a, const Entry& b) {
                     return a.mag != b.mag ? a.mag > b.mag : a.flat < b.flat;
                   });
  std::vector<char> keep(total, 0);
  for (int i = 0; i < k; ++i) keep[entries[i].flat] = 1;

  auto& W = p.mutable_weights();
  auto& B = p.mutable_biases();
  auto& WM = p.mutable_weight_mask();
  auto& BM = p.mutable_bias_mask();
  flat = 0;
  for (std::size_t l = 0; l < W.size(); ++l) {
    for (Eigen::Index i = 0; i < W[l].rows(); ++i)
      for (Eigen::Index j = 0; j < W[l].cols(); ++j, ++flat) {
        WM[l](i, j) = keep[flat] ? 1.0 : 0.0;
        if (!keep[flat]) W[l](i, j) = 0.0;
      }
    for (Eigen::Index i = 0; i < B[l].size(); ++i, ++flat) {
      BM[l](i) = keep[flat] ? 1.0 : 0.0;
      if (!keep[flat]) B[l](i) = 0.0;
    }
  }
}

}  // namespace music::net
