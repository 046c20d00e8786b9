#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "music/common.hpp"
#include "music/network/activation.hpp"

namespace music::net {

// ============================================================================
// NetParams: weights, biases, per-hidden-neuron gate parameters (log alpha)
// and a {0,1} mask used by top-k pruning. Layer l maps in_l -> out_l with
// weights()[l] of shape out_l x in_l. Hidden layers all have width H; there
// are layers()-1 hidden (gated) activations.
// ============================================================================

struct NetShape {
  int input_dim = 2;
  int output_dim = 2;
  int hidden_width = 20;
  int layers = 4;  // number of weight matrices; hidden activations = layers-1

  int hidden_neurons() const { return (layers - 1) * hidden_width; }

  std::vector<std::pair<int, int>> layer_dims() const {
    if (layers < 2) throw std::invalid_argument("NetShape: need at least 2 layers");
    std::vector<std::pair<int, int>> dims;
    int in = input_dim;
    for (int l = 0; l < layers; ++l) {
      int out = (l == layers - 1) ? output_dim : hidden_width;
      dims.emplace_back(out, in);
      in = out;
    }
    return dims;
  }
};

class NetParams {
 public:
  NetParams() = default;

  NetParams(const NetShape& shape, Activation act) : shape_(shape), act_(act) {
    for (auto [out, in] : shape.layer_dims()) {
      w_.emplace_back(Eigen::MatrixXd::Zero(out, in));
      b_.emplace_back(Eigen::VectorXd::Zero(out));
      w_mask_.emplace_back(Eigen::MatrixXd::Ones(out, in));
      b_mask_.emplace_back(Eigen::VectorXd::Ones(out));
    }
    gate_log_alpha_ = Eigen::VectorXd::Zero(shape.hidden_neurons());
  }

  /// Glorot-uniform weight init; gate log-alphas start at 2 (gates open).
  static NetParams glorot(const NetShape& shape, Activation act, Rng& rng) {
    NetParams p(shape, act);
    for (auto& w : p.w_) {
      const double bound = std::sqrt(6.0 / (w.rows() + w.cols()));
      for (Eigen::Index j = 0; j < w.cols(); ++j)
        for (Eigen::Index i = 0; i < w.rows(); ++i) w(i, j) = rng.uniform(-bound, bound);
    }
    p.gate_log_alpha_.setConstant(2.0);
    return p;
  }

  const NetShape& shape() const { return shape_; }
  Activation activation() const { return act_; }
  int layers() const { return shape_.layers; }

  const std::vector<Eigen::MatrixXd>& weights() const { return w_; }
  const std::vector<Eigen::VectorXd>& biases() const { return b_; }
  const Eigen::VectorXd& gate_log_alpha() const { return gate_log_alpha_; }
  const std::vector<Eigen::MatrixXd>& weight_mask() const { return w_mask_; }
  const std::vector<Eigen::VectorXd>& bias_mask() const { return b_mask_; }

  // Mutators bump the version counter, which invalidates outstanding tapes.
  std::vector<Eigen::MatrixXd>& mutable_weights() { ++version_; return w_; }
  std::vector<Eigen::VectorXd>& mutable_biases() { ++version_; return b_; }
  Eigen::VectorXd& mutable_gate_log_alpha() { ++version_; return gate_log_alpha_; }
  std::vector<Eigen::MatrixXd>& mutable_weight_mask() { ++version_; return w_mask_; }
  std::vector<Eigen::VectorXd>& mutable_bias_mask() { ++version_; return b_mask_; }

  std::uint64_t version() const { return version_; }

  /// Total number of weights and biases.
  int param_count() const {
    int n = 0;
    for (std::size_t l = 0; l < w_.size(); ++l)
      n += static_cast<int>(w_[l].size() + b_[l].size());
    return n;
  }

  /// Number of mask-active weights and biases.
  int active_count() const {
    double n = 0;
    for (std::size_t l = 0; l < w_.size(); ++l) n += w_mask_[l].sum() + b_mask_[l].sum();
    return static_cast<int>(n + 0.5);
  }

 private:
  NetShape shape_;
  Activation act_ = Activation::kTanh;
  std::vector<Eigen::MatrixXd> w_, w_mask_;
  std::vector<Eigen::VectorXd> b_, b_mask_;
  Eigen::VectorXd gate_log_alpha_;
  std::uint64_t version_ = 0;
};

// ----------------------------------------------------------------------------
// Gradient (or Adam-moment) storage shaped like a NetParams
// ----------------------------------------------------------------------------

struct GradTensors {
  std::vector<Eigen::MatrixXd> w;
  std::vector<Eigen::VectorXd> b;
  Eigen::VectorXd gate_log_alpha;

  static GradTensors zeros_like(const NetParams& p) {
    GradTensors g;
    for (const auto& wl : p.weights()) g.w.emplace_back(Eigen::MatrixXd::Zero(wl.rows(), wl.cols()));
    for (const auto& bl : p.biases()) g.b.emplace_back(Eigen::VectorXd::Zero(bl.size()));
    g.gate_log_alpha = Eigen::VectorXd::Zero(p.gate_log_alpha().size());
    return g;
  }

  void add(const GradTensors& o) {
    for (std::size_t l = 0; l < w.size(); ++l) {
      w[l] += o.w[l];
      b[l] += o.b[l];
    }
    gate_log_alpha += o.gate_log_alpha;
  }

  void scale(double c) {
    for (std::size_t l = 0; l < w.size(); ++l) {
      w[l] *= c;
      b[l] *= c;
    }
    gate_log_alpha *= c;
  }
};

}  // namespace music::net
