#pragma once

#include <Eigen/Dense>
#include <atomic>
#include <iostream>
#include <span>
#include <vector>

#include "music/autodiff/jet.hpp"
#include "music/autodiff/tape.hpp"
#include "music/network/activation.hpp"
#include "music/network/gates.hpp"
#include "music/network/normalizer.hpp"
#include "music/network/params.hpp"

namespace music::net {

template <class S>
ad::Jet2<S> smul(const S& c, const ad::Jet2<S>& a) {
  return {c * a.v, c * a.d1, c * a.d2};
}

// ----------------------------------------------------------------------------
// Core jet propagation, shared by the plain double path and the taped path.
// PV supplies weight(l,i,j), bias(l,i) and gate(j) as scalars of type S.
// ----------------------------------------------------------------------------

template <class S, class PV>
std::vector<ad::Jet2<S>> jet_propagate(const NetShape& shape, Activation activation, const PV& pv,
                                       std::vector<ad::Jet2<S>> a) {
  const auto dims = shape.layer_dims();
  int gate_base = 0;
  for (int l = 0; l < shape.layers; ++l) {
    const auto [out, in] = dims[l];
    if (static_cast<int>(a.size()) != in)
      throw std::invalid_argument("forward: input size mismatch at layer " + std::to_string(l) +
                                  " (expected " + std::to_string(in) + ", got " +
                                  std::to_string(a.size()) + ")");
    std::vector<ad::Jet2<S>> z(out);
    for (int i = 0; i < out; ++i) {
      ad::Jet2<S> acc = ad::jet_const<S>(pv.bias(l, i));
      for (int j = 0; j < in; ++j) acc = acc + smul(pv.weight(l, i, j), a[j]);
      z[i] = acc;
    }
    if (l < shape.layers - 1) {
      for (int i = 0; i < out; ++i) {
        const S phi = act(activation, z[i].v);
        const S dphi = act_d1(activation, z[i].v);
        const S ddphi = act_d2(activation, z[i].v);
        z[i] = smul(pv.gate(gate_base + i), ad::jet_apply(phi, dphi, ddphi, z[i]));
      }
      gate_base += out;
    }
    a = std::move(z);
  }
  return a;
}

namespace detail {

struct DoubleParamView {
  const NetParams* p;
  const Eigen::VectorXd* gates;
  double weight(int l, int i, int j) const { return p->weights()[l](i, j); }
  double bias(int l, int i) const { return p->biases()[l](i); }
  double gate(int j) const { return (*gates)(j); }
};

inline void soft_input_check(const Eigen::VectorXd& input) {
  static std::atomic<bool> warned{false};
  for (Eigen::Index i = 0; i < input.size(); ++i) {
    if (input[i] < -0.5 || input[i] > 1.5) {
      if (!warned.exchange(true))
        std::cerr << "warning: network input outside [-0.5, 1.5] (value " << input[i]
                  << "); further occurrences are not reported\n";
      return;
    }
  }
}

}  // namespace detail

inline void check_gate_count(const NetParams& p, const Eigen::VectorXd& gates) {
  if (gates.size() != p.shape().hidden_neurons())
    throw std::invalid_argument("forward: gate vector length " + std::to_string(gates.size()) +
                                " does not match hidden neuron count " +
                                std::to_string(p.shape().hidden_neurons()));
}

/// Plain forward pass on normalized inputs.
inline Eigen::VectorXd forward(const NetParams& p, const Eigen::VectorXd& gates,
                               const Eigen::VectorXd& input) {
  check_gate_count(p, gates);
  detail::soft_input_check(input);
  std::vector<ad::Jet2<double>> jets(input.size());
  for (Eigen::Index i = 0; i < input.size(); ++i) jets[i] = {input[i], 0.0, 0.0};
  auto out = jet_propagate<double>(p.shape(), p.activation(),
                                   detail::DoubleParamView{&p, &gates}, std::move(jets));
  Eigen::VectorXd y(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) y[static_cast<Eigen::Index>(i)] = out[i].v;
  return y;
}

/// Jets of every output along one (normalized) input coordinate.
inline std::vector<ad::Jet2<double>> jet_eval(const NetParams& p, const Eigen::VectorXd& gates,
                                              const Eigen::VectorXd& input, int dir) {
  check_gate_count(p, gates);
  if (dir < 0 || dir >= input.size())
    throw std::invalid_argument("jet_eval: direction index " + std::to_string(dir) +
                                " out of range for " + std::to_string(input.size()) + " inputs");
  std::vector<ad::Jet2<double>> jets(input.size());
  for (Eigen::Index i = 0; i < input.size(); ++i)
    jets[i] = {input[i], i == dir ? 1.0 : 0.0, 0.0};
  return jet_propagate<double>(p.shape(), p.activation(), detail::DoubleParamView{&p, &gates},
                               std::move(jets));
}

/// Jets in physical units: normalize the input point, propagate with a
/// 1/range seed, then denormalize values and scale derivatives by the
/// output range.
inline std::vector<ad::Jet2<double>> physical_jets(const NetParams& p,
                                                   const Eigen::VectorXd& gates,
                                                   const Normalizer& norm,
                                                   const Eigen::VectorXd& phys_input, int dir) {
  check_gate_count(p, gates);
  if (dir < 0 || dir >= phys_input.size())
    throw std::invalid_argument("physical_jets: direction index out of range");
  if (norm.input_dim() != phys_input.size() || norm.output_dim() != p.shape().output_dim)
    throw std::invalid_argument("physical_jets: normalizer does not cover inputs/outputs");
  std::vector<ad::Jet2<double>> jets(phys_input.size());
  for (Eigen::Index i = 0; i < phys_input.size(); ++i) {
    const double x = norm.normalize_input(static_cast<int>(i), phys_input[i]);
    jets[i] = {x, i == dir ? 1.0 / norm.input(dir).span() : 0.0, 0.0};
  }
  auto out = jet_propagate<double>(p.shape(), p.activation(), detail::DoubleParamView{&p, &gates},
                                   std::move(jets));
  for (int v = 0; v < static_cast<int>(out.size()); ++v) {
    const double s = norm.output(v).span();
    out[v].v = norm.output(v).min + s * out[v].v;
    out[v].d1 *= s;
    out[v].d2 *= s;
  }
  return out;
}

// ============================================================================
// TapedModel: the full jet propagation recorded on a scalar tape, so that a
// loss built from the resulting jets can be differentiated with respect to
// every weight, bias and gate log-alpha in one backward sweep.
// ============================================================================

enum class GateMode { kNone, kTrainSample, kEval };

class TapedModel {
 public:
  TapedModel(const NetParams& p, const GateConfig& gcfg, GateMode mode,
             std::span<const double> u_draws = {})
      : params_(&p), gcfg_(gcfg), version_(p.version()) {
    const auto dims = p.shape().layer_dims();
    for (int l = 0; l < p.layers(); ++l) {
      const auto [out, in] = dims[l];
      w_ids_.emplace_back();
      b_ids_.emplace_back();
      for (int i = 0; i < out; ++i) {
        for (int j = 0; j < in; ++j) w_ids_[l].push_back(tape_.leaf(p.weights()[l](i, j)));
        b_ids_[l].push_back(tape_.leaf(p.biases()[l](i)));
      }
    }
    const int n_gates = p.shape().hidden_neurons();
    for (int j = 0; j < n_gates; ++j) alpha_ids_.push_back(tape_.leaf(p.gate_log_alpha()[j]));
    gates_.reserve(n_gates);
    for (int j = 0; j < n_gates; ++j) {
      ad::Var alpha(&tape_, alpha_ids_[j]);
      switch (mode) {
        case GateMode::kNone:
          gates_.push_back(alpha.wrap(1.0));
          break;
        case GateMode::kTrainSample:
          if (static_cast<int>(u_draws.size()) != n_gates)
            throw std::invalid_argument("TapedModel: need one uniform draw per gate");
          gates_.push_back(gate_train_taped(alpha, gcfg, u_draws[j]));
          break;
        case GateMode::kEval:
          gates_.push_back(gate_eval_taped(alpha, gcfg));
          break;
      }
    }
  }

  /// Jets of all outputs along `dir`, inputs given in normalized coordinates.
  std::vector<ad::Jet2<ad::Var>> jets(const Eigen::VectorXd& input, int dir) {
    check_version();
    if (dir < 0 || dir >= input.size())
      throw std::invalid_argument("TapedModel::jets: direction index out of range");
    return jets_seeded(input, dir, 1.0);
  }

  /// Jets along `dir` with a custom first-derivative seed (chain-rule factor).
  std::vector<ad::Jet2<ad::Var>> jets_seeded(const Eigen::VectorXd& input, int dir, double seed) {
    check_version();
    std::vector<ad::Jet2<ad::Var>> in(input.size());
    for (Eigen::Index i = 0; i < input.size(); ++i) {
      ad::Var v(&tape_, tape_.constant(input[i]));
      in[i] = {v, v.wrap(i == dir ? seed : 0.0), v.wrap(0.0)};
    }
    return jet_propagate<ad::Var>(params_->shape(), params_->activation(), VarParamView{this},
                                  std::move(in));
  }

  /// Plain outputs (no derivative seeding).
  std::vector<ad::Var> outputs(const Eigen::VectorXd& input) {
    auto j = jets_seeded(input, 0, 0.0);
    std::vector<ad::Var> y;
    y.reserve(j.size());
    for (auto& o : j) y.push_back(o.v);
    return y;
  }

  /// Taped L0 penalty over the gate log-alphas.
  ad::Var penalty() {
    check_version();
    const double shift =
        gcfg_.stretched_penalty ? gcfg_.beta * std::log(-gcfg_.stretch_l / gcfg_.stretch_r) : 0.0;
    ad::Var sum(&tape_, tape_.constant(0.0));
    for (int id : alpha_ids_) sum += ad::logistic(ad::Var(&tape_, id) - shift);
    return sum;
  }

  ad::Var constant(double c) { return {&tape_, tape_.constant(c)}; }

  /// Backward sweep from a scalar loss; gradients shaped like the params.
  GradTensors backward(ad::Var loss) {
    check_version();
    if (loss.tape() != &tape_)
      throw std::invalid_argument("TapedModel::backward: loss not recorded on this model's tape");
    const auto adj = tape_.adjoints(loss.index());
    GradTensors g = GradTensors::zeros_like(*params_);
    const auto dims = params_->shape().layer_dims();
    for (int l = 0; l < params_->layers(); ++l) {
      const auto [out, in] = dims[l];
      for (int i = 0; i < out; ++i) {
        for (int j = 0; j < in; ++j) g.w[l](i, j) = adj[w_ids_[l][i * in + j]];
        g.b[l](i) = adj[b_ids_[l][i]];
      }
    }
    for (std::size_t j = 0; j < alpha_ids_.size(); ++j)
      g.gate_log_alpha[static_cast<Eigen::Index>(j)] = adj[alpha_ids_[j]];
    return g;
  }

  int node_count() const { return tape_.size(); }

 private:
  struct VarParamView {
    TapedModel* m;
    ad::Var weight(int l, int i, int j) const {
      const int in = m->params_->shape().layer_dims()[l].second;
      return {&m->tape_, m->w_ids_[l][i * in + j]};
    }
    ad::Var bias(int l, int i) const { return {&m->tape_, m->b_ids_[l][i]}; }
    ad::Var gate(int j) const { return m->gates_[j]; }
  };

  void check_version() const {
    if (params_->version() != version_)
      throw std::runtime_error(
          "TapedModel: parameters were mutated after the tape was recorded (stale tape)");
  }

  ad::Tape tape_;
  const NetParams* params_;
  GateConfig gcfg_;
  std::uint64_t version_;
  std::vector<std::vector<int>> w_ids_, b_ids_;
  std::vector<int> alpha_ids_;
  std::vector<ad::Var> gates_;
};

}  // namespace music::net
