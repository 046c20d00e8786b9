#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "music/autodiff/tape.hpp"

namespace music::net {

// ============================================================================
// Hard-concrete neuron gates.
//
// Training draw:  s = sigmoid((log u - log(1-u) + log_alpha)/beta)*(r-l) + l,
//                 z = min(1, max(0, s)),  u ~ Uniform(0,1).
// Evaluation:     z = min(1, max(0, sigmoid(log_alpha)*(r-l) + l)).
// ============================================================================

struct GateConfig {
  double beta = 2.0 / 3.0;
  double stretch_l = -0.1;
  double stretch_r = 1.1;
  bool stretched_penalty = false;  // default is the plain sum of sigmoids

  void validate() const {
    if (!(beta > 0.0)) throw std::invalid_argument("GateConfig: beta must be > 0");
    if (!(stretch_l < 0.0 && stretch_r > 1.0))
      throw std::invalid_argument("GateConfig: need l < 0 < 1 < r");
  }
};

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

/// Stochastic training-mode gates. u entries must lie strictly in (0,1).
inline Eigen::VectorXd sample_gates(const Eigen::VectorXd& log_alpha, const GateConfig& cfg,
                                    const Eigen::VectorXd& u) {
  cfg.validate();
  if (u.size() != log_alpha.size())
    throw std::invalid_argument("sample_gates: u size does not match gate count");
  Eigen::VectorXd z(log_alpha.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    const double uj = u[j];
    if (!(uj > 0.0 && uj < 1.0))
      throw std::invalid_argument("sample_gates: u must be strictly inside (0,1)");
    const double s =
        sigmoid((std::log(uj) - std::log1p(-uj) + log_alpha[j]) / cfg.beta) *
            (cfg.stretch_r - cfg.stretch_l) +
        cfg.stretch_l;
    z[j] = std::min(1.0, std::max(0.0, s));
  }
  return z;
}

/// d z / d log_alpha for the same draw (zero where the clamp saturates).
inline Eigen::VectorXd sample_gates_dalpha(const Eigen::VectorXd& log_alpha, const GateConfig& cfg,
                                           const Eigen::VectorXd& u) {
  Eigen::VectorXd dz(log_alpha.size());
  for (Eigen::Index j = 0; j < dz.size(); ++j) {
    const double pre = (std::log(u[j]) - std::log1p(-u[j]) + log_alpha[j]) / cfg.beta;
    const double sig = sigmoid(pre);
    const double s = sig * (cfg.stretch_r - cfg.stretch_l) + cfg.stretch_l;
    dz[j] = (s > 0.0 && s < 1.0)
                ? sig * (1.0 - sig) * (cfg.stretch_r - cfg.stretch_l) / cfg.beta
                : 0.0;
  }
  return dz;
}

/// Deterministic evaluation-mode gates.
inline Eigen::VectorXd eval_gates(const Eigen::VectorXd& log_alpha, const GateConfig& cfg) {
  cfg.validate();
  Eigen::VectorXd z(log_alpha.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    const double s = sigmoid(log_alpha[j]) * (cfg.stretch_r - cfg.stretch_l) + cfg.stretch_l;
    z[j] = std::min(1.0, std::max(0.0, s));
  }
  return z;
}

/// L0 penalty. Plain form: sum_j sigmoid(a_j). Stretched form subtracts
/// beta*log(-l/r) inside the sigmoid.
inline double l0_penalty(const Eigen::VectorXd& log_alpha, const GateConfig& cfg) {
  const double shift = cfg.stretched_penalty
                           ? cfg.beta * std::log(-cfg.stretch_l / cfg.stretch_r)
                           : 0.0;
  double p = 0.0;
  for (Eigen::Index j = 0; j < log_alpha.size(); ++j) p += sigmoid(log_alpha[j] - shift);
  return p;
}

/// d(l0_penalty)/d(log_alpha).
inline Eigen::VectorXd l0_penalty_grad(const Eigen::VectorXd& log_alpha, const GateConfig& cfg) {
  const double shift = cfg.stretched_penalty
                           ? cfg.beta * std::log(-cfg.stretch_l / cfg.stretch_r)
                           : 0.0;
  Eigen::VectorXd g(log_alpha.size());
  for (Eigen::Index j = 0; j < g.size(); ++j) {
    const double s = sigmoid(log_alpha[j] - shift);
    g[j] = s * (1.0 - s);
  }
  return g;
}

// Taped versions (used when the gate parameters are tape leaves).

inline ad::Var gate_train_taped(ad::Var log_alpha, const GateConfig& cfg, double u) {
  ad::Var pre = (std::log(u) - std::log1p(-u) + log_alpha) * (1.0 / cfg.beta);
  ad::Var s = ad::logistic(pre) * (cfg.stretch_r - cfg.stretch_l) + cfg.stretch_l;
  return ad::clamp(s, 0.0, 1.0);
}

inline ad::Var gate_eval_taped(ad::Var log_alpha, const GateConfig& cfg) {
  ad::Var s = ad::logistic(log_alpha) * (cfg.stretch_r - cfg.stretch_l) + cfg.stretch_l;
  return ad::clamp(s, 0.0, 1.0);
}

}  // namespace music::net
