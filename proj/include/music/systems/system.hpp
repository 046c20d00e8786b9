#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "music/autodiff/dual.hpp"
#include "music/autodiff/jet.hpp"
#include "music/autodiff/tape.hpp"
#include "music/network/gates.hpp"
#include "music/network/normalizer.hpp"
#include "music/sampling/points.hpp"

namespace music::systems {

enum class SystemId { kSwe, kFn, kRd, kWildfire };

std::string to_string(SystemId id);
SystemId system_from_string(const std::string& s);

struct SweConstants {
  double g = 9.81;
  double eps_h = 1e-6;  // dry-bed desingularization threshold, normalized h units
};

struct FnConstants {
  double gamma_u = 1.0;
  double gamma_v = 100.0;
  double alpha = 0.01;
  double beta = 0.25;
};

struct RdConstants {
  double diffusion = 0.1;
};

struct WildfireConstants {
  double kappa = 0.2;
  double eps = 0.3;
  double alpha = 0.01;
  double q = 1.0;
  double u_pc = 3.0;
};

// ============================================================================
// SystemSpec: variable roles, constants and nominal domain for one of the
// four coupled systems. Data and equation variable sets are disjoint and
// jointly exhaustive.
// ============================================================================

struct SystemSpec {
  SystemId id = SystemId::kSwe;
  int spatial_dim = 1;
  std::vector<std::string> variables;  // network output order
  std::vector<int> data_vars;
  std::vector<int> equation_vars;
  bool swapped = false;  // SWE only: momentum equation as the physics prior

  SweConstants swe;
  FnConstants fn;
  RdConstants rd;
  WildfireConstants wildfire;

  // nominal space-time domain (solver defaults)
  std::array<double, 2> x_extent{0.0, 1.0};
  std::array<double, 2> y_extent{0.0, 0.0};
  std::array<double, 2> t_extent{0.0, 1.0};

  int input_dim() const { return spatial_dim + 1; }
  int n_vars() const { return static_cast<int>(variables.size()); }
  int time_coord() const { return spatial_dim; }

  void validate() const;
};

/// Canonical configuration for each system, with the paper's variable roles.
SystemSpec default_system(SystemId id, bool swapped = false);

// ============================================================================
// Residual operators.
//
// Each system's residual is a scalar function of a small list of channels
// (physical-unit values and derivatives of the predicted variables). The
// formulas are templated on the scalar type so the same code serves plain
// evaluation, forward-mode channel partials, and full tape recording.
// ============================================================================

enum class ChannelKind { kValuePhys, kD1Phys, kD2Phys };

struct ChannelRef {
  int var;           // index into SystemSpec::variables
  ChannelKind kind;
  int coord;         // 0..d-1 spatial, d = time; unused for kValuePhys
};

/// Channel list consumed by residual_value, in order.
std::vector<ChannelRef> residual_channels(const SystemSpec& spec);

/// Jet directions (coordinate, need-second-derivative) required by a system.
struct DirNeed {
  int coord;
  bool second;
};
std::vector<DirNeed> required_directions(const SystemSpec& spec);

inline double scalar_value(double x) { return x; }
template <std::size_t N>
double scalar_value(const ad::DualN<N>& x) { return x.v; }
inline double scalar_value(ad::Var x) { return x.value(); }

namespace detail {

template <class S>
S exp_s(const S& x) {
  using std::exp;
  using ad::exp;
  return exp(x);
}

/// max(jet, constant) with the tie resolved toward the jet (matches the
/// tape max primitive convention).
template <class S>
ad::Jet2<S> jet_max_const(const ad::Jet2<S>& a, double c) {
  if (scalar_value(a.v) >= c) return a;
  S z = ad::zero_like(a.v);
  S cv = z + c;
  return {cv, z, z};
}

}  // namespace detail

/// SWE mass equation: r = h_t + (hu)_x.
template <class S>
S residual_swe(const S& h_t, const S& hu_x) {
  return h_t + hu_x;
}

/// SWE momentum equation (swapped priors), flat bed:
/// r = (hu)_t + (h u^2 + g h^2 / 2)_x with the desingularized velocity
/// u = hu*h / (h^2 + max(h, eps)^2). First derivatives only.
/// `desingularized` is set when h fell below eps at the point.
template <class S>
S residual_swe_swapped(const S& h, const S& h_x, const S& hu, const S& hu_x, const S& hu_t,
                       double g, double eps_h_phys, bool* desingularized = nullptr) {
  using J = ad::Jet2<S>;
  S z = ad::zero_like(h);
  J H{h, h_x, z};
  J HU{hu, hu_x, z};
  if (desingularized && scalar_value(h) < eps_h_phys) *desingularized = true;
  J Hc = detail::jet_max_const(H, eps_h_phys);
  J U = HU * H / (H * H + Hc * Hc);
  J flux = HU * U + 0.5 * g * (H * H);
  return hu_t + flux.d1;
}

/// FN inhibitor equation: r = v_t - gamma_v (v_xx + v_yy) - beta (u - v).
template <class S>
S residual_fn(const S& u, const S& v, const S& v_t, const S& v_xx, const S& v_yy,
              const FnConstants& c) {
  return v_t - c.gamma_v * (v_xx + v_yy) - c.beta * (u - v);
}

/// Lambda-omega RD, u equation:
/// r = u_t - 0.1 (u_xx + u_yy) + u v^2 + u^3 - v^3 - u^2 v - u.
template <class S>
S residual_rd(const S& u, const S& v, const S& u_t, const S& u_xx, const S& u_yy,
              const RdConstants& c) {
  return u_t - c.diffusion * (u_xx + u_yy) + u * v * v + u * u * u - v * v * v - u * u * v - u;
}

/// Wildfire fuel equation: r = b_t - g(u, b) with
/// g = -H_pc(u) (eps/q) b exp(u / (1 + eps u)) and H_pc(u) = [u >= u_pc].
/// u is the physical (denormalized) temperature.
template <class S>
S residual_wildfire(const S& u_phys, const S& b, const S& b_t, const WildfireConstants& c) {
  if (scalar_value(u_phys) >= c.u_pc) {
    return b_t + (c.eps / c.q) * b * detail::exp_s(u_phys / (1.0 + c.eps * u_phys));
  }
  return b_t + ad::zero_like(b_t);
}

/// Residual from the generic channel list (order per residual_channels).
template <class S>
S residual_value(const SystemSpec& spec, std::span<const S> ch, bool* desingularized = nullptr) {
  switch (spec.id) {
    case SystemId::kSwe:
      if (spec.swapped)
        return residual_swe_swapped(ch[0], ch[1], ch[2], ch[3], ch[4], spec.swe.g,
                                    spec.swe.eps_h, desingularized);
      return residual_swe(ch[0], ch[1]);
    case SystemId::kFn:
      return residual_fn(ch[0], ch[1], ch[2], ch[3], ch[4], spec.fn);
    case SystemId::kRd:
      return residual_rd(ch[0], ch[1], ch[2], ch[3], ch[4], spec.rd);
    case SystemId::kWildfire:
      return residual_wildfire(ch[0], ch[1], ch[2], spec.wildfire);
  }
  throw std::invalid_argument("residual_value: bad system id");
}

// ----------------------------------------------------------------------------
// Jet-map interface for the residual operators: one Jet2 per variable per
// requested coordinate, plus physical values. Missing directions raise.
// ----------------------------------------------------------------------------

struct VariableJets {
  double value_phys = 0.0;
  std::array<bool, 3> has{false, false, false};
  std::array<ad::Jet2<double>, 3> jet{};  // physical-unit jets per coordinate

  const ad::Jet2<double>& along(int coord, const std::string& what) const {
    if (coord < 0 || coord >= 3 || !has[static_cast<std::size_t>(coord)])
      throw std::invalid_argument("residual: missing jet direction for " + what);
    return jet[static_cast<std::size_t>(coord)];
  }
};

/// Residuals of all equation variables at one point (systems here have one).
double residual_at_point(const SystemSpec& spec, std::span<const VariableJets> vars,
                         bool* desingularized = nullptr);

// ============================================================================
// Loss assembly
// ============================================================================

struct LossWeights {
  Eigen::VectorXd lambda_data;  // one per data variable
  Eigen::VectorXd lambda_phys;  // one per equation variable
  double lambda_ic = 1.0;
  double lambda0 = 0.0;

  static LossWeights ones(const SystemSpec& spec, double lambda0 = 0.0) {
    LossWeights w;
    w.lambda_data = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(spec.data_vars.size()));
    w.lambda_phys = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(spec.equation_vars.size()));
    w.lambda_ic = 1.0;
    w.lambda0 = lambda0;
    return w;
  }
};

enum class SparsityMode { kGated, kTopk, kNone };
std::string to_string(SparsityMode m);
SparsityMode sparsity_mode_from_string(const std::string& s);

/// Per-point network outputs over a batch: normalized values plus
/// physical-unit derivative channels for the coordinates a system needs.
struct Predictions {
  Eigen::MatrixXd values;                // n_vars x N (normalized)
  std::array<Eigen::MatrixXd, 3> d1;     // physical units, per coordinate
  std::array<Eigen::MatrixXd, 3> d2;
  Eigen::MatrixXd ic_values;             // n_vars x N_ic (normalized)
};

struct LossBreakdown {
  Eigen::VectorXd data_mse;   // per data variable
  Eigen::VectorXd resid_mse;  // per equation variable
  double ic_mse = 0.0;
  double l0 = 0.0;            // penalty value (gated mode only)
  int desingularized = 0;     // points where the dry-bed guard engaged

  double total(const LossWeights& w) const {
    double t = w.lambda_ic * ic_mse + w.lambda0 * l0;
    for (Eigen::Index i = 0; i < data_mse.size(); ++i) t += w.lambda_data[i] * data_mse[i];
    for (Eigen::Index i = 0; i < resid_mse.size(); ++i) t += w.lambda_phys[i] * resid_mse[i];
    return t;
  }
};

/// Residuals of the equation variables over a batch of predictions
/// (n_eq x N). Used by loss assembly, metrics and tests.
Eigen::MatrixXd residual_batch(const SystemSpec& spec, const net::Normalizer& norm,
                               const Predictions& preds, int* desingularized = nullptr);

/// Assemble the training loss from precomputed predictions. Sample sums run
/// in fixed chunk order so the result is independent of threading.
LossBreakdown assemble_loss(const sampling::PointBatch& batch, const Predictions& preds,
                            const SystemSpec& spec, const net::Normalizer& norm,
                            const LossWeights& weights, SparsityMode mode,
                            const Eigen::VectorXd& gate_log_alpha, const net::GateConfig& gcfg);

}  // namespace music::systems
