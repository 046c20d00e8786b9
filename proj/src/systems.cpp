#include "music/systems/system.hpp"

namespace music::systems {

namespace {
constexpr int kSumChunk = 4096;  // fixed summation block, keeps reductions thread-count independent
}

std::string to_string(SystemId id) {
  switch (id) {
    case SystemId::kSwe: return "swe";
    case SystemId::kFn: return "fn";
    case SystemId::kRd: return "rd";
    case SystemId::kWildfire: return "wildfire";
  }
  return "?";
}

SystemId system_from_string(const std::string& s) {
  if (s == "swe") return SystemId::kSwe;
  if (s == "fn") return SystemId::kFn;
  if (s == "rd") return SystemId::kRd;
  if (s == "wildfire") return SystemId::kWildfire;
  throw std::invalid_argument("unknown system '" + s + "' (expected swe|fn|rd|wildfire)");
}

std::string to_string(SparsityMode m) {
  switch (m) {
    case SparsityMode::kGated: return "gated";
    case SparsityMode::kTopk: return "topk";
    case SparsityMode::kNone: return "none";
  }
  return "?";
}

SparsityMode sparsity_mode_from_string(const std::string& s) {
  if (s == "gated") return SparsityMode::kGated;
  if (s == "topk") return SparsityMode::kTopk;
  if (s == "none") return SparsityMode::kNone;
  throw std::invalid_argument("unknown sparsity mode '" + s + "' (expected gated|topk|none)");
}

void SystemSpec::validate() const {
  std::vector<char> seen(variables.size(), 0);
  for (int v : data_vars) {
    if (v < 0 || v >= n_vars() || seen[v]) throw std::invalid_argument("SystemSpec: bad data variable set");
    seen[v] = 1;
  }
  for (int v : equation_vars) {
    if (v < 0 || v >= n_vars() || seen[v])
      throw std::invalid_argument("SystemSpec: data and equation variables must be disjoint");
    seen[v] = 1;
  }
  for (char c : seen)
    if (!c) throw std::invalid_argument("SystemSpec: data and equation variables must cover all variables");
}

SystemSpec default_system(SystemId id, bool swapped) {
  SystemSpec s;
  s.id = id;
  switch (id) {
    case SystemId::kSwe:
      s.spatial_dim = 1;
      s.variables = {"h", "hu"};
      s.data_vars = {1};
      s.equation_vars = {0};
      s.x_extent = {0.0, 10.0};
      s.t_extent = {0.0, 1.0};
      if (swapped) {
        s.swapped = true;
        s.data_vars = {0};
        s.equation_vars = {1};
      }
      break;
    case SystemId::kFn:
      s.spatial_dim = 2;
      s.variables = {"u", "v"};
      s.data_vars = {0};
      s.equation_vars = {1};
      s.x_extent = {0.0, 100.0};
      s.y_extent = {0.0, 100.0};
      s.t_extent = {10.0, 59.0};
      break;
    case SystemId::kRd:
      s.spatial_dim = 2;
      s.variables = {"u", "v"};
      s.data_vars = {1};
      s.equation_vars = {0};
      s.x_extent = {-10.0, 10.0};
      s.y_extent = {-10.0, 10.0};
      s.t_extent = {0.0, 10.0};
      break;
    case SystemId::kWildfire:
      s.spatial_dim = 2;
      s.variables = {"u", "b"};
      s.data_vars = {0};
      s.equation_vars = {1};
      s.x_extent = {0.0, 10.0};
      s.y_extent = {0.0, 10.0};
      s.t_extent = {2.1, 10.0};
      break;
  }
  if (swapped && id != SystemId::kSwe)
    throw std::invalid_argument("swapped priors are only defined for the SWE system");
  s.validate();
  return s;
}

std::vector<ChannelRef> residual_channels(const SystemSpec& spec) {
  const int t = spec.time_coord();
  switch (spec.id) {
    case SystemId::kSwe:
      if (spec.swapped)
        return {{0, ChannelKind::kValuePhys, 0}, {0, ChannelKind::kD1Phys, 0},
                {1, ChannelKind::kValuePhys, 0}, {1, ChannelKind::kD1Phys, 0},
                {1, ChannelKind::kD1Phys, t}};
      return {{0, ChannelKind::kD1Phys, t}, {1, ChannelKind::kD1Phys, 0}};
    case SystemId::kFn:
      return {{0, ChannelKind::kValuePhys, 0}, {1, ChannelKind::kValuePhys, 0},
              {1, ChannelKind::kD1Phys, t}, {1, ChannelKind::kD2Phys, 0},
              {1, ChannelKind::kD2Phys, 1}};
    case SystemId::kRd:
      return {{0, ChannelKind::kValuePhys, 0}, {1, ChannelKind::kValuePhys, 0},
              {0, ChannelKind::kD1Phys, t}, {0, ChannelKind::kD2Phys, 0},
              {0, ChannelKind::kD2Phys, 1}};
    case SystemId::kWildfire:
      return {{0, ChannelKind::kValuePhys, 0}, {1, ChannelKind::kValuePhys, 0},
              {1, ChannelKind::kD1Phys, t}};
  }
  throw std::invalid_argument("residual_channels: bad system id");
}

std::vector<DirNeed> required_directions(const SystemSpec& spec) {
  const int t = spec.time_coord();
  switch (spec.id) {
    case SystemId::kSwe:
      return {{0, false}, {t, false}};
    case SystemId::kFn:
    case SystemId::kRd:
      return {{0, true}, {1, true}, {t, false}};
    case SystemId::kWildfire:
      return {{t, false}};
  }
  throw std::invalid_argument("required_directions: bad system id");
}

double residual_at_point(const SystemSpec& spec, std::span<const VariableJets> vars,
                         bool* desingularized) {
  if (static_cast<int>(vars.size()) != spec.n_vars())
    throw std::invalid_argument("residual_at_point: need jets for every variable");
  const auto channels = residual_channels(spec);
  std::vector<double> ch;
  ch.reserve(channels.size());
  for (const ChannelRef& c : channels) {
    const VariableJets& vj = vars[c.var];
    switch (c.kind) {
      case ChannelKind::kValuePhys: ch.push_back(vj.value_phys); break;
      case ChannelKind::kD1Phys: ch.push_back(vj.along(c.coord, spec.variables[c.var]).d1); break;
      case ChannelKind::kD2Phys: ch.push_back(vj.along(c.coord, spec.variables[c.var]).d2); break;
    }
  }
  return residual_value<double>(spec, ch, desingularized);
}

namespace {

SystemSpec scaled_spec(const SystemSpec& spec, const net::Normalizer& norm) {
  SystemSpec s = spec;
  if (spec.id == SystemId::kSwe) s.swe.eps_h = spec.swe.eps_h * norm.output(0).span();
  return s;
}

}  // namespace

Eigen::MatrixXd residual_batch(const SystemSpec& spec, const net::Normalizer& norm,
                               const Predictions& preds, int* desingularized) {
  const auto channels = residual_channels(spec);
  const SystemSpec sp = scaled_spec(spec, norm);
  const Eigen::Index n = preds.values.cols();
  Eigen::MatrixXd r(static_cast<Eigen::Index>(spec.equation_vars.size()), n);
  int desing = 0;
  std::vector<double> ch(channels.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < channels.size(); ++k) {
      const ChannelRef& c = channels[k];
      switch (c.kind) {
        case ChannelKind::kValuePhys:
          ch[k] = norm.denormalize_output(c.var, preds.values(c.var, i));
          break;
        case ChannelKind::kD1Phys:
          ch[k] = preds.d1[static_cast<std::size_t>(c.coord)](c.var, i);
          break;
        case ChannelKind::kD2Phys:
          ch[k] = preds.d2[static_cast<std::size_t>(c.coord)](c.var, i);
          break;
      }
    }
    bool flag = false;
    r(0, i) = residual_value<double>(sp, ch, &flag);
    if (flag) ++desing;
  }
  if (desingularized) *desingularized = desing;
  return r;
}

namespace {

/// Mean of squared entries of one row, accumulated in fixed-size chunks.
double chunked_row_mse(const Eigen::MatrixXd& m, Eigen::Index row, const Eigen::MatrixXd& ref,
                       Eigen::Index ref_row) {
  const Eigen::Index n = m.cols();
  if (n == 0) return 0.0;
  double total = 0.0;
  for (Eigen::Index start = 0; start < n; start += kSumChunk) {
    const Eigen::Index len = std::min<Eigen::Index>(kSumChunk, n - start);
    total += (m.row(row).segment(start, len) - ref.row(ref_row).segment(start, len)).squaredNorm();
  }
  return total / static_cast<double>(n);
}

double chunked_row_sq(const Eigen::MatrixXd& m, Eigen::Index row) {
  const Eigen::Index n = m.cols();
  if (n == 0) return 0.0;
  double total = 0.0;
  for (Eigen::Index start = 0; start < n; start += kSumChunk) {
    const Eigen::Index len = std::min<Eigen::Index>(kSumChunk, n - start);
    total += m.row(row).segment(start, len).squaredNorm();
  }
  return total / static_cast<double>(n);
}

}  // namespace

LossBreakdown assemble_loss(const sampling::PointBatch& batch, const Predictions& preds,
                            const SystemSpec& spec, const net::Normalizer& norm,
                            const LossWeights& weights, SparsityMode mode,
                            const Eigen::VectorXd& gate_log_alpha, const net::GateConfig& gcfg) {
  if (preds.values.cols() != batch.coords.cols())
    throw std::invalid_argument("assemble_loss: prediction count does not match batch");
  if (weights.lambda_ic > 0.0 && batch.ic_size() == 0)
    throw std::invalid_argument("assemble_loss: batch has no initial-condition points but lambda_ic > 0");

  LossBreakdown out;
  const int n_data = static_cast<int>(spec.data_vars.size());
  const int n_eq = static_cast<int>(spec.equation_vars.size());

  out.data_mse = Eigen::VectorXd::Zero(n_data);
  for (int k = 0; k < n_data; ++k) {
    Eigen::MatrixXd pred_row = preds.values.row(spec.data_vars[k]);
    out.data_mse[k] = chunked_row_mse(pred_row, 0, batch.targets, k);
  }

  Eigen::MatrixXd r = residual_batch(spec, norm, preds, &out.desingularized);
  out.resid_mse = Eigen::VectorXd::Zero(n_eq);
  for (int k = 0; k < n_eq; ++k) out.resid_mse[k] = chunked_row_sq(r, k);

  if (batch.ic_size() > 0) {
    if (preds.ic_values.cols() != batch.ic_coords.cols())
      throw std::invalid_argument("assemble_loss: IC prediction count does not match batch");
    double acc = 0.0;
    for (int k = 0; k < n_eq; ++k) {
      Eigen::MatrixXd pred_row = preds.ic_values.row(spec.equation_vars[k]);
      acc += chunked_row_mse(pred_row, 0, batch.ic_targets, k);
    }
    out.ic_mse = acc;
  }

  if (mode == SparsityMode::kGated) out.l0 = net::l0_penalty(gate_log_alpha, gcfg);
  return out;
}

}  // namespace music::systems
