#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace music::net {

// ============================================================================
// Min-max normalization maps for network inputs and outputs.
//
// Inputs and outputs are mapped affinely to [0,1]; derivative channels pick
// up 1/range and 1/range^2 factors per the chain rule. An identity map
// (min 0, max 1) leaves everything untouched.
// ============================================================================

struct Range {
  double min = 0.0;
  double max = 1.0;

  double span() const { return max - min; }
  bool is_identity() const { return min == 0.0 && max == 1.0; }
};

class Normalizer {
 public:
  Normalizer() = default;
  Normalizer(std::vector<Range> inputs, std::vector<Range> outputs,
             std::vector<std::string> output_names = {})
      : in_(std::move(inputs)), out_(std::move(outputs)), names_(std::move(output_names)) {
    for (const auto& r : in_) check(r, "input");
    for (std::size_t i = 0; i < out_.size(); ++i)
      check(out_[i], names_.empty() ? "output" : names_[i]);
  }

  static Normalizer identity(int n_inputs, int n_outputs) {
    return Normalizer(std::vector<Range>(n_inputs), std::vector<Range>(n_outputs));
  }

  int input_dim() const { return static_cast<int>(in_.size()); }
  int output_dim() const { return static_cast<int>(out_.size()); }
  const Range& input(int i) const { return in_.at(i); }
  const Range& output(int i) const { return out_.at(i); }

  double normalize_input(int i, double x) const { return (x - in_.at(i).min) / in_.at(i).span(); }
  double denormalize_input(int i, double x) const { return in_.at(i).min + x * in_.at(i).span(); }
  double normalize_output(int v, double y) const { return (y - out_.at(v).min) / out_.at(v).span(); }
  double denormalize_output(int v, double y) const { return out_.at(v).min + y * out_.at(v).span(); }

  bool all_identity() const {
    for (const auto& r : in_)
      if (!r.is_identity()) return false;
    for (const auto& r : out_)
      if (!r.is_identity()) return false;
    return true;
  }

 private:
  static void check(const Range& r, const std::string& what) {
    if (!(r.max > r.min))
      throw std::invalid_argument("Normalizer: degenerate range for " + what +
                                  " (max must exceed min)");
  }
  std::vector<Range> in_, out_;
  std::vector<std::string> names_;
};

}  // namespace music::net
