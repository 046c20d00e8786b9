#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "music/autodiff/tape.hpp"

namespace music::net {

enum class Activation { kRelu, kTanh, kSin };

inline std::string to_string(Activation a) {
  switch (a) {
    case Activation::kRelu: return "relu";
    case Activation::kTanh: return "tanh";
    case Activation::kSin: return "sin";
  }
  return "?";
}

inline Activation activation_from_string(const std::string& s) {
  if (s == "relu") return Activation::kRelu;
  if (s == "tanh") return Activation::kTanh;
  if (s == "sin") return Activation::kSin;
  throw std::invalid_argument("unknown activation tag '" + s + "'");
}

// ----------------------------------------------------------------------------
// phi and its first three derivatives, for double and for taped Var.
// relu derivatives use the subgradient-0-at-0 convention; its second and
// third derivatives are 0 everywhere.
// ----------------------------------------------------------------------------

inline double act(Activation a, double x) {
  switch (a) {
    case Activation::kRelu: return x > 0.0 ? x : 0.0;
    case Activation::kTanh: return std::tanh(x);
    case Activation::kSin: return std::sin(x);
  }
  return 0.0;
}

inline double act_d1(Activation a, double x) {
  switch (a) {
    case Activation::kRelu: return x > 0.0 ? 1.0 : 0.0;
    case Activation::kTanh: {
      const double t = std::tanh(x);
      return 1.0 - t * t;
    }
    case Activation::kSin: return std::cos(x);
  }
  return 0.0;
}

inline double act_d2(Activation a, double x) {
  switch (a) {
    case Activation::kRelu: return 0.0;
    case Activation::kTanh: {
      const double t = std::tanh(x);
      return -2.0 * t * (1.0 - t * t);
    }
    case Activation::kSin: return -std::sin(x);
  }
  return 0.0;
}

inline double act_d3(Activation a, double x) {
  switch (a) {
    case Activation::kRelu: return 0.0;
    case Activation::kTanh: {
      const double t = std::tanh(x);
      const double s = 1.0 - t * t;  // sech^2
      return -2.0 * s * (1.0 - 3.0 * t * t);
    }
    case Activation::kSin: return -std::cos(x);
  }
  return 0.0;
}

inline ad::Var act(Activation a, ad::Var x) {
  switch (a) {
    case Activation::kRelu: return ad::relu(x);
    case Activation::kTanh: return ad::tanh(x);
    case Activation::kSin: return ad::sin(x);
  }
  throw std::invalid_argument("act: bad activation");
}

inline ad::Var act_d1(Activation a, ad::Var x) {
  switch (a) {
    case Activation::kRelu: return ad::step(x);
    case Activation::kTanh: {
      ad::Var t = ad::tanh(x);
      return 1.0 - t * t;
    }
    case Activation::kSin: return ad::sin(x + 1.5707963267948966);
  }
  throw std::invalid_argument("act_d1: bad activation");
}

inline ad::Var act_d2(Activation a, ad::Var x) {
  switch (a) {
    case Activation::kRelu: return x.wrap(0.0);
    case Activation::kTanh: {
      ad::Var t = ad::tanh(x);
      return -2.0 * t * (1.0 - t * t);
    }
    case Activation::kSin: return -ad::sin(x);
  }
  throw std::invalid_argument("act_d2: bad activation");
}

}  // namespace music::net
