#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace music::ad {

// ============================================================================
// Scalar reverse-mode tape
//
// Each node stores its operands and the local partials evaluated at record
// time, so one reverse sweep produces the adjoint of every node with respect
// to a scalar root. Tapes are single-use: record, then run backward.
// ============================================================================

enum class OpKind : std::uint8_t {
  kLeaf,
  kConst,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kNeg,
  kExp,
  kLog,
  kTanh,
  kSin,
  kRelu,
  kStep,  // heaviside with step(x <= 0) = 0; internal helper for relu jets
  kPow,   // x^p, real constant exponent
  kMin,
  kMax,
  kLogistic,
};

class Tape {
 public:
  int leaf(double v) {
    nodes_.push_back({OpKind::kLeaf, -1, -1, 0.0, 0.0});
    vals_.push_back(v);
    return static_cast<int>(nodes_.size()) - 1;
  }

  int constant(double v) {
    nodes_.push_back({OpKind::kConst, -1, -1, 0.0, 0.0});
    vals_.push_back(v);
    return static_cast<int>(nodes_.size()) - 1;
  }

  int unary(OpKind op, int a, double exponent = 0.0) {
    const double x = vals_[a];
    double v = 0.0, pa = 0.0;
    switch (op) {
      case OpKind::kNeg:
        v = -x;
        pa = -1.0;
        break;
      case OpKind::kExp:
        v = std::exp(x);
        pa = v;
        break;
      case OpKind::kLog:
        v = std::log(x);
        pa = 1.0 / x;
        break;
      case OpKind::kTanh:
        v = std::tanh(x);
        pa = 1.0 - v * v;
        break;
      case OpKind::kSin:
        v = std::sin(x);
        pa = std::cos(x);
        break;
      case OpKind::kRelu:
        // subgradient at 0 taken as 0
        v = x > 0.0 ? x : 0.0;
        pa = x > 0.0 ? 1.0 : 0.0;
        break;
      case OpKind::kStep:
        v = x > 0.0 ? 1.0 : 0.0;
        pa = 0.0;
        break;
      case OpKind::kPow:
        v = std::pow(x, exponent);
        pa = exponent * std::pow(x, exponent - 1.0);
        break;
      case OpKind::kLogistic: {
        v = 1.0 / (1.0 + std::exp(-x));
        pa = v * (1.0 - v);
        break;
      }
      default:
        throw std::invalid_argument("Tape::unary: not a unary op");
    }
    nodes_.push_back({op, a, -1, pa, 0.0});
    vals_.push_back(v);
    return static_cast<int>(nodes_.size()) - 1;
  }

  int binary(OpKind op, int a, int b) {
    const double x = vals_[a], y = vals_[b];
    double v = 0.0, pa = 0.0, pb = 0.0;
    switch (op) {
      case OpKind::kAdd:
        v = x + y;
        pa = 1.0;
        pb = 1.0;
        break;
      case OpKind::kSub:
        v = x - y;
        pa = 1.0;
        pb = -1.0;
        break;
      case OpKind::kMul:
        v = x * y;
        pa = y;
        pb = x;
        break;
      case OpKind::kDiv:
        v = x / y;
        pa = 1.0 / y;
        pb = -x / (y * y);
        break;
      case OpKind::kMin:
        // ties resolved toward the first operand
        v = x <= y ? x : y;
        pa = x <= y ? 1.0 : 0.0;
        pb = x <= y ? 0.0 : 1.0;
        break;
      case OpKind::kMax:
        v = x >= y ? x : y;
        pa = x >= y ? 1.0 : 0.0;
        pb = x >= y ? 0.0 : 1.0;
        break;
      default:
        throw std::invalid_argument("Tape::binary: not a binary op");
    }
    nodes_.push_back({op, a, b, pa, pb});
    vals_.push_back(v);
    return static_cast<int>(nodes_.size()) - 1;
  }

  double value(int i) const { return vals_[i]; }
  int size() const { return static_cast<int>(nodes_.size()); }

  /// One reverse sweep: adjoint of every node with respect to the root.
  std::vector<double> adjoints(int root) const {
    if (root < 0 || root >= size())
      throw std::invalid_argument("Tape::adjoints: root is not a node of this tape");
    std::vector<double> adj(nodes_.size(), 0.0);
    adj[root] = 1.0;
    for (int i = static_cast<int>(nodes_.size()) - 1; i >= 0; --i) {
      const Node& n = nodes_[i];
      const double a = adj[i];
      if (a == 0.0) continue;
      if (n.a >= 0) adj[n.a] += n.pa * a;
      if (n.b >= 0) adj[n.b] += n.pb * a;
    }
    return adj;
  }

 private:
  struct Node {
    OpKind op;
    std::int32_t a, b;
    double pa, pb;
  };
  std::vector<Node> nodes_;
  std::vector<double> vals_;
};

// ============================================================================
// Var: value-semantic handle used to record expressions via overloading
// ============================================================================

class Var {
 public:
  Var() = default;
  Var(Tape* tape, int idx) : tape_(tape), idx_(idx) {}

  double value() const { return tape_->value(idx_); }
  int index() const { return idx_; }
  Tape* tape() const { return tape_; }

  friend Var operator+(Var a, Var b) { return bin(OpKind::kAdd, a, b); }
  friend Var operator-(Var a, Var b) { return bin(OpKind::kSub, a, b); }
  friend Var operator*(Var a, Var b) { return bin(OpKind::kMul, a, b); }
  friend Var operator/(Var a, Var b) { return bin(OpKind::kDiv, a, b); }
  friend Var operator-(Var a) { return {a.tape_, a.tape_->unary(OpKind::kNeg, a.idx_)}; }

  friend Var operator+(Var a, double c) { return a + a.wrap(c); }
  friend Var operator+(double c, Var a) { return a.wrap(c) + a; }
  friend Var operator-(Var a, double c) { return a - a.wrap(c); }
  friend Var operator-(double c, Var a) { return a.wrap(c) - a; }
  friend Var operator*(Var a, double c) { return a * a.wrap(c); }
  friend Var operator*(double c, Var a) { return a.wrap(c) * a; }
  friend Var operator/(Var a, double c) { return a / a.wrap(c); }
  friend Var operator/(double c, Var a) { return a.wrap(c) / a; }

  Var& operator+=(Var b) { return *this = *this + b; }
  Var& operator-=(Var b) { return *this = *this - b; }
  Var& operator*=(Var b) { return *this = *this * b; }
  Var& operator/=(Var b) { return *this = *this / b; }
  Var& operator+=(double c) { return *this = *this + c; }
  Var& operator*=(double c) { return *this = *this * c; }

  Var wrap(double c) const { return {tape_, tape_->constant(c)}; }

 private:
  static Var bin(OpKind op, Var a, Var b) {
    if (a.tape_ != b.tape_)
      throw std::invalid_argument("Var: operands recorded on different tapes");
    return {a.tape_, a.tape_->binary(op, a.idx_, b.idx_)};
  }
  Tape* tape_ = nullptr;
  int idx_ = -1;
};

inline Var exp(Var a) { return {a.tape(), a.tape()->unary(OpKind::kExp, a.index())}; }
inline Var log(Var a) { return {a.tape(), a.tape()->unary(OpKind::kLog, a.index())}; }
inline Var tanh(Var a) { return {a.tape(), a.tape()->unary(OpKind::kTanh, a.index())}; }
inline Var sin(Var a) { return {a.tape(), a.tape()->unary(OpKind::kSin, a.index())}; }
inline Var relu(Var a) { return {a.tape(), a.tape()->unary(OpKind::kRelu, a.index())}; }
inline Var step(Var a) { return {a.tape(), a.tape()->unary(OpKind::kStep, a.index())}; }
inline Var pow(Var a, double p) { return {a.tape(), a.tape()->unary(OpKind::kPow, a.index(), p)}; }
inline Var logistic(Var a) { return {a.tape(), a.tape()->unary(OpKind::kLogistic, a.index())}; }
inline Var min(Var a, Var b) { return {a.tape(), a.tape()->binary(OpKind::kMin, a.index(), b.index())}; }
inline Var max(Var a, Var b) { return {a.tape(), a.tape()->binary(OpKind::kMax, a.index(), b.index())}; }
inline Var min(Var a, double b) { return min(a, a.wrap(b)); }
inline Var max(Var a, double b) { return max(a, a.wrap(b)); }
inline Var clamp(Var x, double lo, double hi) { return min(max(x, lo), hi); }

inline Var zero_like(Var v) { return v.wrap(0.0); }

/// Gradient of a scalar root with respect to selected leaves.
inline std::vector<double> gradient(const Var& root, std::span<const Var> leaves) {
  const auto adj = root.tape()->adjoints(root.index());
  std::vector<double> g(leaves.size());
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (leaves[i].tape() != root.tape())
      throw std::invalid_argument("gradient: leaf recorded on a different tape");
    g[i] = adj[leaves[i].index()];
  }
  return g;
}

// ============================================================================
// ExprGraph: a plain-data expression description that can be taped.
// Supported primitive names: add sub mul div neg exp log tanh sin relu
// min max clamp pow logistic. Anything else is rejected by name.
// ============================================================================

struct ExprNode {
  std::string op;      // "leaf", "const", or a primitive name
  int a = -1, b = -1;  // operand node indices
  double value = 0.0;  // leaf/const payload
  double lo = 0.0, hi = 0.0, exponent = 1.0;
};

struct ExprGraph {
  std::vector<ExprNode> nodes;
  int root = -1;
};

struct TapedExpr {
  Tape tape;
  int root = -1;
  std::vector<int> leaf_ids;  // tape indices of "leaf" nodes, in graph order
};

TapedExpr record(const ExprGraph& graph);

/// Direct (untaped) evaluation of an ExprGraph; the oracle for record().
double eval_expr(const ExprGraph& graph);

}  // namespace music::ad
