#include "music/autodiff/tape.hpp"

#include <algorithm>
#include <cmath>

namespace music::ad {

namespace {

enum class PublicOp {
  kLeaf, kConst, kAdd, kSub, kMul, kDiv, kNeg, kExp, kLog, kTanh, kSin,
  kRelu, kMin, kMax, kClamp, kPow, kLogistic,
};

PublicOp parse_op(const std::string& name) {
  if (name == "leaf") return PublicOp::kLeaf;
  if (name == "const") return PublicOp::kConst;
  if (name == "add") return PublicOp::kAdd;
  if (name == "sub") return PublicOp::kSub;
  if (name == "mul") return PublicOp::kMul;
  if (name == "div") return PublicOp::kDiv;
  if (name == "neg") return PublicOp::kNeg;
  if (name == "exp") return PublicOp::kExp;
  if (name == "log") return PublicOp::kLog;
  if (name == "tanh") return PublicOp::kTanh;
  if (name == "sin") return PublicOp::kSin;
  if (name == "relu") return PublicOp::kRelu;
  if (name == "min") return PublicOp::kMin;
  if (name == "max") return PublicOp::kMax;
  if (name == "clamp") return PublicOp::kClamp;
  if (name == "pow") return PublicOp::kPow;
  if (name == "logistic") return PublicOp::kLogistic;
  throw std::invalid_argument("record: unsupported primitive '" + name + "'");
}

void check_graph(const ExprGraph& g) {
  if (g.root < 0 || g.root >= static_cast<int>(g.nodes.size()))
    throw std::invalid_argument("record: graph root out of range");
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& n = g.nodes[i];
    if (n.a >= static_cast<int>(i) || n.b >= static_cast<int>(i))
      throw std::invalid_argument("record: graph is not topologically ordered");
  }
}

}  // namespace

TapedExpr record(const ExprGraph& graph) {
  check_graph(graph);
  TapedExpr out;
  std::vector<int> ids(graph.nodes.size(), -1);
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const ExprNode& n = graph.nodes[i];
    Tape& t = out.tape;
    switch (parse_op(n.op)) {
      case PublicOp::kLeaf:
        ids[i] = t.leaf(n.value);
        out.leaf_ids.push_back(ids[i]);
        break;
      case PublicOp::kConst: ids[i] = t.constant(n.value); break;
      case PublicOp::kAdd: ids[i] = t.binary(OpKind::kAdd, ids[n.a], ids[n.b]); break;
      case PublicOp::kSub: ids[i] = t.binary(OpKind::kSub, ids[n.a], ids[n.b]); break;
      case PublicOp::kMul: ids[i] = t.binary(OpKind::kMul, ids[n.a], ids[n.b]); break;
      case PublicOp::kDiv: ids[i] = t.binary(OpKind::kDiv, ids[n.a], ids[n.b]); break;
      case PublicOp::kNeg: ids[i] = t.unary(OpKind::kNeg, ids[n.a]); break;
      case PublicOp::kExp: ids[i] = t.unary(OpKind::kExp, ids[n.a]); break;
      case PublicOp::kLog: ids[i] = t.unary(OpKind::kLog, ids[n.a]); break;
      case PublicOp::kTanh: ids[i] = t.unary(OpKind::kTanh, ids[n.a]); break;
      case PublicOp::kSin: ids[i] = t.unary(OpKind::kSin, ids[n.a]); break;
      case PublicOp::kRelu: ids[i] = t.unary(OpKind::kRelu, ids[n.a]); break;
      case PublicOp::kLogistic: ids[i] = t.unary(OpKind::kLogistic, ids[n.a]); break;
      case PublicOp::kPow: ids[i] = t.unary(OpKind::kPow, ids[n.a], n.exponent); break;
      case PublicOp::kMin: ids[i] = t.binary(OpKind::kMin, ids[n.a], ids[n.b]); break;
      case PublicOp::kMax: ids[i] = t.binary(OpKind::kMax, ids[n.a], ids[n.b]); break;
      case PublicOp::kClamp: {
        const int lo = t.constant(n.lo), hi = t.constant(n.hi);
        ids[i] = t.binary(OpKind::kMin, t.binary(OpKind::kMax, ids[n.a], lo), hi);
        break;
      }
    }
  }
  out.root = ids[graph.root];
  return out;
}

double eval_expr(const ExprGraph& graph) {
  check_graph(graph);
  std::vector<double> v(graph.nodes.size());
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const ExprNode& n = graph.nodes[i];
    const double a = n.a >= 0 ? v[n.a] : 0.0;
    const double b = n.b >= 0 ? v[n.b] : 0.0;
    switch (parse_op(n.op)) {
      case PublicOp::kLeaf:
      case PublicOp::kConst: v[i] = n.value; break;
      case PublicOp::kAdd: v[i] = a + b; break;
      case PublicOp::kSub: v[i] = a - b; break;
      case PublicOp::kMul: v[i] = a * b; break;
      case PublicOp::kDiv: v[i] = a / b; break;
      case PublicOp::kNeg: v[i] = -a; break;
      case PublicOp::kExp: v[i] = std::exp(a); break;
      case PublicOp::kLog: v[i] = std::log(a); break;
      case PublicOp::kTanh: v[i] = std::tanh(a); break;
      case PublicOp::kSin: v[i] = std::sin(a); break;
      case PublicOp::kRelu: v[i] = a > 0.0 ? a : 0.0; break;
      case PublicOp::kLogistic: v[i] = 1.0 / (1.0 + std::exp(-a)); break;
      case PublicOp::kPow: v[i] = std::pow(a, n.exponent); break;
      case PublicOp::kMin: v[i] = a <= b ? a : b; break;
      case PublicOp::kMax: v[i] = a >= b ? a : b; break;
      case PublicOp::kClamp: v[i] = std::min(std::max(a, n.lo), n.hi); break;
    }
  }
  return v[graph.root];
}

}  // namespace music::ad
