#pragma once

#include <cmath>

namespace music::ad {

// ============================================================================
// Jet2: (value, first, second directional derivative) along one coordinate.
//
// The scalar type S is double for plain evaluation, Var when the whole
// propagation is to be recorded on a tape, or a DualN when channel partials
// are wanted. All rules are the usual truncated Taylor algebra.
// ============================================================================

template <class S>
struct Jet2 {
  S v{}, d1{}, d2{};
};

/// Zero of the same scalar kind as x (tape scalars need a tape-bound zero).
inline double zero_like(double) { return 0.0; }

template <class S>
Jet2<S> jet_const(S v) {
  S z = zero_like(v);
  return {v, z, z};
}

template <class S>
Jet2<S> operator+(const Jet2<S>& a, const Jet2<S>& b) {
  return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
}

template <class S>
Jet2<S> operator-(const Jet2<S>& a, const Jet2<S>& b) {
  return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
}

template <class S>
Jet2<S> operator-(const Jet2<S>& a) {
  return {-a.v, -a.d1, -a.d2};
}

template <class S>
Jet2<S> operator*(const Jet2<S>& a, const Jet2<S>& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}

template <class S>
Jet2<S> operator/(const Jet2<S>& a, const Jet2<S>& b) {
  // from a = q*b: q' = (a' - q b')/b, q'' = (a'' - 2 q' b' - q b'')/b
  Jet2<S> q;
  q.v = a.v / b.v;
  q.d1 = (a.d1 - q.v * b.d1) / b.v;
  q.d2 = (a.d2 - 2.0 * q.d1 * b.d1 - q.v * b.d2) / b.v;
  return q;
}

template <class S>
Jet2<S> operator*(double c, const Jet2<S>& a) {
  return {c * a.v, c * a.d1, c * a.d2};
}

template <class S>
Jet2<S> operator*(const Jet2<S>& a, double c) {
  return c * a;
}

template <class S>
Jet2<S> operator+(const Jet2<S>& a, double c) {
  return {a.v + c, a.d1, a.d2};
}

template <class S>
Jet2<S> operator+(double c, const Jet2<S>& a) {
  return a + c;
}

template <class S>
Jet2<S> operator-(const Jet2<S>& a, double c) {
  return {a.v - c, a.d1, a.d2};
}

/// Apply an elementwise function given phi(v), phi'(v), phi''(v):
/// (v, d1, d2) -> (phi, phi' d1, phi'' d1^2 + phi' d2).
template <class S>
Jet2<S> jet_apply(const S& phi, const S& dphi, const S& ddphi, const Jet2<S>& x) {
  return {phi, dphi * x.d1, ddphi * x.d1 * x.d1 + dphi * x.d2};
}

}  // namespace music::ad
