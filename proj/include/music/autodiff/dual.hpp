#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace music::ad {

// ============================================================================
// DualN: forward-mode scalar with N simultaneous partials.
//
// Used to get exact partial derivatives of a residual with respect to its
// few input channels in a single evaluation. The value component performs
// exactly the same double operations, in the same order, as a plain double
// evaluation of the same expression.
// ============================================================================

template <std::size_t N>
struct DualN {
  double v = 0.0;
  std::array<double, N> d{};

  DualN() = default;
  DualN(double value) : v(value) {}  // implicit: constants promote naturally
  static DualN seeded(double value, std::size_t k) {
    DualN x(value);
    x.d[k] = 1.0;
    return x;
  }
};

template <std::size_t N>
DualN<N> operator+(const DualN<N>& a, const DualN<N>& b) {
  DualN<N> r(a.v + b.v);
  for (std::size_t i = 0; i < N; ++i) r.d[i] = a.d[i] + b.d[i];
  return r;
}

template <std::size_t N>
DualN<N> operator-(const DualN<N>& a, const DualN<N>& b) {
  DualN<N> r(a.v - b.v);
  for (std::size_t i = 0; i < N; ++i) r.d[i] = a.d[i] - b.d[i];
  return r;
}

template <std::size_t N>
DualN<N> operator-(const DualN<N>& a) {
  DualN<N> r(-a.v);
  for (std::size_t i = 0; i < N; ++i) r.d[i] = -a.d[i];
  return r;
}

template <std::size_t N>
DualN<N> operator*(const DualN<N>& a, const DualN<N>& b) {
  DualN<N> r(a.v * b.v);
  for (std::size_t i = 0; i < N; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
  return r;
}

template <std::size_t N>
DualN<N> operator/(const DualN<N>& a, const DualN<N>& b) {
  DualN<N> r(a.v / b.v);
  const double inv = 1.0 / b.v;
  for (std::size_t i = 0; i < N; ++i) r.d[i] = (a.d[i] - r.v * b.d[i]) * inv;
  return r;
}

template <std::size_t N> DualN<N> operator+(const DualN<N>& a, double c) { return a + DualN<N>(c); }
template <std::size_t N> DualN<N> operator+(double c, const DualN<N>& a) { return DualN<N>(c) + a; }
template <std::size_t N> DualN<N> operator-(const DualN<N>& a, double c) { return a - DualN<N>(c); }
template <std::size_t N> DualN<N> operator-(double c, const DualN<N>& a) { return DualN<N>(c) - a; }
template <std::size_t N> DualN<N> operator*(const DualN<N>& a, double c) { return a * DualN<N>(c); }
template <std::size_t N> DualN<N> operator*(double c, const DualN<N>& a) { return DualN<N>(c) * a; }
template <std::size_t N> DualN<N> operator/(const DualN<N>& a, double c) { return a / DualN<N>(c); }
template <std::size_t N> DualN<N> operator/(double c, const DualN<N>& a) { return DualN<N>(c) / a; }

template <std::size_t N>
DualN<N> exp(const DualN<N>& a) {
  DualN<N> r(std::exp(a.v));
  for (std::size_t i = 0; i < N; ++i) r.d[i] = r.v * a.d[i];
  return r;
}

template <std::size_t N>
DualN<N> max(const DualN<N>& a, double c) {
  return a.v >= c ? a : DualN<N>(c);
}

}  // namespace music::ad
