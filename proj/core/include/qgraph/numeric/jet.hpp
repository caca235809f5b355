#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace qgraph::numeric {

/// Truncated Taylor expansion  sum_{k<=Order} c_k h^k  about a point.
/// Coefficient k equals f^(k)(x0)/k!.
template <std::size_t Order>
struct Jet {
  std::array<double, Order + 1> c{};

  static Jet constant(double v) {
    Jet j;
    j.c[0] = v;
    return j;
  }
  static Jet variable(double x0) {
    Jet j;
    j.c[0] = x0;
    if constexpr (Order >= 1) j.c[1] = 1.0;
    return j;
  }

  /// k-th derivative at the expansion point.
  double derivative(std::size_t k) const {
    double fact = 1.0;
    for (std::size_t i = 2; i <= k; ++i) fact *= static_cast<double>(i);
    return c[k] * fact;
  }

  /// d/dx of the series; the top coefficient becomes unknown and is zeroed,
  /// so only orders below Order remain meaningful.
  Jet differentiate() const {
    Jet d;
    for (std::size_t k = 0; k < Order; ++k) d.c[k] = static_cast<double>(k + 1) * c[k + 1];
    return d;
  }

  friend Jet operator+(Jet a, const Jet& b) {
    for (std::size_t k = 0; k <= Order; ++k) a.c[k] += b.c[k];
    return a;
  }
  friend Jet operator-(Jet a, const Jet& b) {
    for (std::size_t k = 0; k <= Order; ++k) a.c[k] -= b.c[k];
    return a;
  }
  friend Jet operator-(Jet a) {
    for (auto& v : a.c) v = -v;
    return a;
  }
  friend Jet operator*(double s, Jet a) {
    for (auto& v : a.c) v *= s;
    return a;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (std::size_t i = 0; i <= Order; ++i)
      for (std::size_t j = 0; i + j <= Order; ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
  }
  friend Jet operator+(double s, Jet a) {
    a.c[0] += s;
    return a;
  }
};

template <std::size_t Order>
Jet<Order> reciprocal(const Jet<Order>& a) {
  Jet<Order> r;
  r.c[0] = 1.0 / a.c[0];
  for (std::size_t k = 1; k <= Order; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) s += a.c[j] * r.c[k - j];
    r.c[k] = -s / a.c[0];
  }
  return r;
}

template <std::size_t Order>
Jet<Order> exp(const Jet<Order>& a) {
  // r' = a' r  gives  k r_k = sum_j j a_j r_{k-j}
  Jet<Order> r;
  r.c[0] = std::exp(a.c[0]);
  for (std::size_t k = 1; k <= Order; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * a.c[j] * r.c[k - j];
    r.c[k] = s / static_cast<double>(k);
  }
  return r;
}

}  // namespace qgraph::numeric
