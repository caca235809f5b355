#pragma once

// Reference computations used by the tests. Nothing here calls into the
// library's numerics; they are deliberately simple, slow and independent.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "qgraph/graph_io.hpp"

namespace qgraph::testing {

constexpr double pi = std::numbers::pi;

inline std::string data_path(const std::string& name) {
  return std::string(QGRAPH_TEST_DATA) + "/" + name;
}

inline GraphDocument load(const std::string& name) { return load_graph_file(data_path(name)); }

/// Riemann zeta for Re x > 0, x != 1: the alternating eta series with the
/// Cohen-Villegas-Zagier acceleration.
inline std::complex<double> riemann_zeta(std::complex<double> x) {
  const int n = 40;
  double d = std::pow(3.0 + std::sqrt(8.0), n);
  d = 0.5 * (d + 1.0 / d);
  double b = -1.0, c = -d;
  std::complex<double> sum = 0.0;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    sum += c * std::pow(k + 1.0, -x);
    b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0));
  }
  return sum / d / (1.0 - std::pow(2.0, 1.0 - x));
}

inline double riemann_zeta(double x) { return riemann_zeta(std::complex<double>(x)).real(); }

/// sum_j ((j pi / L)^2 + gamma)^-s from the binomial series in gamma L^2 / pi^2,
/// which must be below 1. Needs Re(2s) > 0.
inline std::complex<double> dirichlet_interval_zeta(double length, std::complex<double> s,
                                                    double gamma) {
  std::complex<double> sum = 0.0, binom = 1.0;
  const double r = length / pi;
  for (int k = 0; k < 80; ++k) {
    const auto term = binom * std::pow(gamma, k) * std::pow(r, 2.0 * s + 2.0 * k) *
                      riemann_zeta(2.0 * s + 2.0 * double(k));
    sum += term;
    if (std::abs(term) < 1e-18) break;
    binom *= (-s - double(k)) / double(k + 1);
  }
  return sum;
}

inline double bump(double x, double x0, double w, double h) {
  const double y = (x - x0) / w;
  if (std::abs(y) >= 1.0) return 0.0;
  return h * std::exp(1.0 - 1.0 / (1.0 - y * y));
}

inline double bump_prime(double x, double x0, double w, double h) {
  const double y = (x - x0) / w;
  if (std::abs(y) >= 1.0) return 0.0;
  const double q = 1.0 - y * y;
  return bump(x, x0, w, h) * (-2.0 * y / (q * q)) / w;
}

/// Endpoint values of the fundamental system of psi'' = q(x) psi on [0, L],
/// c(0) = 1, c'(0) = 0, s(0) = 0, s'(0) = 1, by classical RK4.
struct Fundamental {
  double c, c_prime, s, s_prime;
};

inline Fundamental rk4_fundamental(const std::function<double(double)>& q, double length,
                                   int steps) {
  const double h = length / steps;
  auto run = [&](double y0, double y1) {
    for (int i = 0; i < steps; ++i) {
      const double x = i * h;
      const double qa = q(x), qm = q(x + 0.5 * h), qb = q(x + h);
      const double k1y = y1, k1p = qa * y0;
      const double k2y = y1 + 0.5 * h * k1p, k2p = qm * (y0 + 0.5 * h * k1y);
      const double k3y = y1 + 0.5 * h * k2p, k3p = qm * (y0 + 0.5 * h * k2y);
      const double k4y = y1 + h * k3p, k4p = qb * (y0 + h * k3y);
      y0 += h / 6.0 * (k1y + 2 * k2y + 2 * k3y + k4y);
      y1 += h / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
    }
    return std::pair{y0, y1};
  };
  const auto [c, cp] = run(1.0, 0.0);
  const auto [s, sp] = run(0.0, 1.0);
  return {c, cp, s, sp};
}

/// Star graph with a delta(lambda) centre and Dirichlet leaves, discretised by
/// piecewise-linear finite elements with a lumped mass. Eigenvalues come from
/// Sturm counting (inertia of K - E M by elimination from the leaves inwards).
class StarDiscretisation {
 public:
  StarDiscretisation(std::vector<double> lengths, double lambda, int intervals_per_unit,
                     std::vector<std::function<double(double)>> potentials = {})
      : lengths_(std::move(lengths)), lambda_(lambda), potentials_(std::move(potentials)) {
    for (double len : lengths_) {
      n_.push_back(std::max(2, static_cast<int>(std::lround(len * intervals_per_unit))));
      h_.push_back(len / n_.back());
    }
  }

  int count_below(double e) const {
    int negatives = 0;
    double centre = lambda_;
    for (std::size_t b = 0; b < lengths_.size(); ++b) {
      const double h = h_[b], off = -1.0 / h;
      double pivot = 0.0;
      bool first = true;
      for (int i = n_[b] - 1; i >= 1; --i) {
        const double v = potentials_.empty() ? 0.0 : potentials_[b](i * h);
        double diag = 2.0 / h + h * (v - e);
        if (!first) diag -= off * off / pivot;
        pivot = diag;
        first = false;
        if (pivot < 0.0) ++negatives;
      }
      centre += 1.0 / h - e * 0.5 * h - off * off / pivot;
    }
    if (centre < 0.0) ++negatives;
    return negatives;
  }

  /// The j-th eigenvalue (1-based) inside (0, e_max).
  double eigenvalue(int j, double e_max) const {
    double lo = 0.0, hi = e_max;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (count_below(mid) >= j) hi = mid;
      else lo = mid;
    }
    return 0.5 * (lo + hi);
  }

 private:
  std::vector<double> lengths_;
  double lambda_;
  std::vector<std::function<double(double)>> potentials_;
  std::vector<int> n_;
  std::vector<double> h_;
};

/// k_j of the star from two resolutions, Richardson-extrapolated for the
/// O(h^2) discretisation error.
inline std::vector<double> star_reference_roots(const std::vector<double>& lengths, double lambda,
                                                int count, int intervals_per_unit) {
  StarDiscretisation coarse(lengths, lambda, intervals_per_unit);
  StarDiscretisation fine(lengths, lambda, 2 * intervals_per_unit);
  std::vector<double> roots;
  const double e_max = std::pow(pi * (count + 2) / *std::min_element(lengths.begin(), lengths.end()), 2);
  for (int j = 1; j <= count; ++j) {
    const double e1 = coarse.eigenvalue(j, e_max), e2 = fine.eigenvalue(j, e_max);
    roots.push_back(std::sqrt((4.0 * e2 - e1) / 3.0));
  }
  return roots;
}

inline Bond make_bond(int id, int origin, int terminus, double length,
                      PotentialSpec potential = PotentialSpec::zero(), double flux = 0.0) {
  Bond b;
  b.id = id;
  b.origin = origin;
  b.terminus = terminus;
  b.length = length;
  b.potential = potential;
  b.vector_potential = flux;
  return b;
}

inline VertexCondition dirichlet(int v) { return {v, VertexConditionKind::dirichlet, 0.0, {}, {}}; }
inline VertexCondition neumann(int v) { return {v, VertexConditionKind::neumann, 0.0, {}, {}}; }
inline VertexCondition delta(int v, double lambda) {
  return {v, VertexConditionKind::delta, lambda, {}, {}};
}

/// Interval [0, L] with the given end conditions.
inline GraphDocument interval(double length, PotentialSpec potential, VertexCondition start,
                              VertexCondition end) {
  GraphDocument doc;
  doc.graph = MetricGraph(2, {make_bond(1, 1, 2, length, potential)});
  start.vertex = 1;
  end.vertex = 2;
  doc.matching = build_vertex_conditions(doc.graph, {start, end});
  return doc;
}

/// Star with centre 1 carrying delta(lambda) and Dirichlet leaves 2..B+1.
inline GraphDocument star(const std::vector<double>& lengths, double lambda,
                          std::vector<PotentialSpec> potentials = {}) {
  GraphDocument doc;
  std::vector<Bond> bonds;
  std::vector<VertexCondition> vc{delta(1, lambda)};
  for (int b = 0; b < static_cast<int>(lengths.size()); ++b) {
    bonds.push_back(make_bond(b + 1, 1, b + 2, lengths[b],
                              potentials.empty() ? PotentialSpec::zero() : potentials[b]));
    vc.push_back(dirichlet(b + 2));
  }
  doc.graph = MetricGraph(static_cast<int>(lengths.size()) + 1, bonds);
  doc.matching = build_vertex_conditions(doc.graph, vc);
  return doc;
}

}  // namespace qgraph::testing
