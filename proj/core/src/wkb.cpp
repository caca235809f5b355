#include "qgraph/wkb.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "qgraph/error.hpp"
#include "qgraph/numeric/jet.hpp"
#include "qgraph/numeric/logdet.hpp"
#include "qgraph/secular.hpp"

namespace qgraph {
namespace {

using Jet4 = numeric::Jet<4>;

Jet4 potential_jet(const PotentialSpec& p) {
  Jet4 v;
  double fact = 1.0;
  for (int k = 0; k <= 4; ++k) {
    if (k > 1) fact *= k;
    v.c[k] = potential_value(p, 0.0, k) / fact;
  }
  return v;
}

// Diagonal WKB symbol q(tau) = tau f'(0) as a function of tau = 1/t.
struct Symbol {
  enum class Kind { unit, constant, series } kind = Kind::unit;
  double c = 0.0;              // constant potential
  std::vector<double> s;       // s_{-1}..s_4 for the series kind

  cplx operator()(cplx tau) const {
    switch (kind) {
      case Kind::unit: return -1.0;
      case Kind::constant: return -std::sqrt(1.0 + c * tau * tau);
      case Kind::series: {
        cplx acc = -1.0, p = tau;
        for (std::size_t j = 2; j < s.size(); ++j) {
          p *= tau;
          acc += s[j] * p;
        }
        return acc;
      }
    }
    return -1.0;
  }
};

Symbol make_symbol(const PotentialSpec& p, const std::vector<double>& s) {
  Symbol sym;
  if (p.kind == PotentialKind::constant && p.value != 0.0) {
    sym.kind = Symbol::Kind::constant;
    sym.c = p.value;
    return sym;
  }
  const bool nonzero = std::any_of(s.begin() + 2, s.end(), [](double v) { return v != 0.0; });
  if (nonzero) {
    sym.kind = Symbol::Kind::series;
    sym.s = s;
  }
  return sym;
}

std::vector<cplx> taylor_coefficients(const std::function<cplx(cplx)>& f, double radius, int n,
                                      double* max_abs) {
  std::vector<cplx> samples(n);
  double mx = 0.0;
  for (int m = 0; m < n; ++m) {
    const cplx tau = std::polar(radius, 2.0 * std::numbers::pi * m / n);
    samples[m] = f(tau);
    mx = std::max(mx, std::abs(samples[m]));
  }
  std::vector<cplx> c(n);
  for (int j = 0; j < n; ++j) {
    cplx acc = 0.0;
    for (int m = 0; m < n; ++m)
      acc += samples[m] * std::polar(1.0, -2.0 * std::numbers::pi * double(j) * m / n);
    c[j] = acc / double(n) / std::pow(radius, j);
  }
  *max_abs = mx;
  return c;
}

// Distance from a compactly supported bump to the nearest bond end; infinity
// for the other profiles.
double support_gap(const Bond& b) {
  const PotentialSpec& p = b.potential;
  if (p.kind != PotentialKind::bump || p.height == 0.0) return INFINITY;
  return std::max(0.0, std::min(p.center - p.half_width, b.length - p.center - p.half_width));
}

}  // namespace

std::vector<double> wkb_coefficients(const Bond& bond, BondDirection direction, int j_max) {
  if (j_max < 0 || j_max > kMaxWkbOrder)
    throw UnsupportedError("WKB order " + std::to_string(j_max) +
                           " exceeds the available potential derivatives (max " +
                           std::to_string(kMaxWkbOrder) + ")");
  const PotentialSpec p =
      direction == BondDirection::forward ? bond.potential : bond.potential.reversed(bond.length);

  // s_{j+1} = (s_j' + sum_{i=0}^{j} s_i s_{j-i}) / 2, s_1 = -V/2; each step
  // consumes one derivative order of the jet.
  std::vector<Jet4> s(j_max + 2);
  s[0] = Jet4::constant(-1.0);
  if (j_max >= 1) s[2] = -0.5 * potential_jet(p);
  for (int j = 1; j + 1 <= j_max; ++j) {
    Jet4 acc = s[j + 1].differentiate();
    for (int i = 0; i <= j; ++i) acc = acc + s[i + 1] * s[j - i + 1];
    s[j + 2] = 0.5 * acc;
  }
  std::vector<double> out(j_max + 2);
  for (int j = 0; j < j_max + 2; ++j) out[j] = s[j].c[0];
  out[1] = 0.0;
  return out;
}

std::vector<double> d_constants(const MetricGraph& graph) {
  std::vector<double> d;
  d.reserve(graph.bond_count());
  for (const Bond& b : graph.bonds()) d.push_back(potential_integral(b.potential, b.length));
  return d;
}

AsymptoticData asymptotic_F_coefficients(const MetricGraph& graph, const MatchingConditions& mc,
                                         const AsymptoticOptions& opts) {
  const int nb = graph.bond_count();
  const int ns = 2 * nb;
  if (mc.size() != ns) throw ValidationError("matching conditions do not match the graph size");

  AsymptoticData out;
  out.d = d_constants(graph);
  std::vector<Symbol> symbols(ns);
  bool truncated = false, polynomial = true;
  double radius = 1.0;
  for (int b = 0; b < nb; ++b) {
    const Bond& bond = graph.bond(b);
    out.s_forward.push_back(wkb_coefficients(bond, BondDirection::forward, kMaxWkbOrder));
    out.s_reverse.push_back(wkb_coefficients(bond, BondDirection::reverse, kMaxWkbOrder));
    symbols[b] = make_symbol(bond.potential, out.s_forward.back());
    symbols[nb + b] = make_symbol(bond.potential.reversed(bond.length), out.s_reverse.back());
    for (const Symbol* sym : {&symbols[b], &symbols[nb + b]}) {
      if (sym->kind == Symbol::Kind::series) truncated = true;
      if (sym->kind == Symbol::Kind::constant) {
        polynomial = false;
        radius = std::min(radius, 0.5 / std::sqrt(std::abs(sym->c)));
      }
    }
  }
  out.exact = !truncated;

  const int degree = truncated ? ns * (kMaxWkbOrder + 1) : ns;
  const int n_nodes = polynomial ? std::max(4 * (degree + 1), 64) : std::max(256, 8 * ns);
  auto p_of_tau = [&](cplx tau) {
    CMatrix m = tau * mc.a;
    for (int a = 0; a < ns; ++a) m.col(a) += mc.b.col(a) * symbols[a](tau);
    return numeric::log_determinant(m).value();
  };

  auto extract = [&](double r, std::vector<cplx>& c, std::vector<bool>& nonzero) {
    double max_abs = 0.0;
    c = taylor_coefficients(p_of_tau, r, n_nodes, &max_abs);
    nonzero.assign(c.size(), false);
    for (std::size_t j = 0; j < c.size(); ++j)
      nonzero[j] = std::abs(c[j]) * std::pow(r, double(j)) > 1e-11 * max_abs;
  };

  const int trusted = truncated ? kMaxWkbOrder + 1 : (polynomial ? degree : n_nodes / 2);
  std::vector<cplx> c;
  std::vector<bool> nonzero;
  extract(radius, c, nonzero);
  auto first_nonzero = [&](int from) {
    for (int j = from; j <= trusted; ++j)
      if (nonzero[j]) return j;
    return -1;
  };
  int n = first_nonzero(0);
  if (n < 0)
    throw NumericalError("all asymptotic coefficients of F(it) vanish; matching conditions are singular");

  // Rescale the circle to the natural size of the coefficients and redo.
  double scale = 1.0;
  for (int j = n + 1; j <= std::min(trusted, n + ns + 2); ++j)
    if (nonzero[j]) scale = std::max(scale, std::pow(std::abs(c[j] / c[n]), 1.0 / (j - n)));
  if (scale > 1.0 / radius) {
    radius = 1.0 / scale;
    extract(radius, c, nonzero);
    n = first_nonzero(0);
    if (n < 0) throw NumericalError("all asymptotic coefficients of F(it) vanish");
  }

  out.n = n;
  out.c_n = c[n];
  out.trusted_order = std::min(trusted, n + ns + 2);
  const int j_limit = truncated ? trusted : std::min(trusted, n + ns);
  for (int j = n + 1; j <= j_limit; ++j) {
    if (nonzero[j]) {
      out.j = j - n;
      out.c_nj = c[j];
      break;
    }
  }
  if (!out.j && truncated)
    throw UnsupportedError(
        "second asymptotic coefficient lies beyond the WKB order available for this potential");
  for (int j = 0; j <= out.trusted_order; ++j) out.coefficients.push_back(nonzero[j] ? c[j] : 0.0);

  double gap = INFINITY;
  for (const Bond& b : graph.bonds()) gap = std::min(gap, support_gap(b));
  out.t_scale = std::max({1.0, 1.0 / graph.min_length(), scale, 1.0 / radius});
  if (std::isfinite(gap)) out.t_scale = std::max(out.t_scale, 0.3 / std::max(gap, 1e-3));

  if (!opts.cross_validate) return out;

  // Large-t fit. r(t) = F(it) t^{N-2B} = c_N + c_{N+1}/t + ..., interpolated
  // by a quartic in t_0/t.
  const double t0 = 1e2 * out.t_scale;
  const double factors[] = {1.0, 2.0, 5.0, 10.0, 100.0};
  Eigen::Matrix<cplx, 5, 5> vand;
  Eigen::Matrix<cplx, 5, 1> rhs;
  for (int i = 0; i < 5; ++i) {
    const double t = t0 * factors[i];
    const SecularValue f = F_imag(graph, mc, t);
    const double y = 1.0 / factors[i];
    for (int m = 0; m < 5; ++m) vand(i, m) = std::pow(y, m);
    rhs(i) = std::exp(cplx(f.log_abs + (n - ns) * std::log(t), f.phase));
  }
  const Eigen::Matrix<cplx, 5, 1> a = vand.colPivHouseholderQr().solve(rhs);

  const SecularValue hi1 = F_imag(graph, mc, 1e4 * out.t_scale);
  const SecularValue hi2 = F_imag(graph, mc, 1e5 * out.t_scale);
  const double slope = (hi2.log_abs - hi1.log_abs) / std::log(10.0);
  const double rounded = std::round(slope);
  if (std::abs(slope - rounded) > 1e-3)
    throw NumericalError("large-t growth exponent of F(it) is not an integer (" +
                         std::to_string(slope) + "); fine-tuned matching conditions");
  if (int(rounded) != ns - n)
    throw NumericalError("large-t growth of F(it) gives N = " + std::to_string(ns - int(rounded)) +
                         ", the polynomial path gives N = " + std::to_string(n));

  out.fit_c_n = a(0);
  out.fit_c_n1 = a(1) * t0;
  const cplx alg_c_n1 = n + 1 < int(c.size()) && nonzero[n + 1] ? c[n + 1] : cplx(0.0);
  const double dev0 = std::abs(*out.fit_c_n - out.c_n) / std::abs(out.c_n);
  const double dev1 = std::abs(*out.fit_c_n1 - alg_c_n1) /
                      (std::abs(alg_c_n1) + std::abs(out.c_n) * out.t_scale);
  out.fit_discrepancy = std::max(dev0, dev1);
  if (out.fit_discrepancy > opts.tolerance)
    throw NumericalError("asymptotic coefficients: polynomial and large-t fit disagree (relative " +
                         std::to_string(out.fit_discrepancy) + ")");
  return out;
}

}  // namespace qgraph
