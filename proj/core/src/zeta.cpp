#include "qgraph/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "qgraph/error.hpp"
#include "qgraph/interval_solver.hpp"
#include "qgraph/numeric/quadrature.hpp"
#include "qgraph/numeric/special.hpp"
#include "qgraph/secular.hpp"

namespace qgraph {
namespace {

using numeric::cplx;
constexpr double kPi = std::numbers::pi;

// A log-type function l(t) together with its large-t model
//   alpha t + beta log t + kappa0 + eta t^{-J}
// and the remainder g = l - model, which must be O(t^{-k}).
struct Subtracted {
  std::function<cplx(double)> ell;
  std::function<cplx(double)> g;
  cplx alpha{}, beta{}, eta{};
  int j = 0;  // 0: no eta term
  int k = 2;
  double tail_start = 30.0;
  double small_t = 0.05;  // below this, (l(t) - l(0)) / t^2 comes from an interpolant
};

struct Piece {
  cplx value{};
  double error = 0.0;
};

// int_0^1 x^a h(x) dx for complex a with Re a > -1, h smooth on [0, 1].
// Real a: Gauss-Jacobi with the power in the weight. Complex a: x^{i Im a}
// oscillates without bound in log x near 0, which no polynomial rule
// captures. Dyadic panels [2^-m-1, 2^-m] down to eps, where x^a is smooth,
// then int_0^eps x^a p(x) dx in closed form for a cubic p fitted to h on
// [eps, 3 eps]. h itself is not sampled below eps: the callers' integrands
// lose accuracy there to cancellation.
Piece power_weighted(cplx a, const std::function<cplx(double)>& h, int n) {
  if (a.imag() == 0.0) {
    auto run = [&](int m) {
      const auto& rule = numeric::power_weight_rule(m, a.real());
      cplx acc = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * h(rule.nodes[i]);
      return acc;
    };
    const cplx fine = run(n);
    const cplx coarse = run((3 * n) / 4);
    return {fine, std::abs(fine - coarse)};
  }
  numeric::AdaptiveOptions ao;
  ao.rel_tol = 1e-12;
  ao.abs_tol = 1e-15;
  Piece out;
  constexpr int kPanels = 10;
  double hi = 1.0;
  for (int m = 0; m < kPanels; ++m) {
    const double lo = 0.5 * hi;
    const auto r = numeric::integrate_adaptive(
        [&](double x) { return std::exp(a * std::log(x)) * h(x); }, lo, hi, ao);
    out.value += r.value;
    out.error += r.error;
    hi = lo;
  }
  const double eps = hi;
  Eigen::Matrix4d vander;
  Eigen::Vector4cd samples;
  for (int i = 0; i < 4; ++i) {
    const double y = 1.0 + 2.0 * i / 3.0;
    for (int j = 0; j < 4; ++j) vander(i, j) = std::pow(y, j);
    samples(i) = h(eps * y);
  }
  const Eigen::Vector4cd c = vander.cast<cplx>().partialPivLu().solve(samples);
  cplx sliver = 0.0;
  for (int j = 0; j < 4; ++j) sliver += c(j) / (a + double(j) + 1.0);
  sliver *= std::exp((a + 1.0) * std::log(eps));
  out.value += sliver;
  // the cubic term's share bounds the truncation
  out.error += std::abs(c(3) * std::exp((a + 1.0) * std::log(eps)) / (a + 4.0));
  return out;
}

cplx cpow(double base, cplx e) { return std::exp(e * std::log(base)); }

// sin(pi s)/(2 pi s), continuous at s = 0.
cplx half_sinc(cplx s) {
  if (std::abs(s) < 1e-8) return 0.5;
  return numeric::sin_pi_over_pi(s) / (2.0 * s);
}

enum class Mode { value, finite_part };

struct Bracket {
  cplx value{};
  double error = 0.0;
  cplx residue{};
};

// Evaluates zeta(s, gamma) for the subtracted log-function, or its finite
// part and residue at a pole of the eta term.
Bracket evaluate(const Subtracted& sub, cplx s, double gamma, const ZetaOptions& opts, Mode mode) {
  const int n = opts.jacobi_nodes;
  const cplx two_s = 2.0 * s;
  const cplx pref = numeric::sin_pi_over_pi(s);
  numeric::AdaptiveOptions aopts;
  aopts.rel_tol = opts.rel_tol;
  aopts.abs_tol = opts.abs_tol;

  Bracket out;
  cplx bracket = 0.0;  // multiplied by sin(pi s)/pi at the end
  double err = 0.0;

  const double root = std::sqrt(gamma);
  const double t1 = root + 1.0;
  const double big_t = std::max(t1 + 1.0, sub.tail_start);

  if (gamma == 0.0) {
    // [0, 1]: 2s int t^{-2s-1} (l - l(0)) after one integration by parts.
    const cplx l0 = sub.ell(0.0);
    const cplx l1 = sub.ell(1.0);
    // (l - l0)/t^2 is analytic in t^2 but cancels to ~1e-16/t^2 near 0, which
    // the t^{1-2s} weight amplifies as s -> 1. Below t_c use its degree-5
    // interpolant in t^2 from [t_c, 3 t_c].
    const double tc = sub.small_t;
    auto quotient = [&](double t) { return (sub.ell(t) - l0) / (t * t); };
    constexpr int kFit = 6;
    Eigen::Matrix<double, kFit, kFit> vander;
    Eigen::Matrix<cplx, kFit, 1> samples;
    for (int i = 0; i < kFit; ++i) {
      const double y = 1.0 + 2.0 * i / (kFit - 1);  // t / t_c
      for (int j = 0; j < kFit; ++j) vander(i, j) = std::pow(y * y, j);
      samples(i) = quotient(tc * y);
    }
    const Eigen::Matrix<cplx, kFit, 1> coef = vander.cast<cplx>().partialPivLu().solve(samples);
    auto near_zero = [&](double t) {
      if (t >= tc) return quotient(t);
      const double x = (t / tc) * (t / tc);
      cplx acc = 0.0;
      for (int j = kFit - 1; j >= 0; --j) acc = acc * x + coef(j);
      return acc;
    };
    const Piece low = power_weighted(1.0 - two_s, [&](double t) { return two_s * near_zero(t); }, n);
    bracket += (l1 - l0) + low.value - sub.g(1.0);
    err += low.error;
  } else {
    // [r, r+1] in tau = t - r: 2s int t (t^2-gamma)^{-s-1} (g - g(r)).
    const cplx g0 = sub.g(root);
    const Piece low = power_weighted(
        -s,
        [&](double tau) {
          const double t = root + tau;
          return two_s * t * cpow(tau + 2.0 * root, -s - 1.0) * (sub.g(t) - g0) / tau;
        },
        n);
    bracket += -cpow(t1 * t1 - gamma, -s) * g0 + low.value;
    err += low.error;
  }

  // [r+1, T] adaptively, [T, inf) in u = 1/t with the t^{-k} decay in the weight.
  const auto mid = numeric::integrate_adaptive(
      [&](double t) {
        const cplx w = gamma == 0.0 ? cpow(t, -two_s - 1.0) : t * cpow(t * t - gamma, -s - 1.0);
        return two_s * w * sub.g(t);
      },
      t1, big_t, aopts);
  bracket += mid.value;
  err += mid.error;

  const cplx a_tail = two_s - 1.0 + double(sub.k);
  const Piece tail = power_weighted(
      a_tail,
      [&](double v) {
        const double u = v / big_t;
        const double t = 1.0 / u;
        cplx h = two_s * sub.g(t) * std::pow(t, sub.k);
        if (gamma != 0.0) h *= cpow(1.0 - gamma * u * u, -s - 1.0);
        return h;
      },
      n);
  const cplx tail_scale = cpow(big_t, -a_tail - 1.0);
  bracket += tail_scale * tail.value;
  err += std::abs(tail_scale) * tail.error;

  cplx value = pref * bracket;
  err *= std::abs(pref);

  // Closed-form model terms.
  if (gamma == 0.0) {
    // int_1^inf t^{-2s} d/dt[model]:  alpha/(2s-1) + beta/(2s) - eta J/(2s+J)
    if (sub.alpha != 0.0) value += pref * sub.alpha / (two_s - 1.0);
    value += sub.beta * half_sinc(s);
    if (sub.j != 0 && sub.eta != 0.0) {
      const cplx denom = two_s + double(sub.j);
      if (std::abs(denom) < 1e-14) {
        if (mode != Mode::finite_part) throw NumericalError("zeta has a pole at this s");
        // sin(pi s)/pi is stationary at s = -J/2 for odd J, so only the residue survives.
        out.residue = pref * (-sub.eta * double(sub.j) / 2.0);
      } else {
        value += pref * (-sub.eta * double(sub.j) / denom);
      }
    }
  } else {
    if (sub.alpha != 0.0) {
      if (numeric::is_nonpositive_integer(s - 0.5)) throw NumericalError("zeta has a pole at this s");
      value += sub.alpha * numeric::gamma_ratio(s - 0.5, s) / (2.0 * std::sqrt(kPi)) *
               cpow(gamma, 0.5 - s);
    }
    value += 0.5 * sub.beta * cpow(gamma, -s);
    if (sub.j != 0 && sub.eta != 0.0) {
      const double half_j = 0.5 * sub.j;
      if (numeric::is_nonpositive_integer(s + half_j))
        throw NumericalError("zeta has a pole at this s");
      value -= sub.eta * double(sub.j) * numeric::gamma_ratio(s + half_j, s) /
               (2.0 * std::tgamma(1.0 + half_j)) * cpow(gamma, -s - half_j);
    }
  }
  out.value = value;
  out.error = err;
  return out;
}

void check_strip(cplx s, double lo, double hi, const char* what) {
  if (!(s.real() > lo && s.real() < hi))
    throw UnsupportedError(std::string(what) + ": Re s = " + std::to_string(s.real()) +
                           " outside the representation's strip (" + std::to_string(lo) + ", " +
                           std::to_string(hi) + ")");
}

void check_gamma(double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ValidationError("gamma must be >= 0");
}

double support_gap(const Bond& b) {
  const PotentialSpec& p = b.potential;
  if (p.kind != PotentialKind::bump || p.height == 0.0) return INFINITY;
  return std::max(1e-3, std::min(p.center - p.half_width, b.length - p.center - p.half_width));
}

Subtracted dirichlet_subtracted(const Bond& bond) {
  if (bond.potential.min_value(bond.length) < 0.0)
    throw UnsupportedError("negative potentials are not supported by the rotated-axis representation");
  const double d = potential_integral(bond.potential, bond.length);
  const double len = bond.length;
  const PotentialSpec pot = bond.potential;
  Subtracted sub;
  sub.ell = [pot, len](double t) -> cplx {
    if (pot.is_zero()) return t == 0.0 ? std::log(len) : std::log(std::sinh(t * len) / t);
    return propagate_growing(pot, len, t * t).log_abs_value;
  };
  sub.g = [rem = std::make_shared<const DirichletRemainder>(bond)](double t) -> cplx {
    return (*rem)(t);
  };
  sub.alpha = len;
  sub.beta = -1.0;
  sub.eta = d;
  sub.j = d != 0.0 ? 1 : 0;
  sub.k = 2;
  sub.small_t = 0.05 / std::max(1.0, len);
  double scale = 30.0 / len;
  scale = std::max(scale, 30.0 / support_gap(bond));
  if (pot.kind == PotentialKind::constant) scale = std::max(scale, 10.0 * std::sqrt(std::abs(pot.value)));
  sub.tail_start = scale;
  return sub;
}

Subtracted im_subtracted(const MetricGraph& graph, const MatchingConditions& mc,
                         const AsymptoticData& asym) {
  const int ns = graph.slot_count();
  const double log_cn = std::log(std::abs(asym.c_n));
  const double arg_cn = std::arg(asym.c_n);
  const cplx beta = double(ns - asym.n);
  const cplx eta = asym.eta();
  const int j = asym.j ? *asym.j : 0;
  Subtracted sub;
  sub.ell = [&graph, &mc, log_cn, arg_cn](double t) -> cplx {
    const SecularValue f = F_imag(graph, mc, t);
    return {f.log_abs - log_cn, numeric::wrap_phase(f.phase - arg_cn)};
  };
  sub.g = [ell = sub.ell, beta, eta, j](double t) -> cplx {
    cplx v = ell(t) - beta * std::log(t);
    if (j != 0) v -= eta * std::pow(t, -j);
    return v;
  };
  sub.beta = beta;
  sub.eta = eta;
  sub.j = j;
  sub.k = j != 0 ? j + 1 : 2;
  double longest = 1.0;
  for (const Bond& b : graph.bonds()) longest = std::max(longest, b.length);
  sub.small_t = 0.05 / longest;
  double scale = std::max(30.0 / graph.min_length(), 10.0 * asym.t_scale);
  for (const Bond& b : graph.bonds()) scale = std::max(scale, 30.0 / support_gap(b));
  sub.tail_start = scale;
  return sub;
}

}  // namespace

void check_F_at_zero(const MetricGraph& graph, const MatchingConditions& mc,
                     const AsymptoticData& asym) {
  const SecularValue f0 = F_imag(graph, mc, 1e-4);
  const double threshold = std::log(1e-8 * std::max(std::abs(asym.c_n), 1.0));
  if (!(f0.log_abs > threshold))
    throw NumericalError("F(0) vanishes: zero is (close to) an eigenvalue; the rotated-axis "
                         "representation requires F(0) != 0");
}

ZetaEvaluation zeta_im(const MetricGraph& graph, const MatchingConditions& mc,
                       const AsymptoticData& asym, cplx s, double gamma, const ZetaOptions& opts) {
  require_rotated_axis_support(graph, mc);
  check_gamma(gamma);
  const Subtracted sub = im_subtracted(graph, mc, asym);
  ZetaEvaluation out;
  out.s = s;
  out.gamma = gamma;
  out.strip_lo = -0.5 * sub.k;
  out.strip_hi = 1.0;
  check_strip(s, out.strip_lo, out.strip_hi, "zeta_im");
  if (gamma == 0.0) check_F_at_zero(graph, mc, asym);
  const Bracket b = evaluate(sub, s, gamma, opts, Mode::value);
  out.value = b.value;
  out.quadrature_error = b.error;
  return out;
}

ZetaEvaluation zeta_im(const MetricGraph& graph, const MatchingConditions& mc, cplx s, double gamma,
                       const ZetaOptions& opts) {
  require_rotated_axis_support(graph, mc);
  return zeta_im(graph, mc, asymptotic_F_coefficients(graph, mc), s, gamma, opts);
}

ZetaEvaluation zeta_dir_bond(const Bond& bond, cplx s, double gamma, const ZetaOptions& opts) {
  check_gamma(gamma);
  const Subtracted sub = dirichlet_subtracted(bond);
  ZetaEvaluation out;
  out.s = s;
  out.gamma = gamma;
  out.strip_lo = -1.0;
  out.strip_hi = 1.0;
  check_strip(s, out.strip_lo, out.strip_hi, "zeta_dir_bond");
  const Bracket b = evaluate(sub, s, gamma, opts, Mode::value);
  out.value = b.value;
  out.quadrature_error = b.error;
  return out;
}

ZetaEvaluation zeta_total(const MetricGraph& graph, const MatchingConditions& mc, cplx s,
                          double gamma, const ZetaOptions& opts) {
  ZetaEvaluation total = zeta_im(graph, mc, s, gamma, opts);
  for (const Bond& b : graph.bonds()) {
    const ZetaEvaluation d = zeta_dir_bond(b, s, gamma, opts);
    total.value += d.value;
    total.quadrature_error += d.quadrature_error;
    total.strip_lo = std::max(total.strip_lo, d.strip_lo);
  }
  return total;
}

MinusHalfData minus_half_data(const MetricGraph& graph, const MatchingConditions& mc,
                              const AsymptoticData& asym, const ZetaOptions& opts) {
  require_rotated_axis_support(graph, mc);
  check_F_at_zero(graph, mc, asym);
  const cplx s = -0.5;
  MinusHalfData out;

  // zeta_im: at s = -1/2 the (2B-N) log t term contributes -(2B-N)/pi to the
  // finite part, the eta t^{-J} term a pole with residue eta/(2 pi) when J = 1
  // and a finite -eta J/(J-1) inside the bracket otherwise.
  const Subtracted im = im_subtracted(graph, mc, asym);
  const Bracket bi = evaluate(im, s, 0.0, opts, Mode::finite_part);
  out.fp_im = bi.value.real();
  out.res_im = bi.residue.real();
  out.error = bi.error;

  // Dirichlet parts: alpha = L gives -L/2, beta = -1 gives +1 inside the
  // bracket; eta = d_b with J = 1 is the pole, residue d_b/(2 pi).
  for (const Bond& bond : graph.bonds()) {
    const Subtracted dir = dirichlet_subtracted(bond);
    const Bracket bd = evaluate(dir, s, 0.0, opts, Mode::finite_part);
    out.fp_dir.push_back(bd.value.real());
    out.res_dir.push_back(bd.residue.real());
    out.error += bd.error;
  }
  out.fp_total = out.fp_im;
  out.res_total = out.res_im;
  for (std::size_t b = 0; b < out.fp_dir.size(); ++b) {
    out.fp_total += out.fp_dir[b];
    out.res_total += out.res_dir[b];
  }
  return out;
}

MinusHalfData minus_half_data(const MetricGraph& graph, const MatchingConditions& mc,
                              const ZetaOptions& opts) {
  require_rotated_axis_support(graph, mc);
  return minus_half_data(graph, mc, asymptotic_F_coefficients(graph, mc), opts);
}

}  // namespace qgraph
