#include "qgraph/interval_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "qgraph/error.hpp"
#include "qgraph/numeric/jet.hpp"
#include "qgraph/numeric/quadrature.hpp"
#include "qgraph/wkb.hpp"

namespace qgraph {
namespace {

// Magnus steps per bump half-width. Derivatives of the bump scale like w^-k,
// so the step is tied to w rather than to the bond length.
constexpr int kStepsPerHalfWidth = 100;
constexpr int kMinSteps = 32;

struct Segment {
  double a, b;
  bool numeric;
  double q_offset;  // V on constant segments
};

std::vector<Segment> segments(const PotentialSpec& p, double length) {
  switch (p.kind) {
    case PotentialKind::zero: return {{0.0, length, false, 0.0}};
    case PotentialKind::constant: return {{0.0, length, false, p.value}};
    case PotentialKind::bump: {
      const double a = std::max(0.0, p.center - p.half_width);
      const double b = std::min(length, p.center + p.half_width);
      if (b <= a || p.height == 0.0) return {{0.0, length, false, 0.0}};
      std::vector<Segment> out;
      if (a > 0.0) out.push_back({0.0, a, false, 0.0});
      out.push_back({a, b, true, 0.0});
      if (b < length) out.push_back({b, length, false, 0.0});
      return out;
    }
  }
  return {};
}

int magnus_steps(const PotentialSpec& p, double width) {
  const double n = std::ceil(kStepsPerHalfWidth * width / p.half_width);
  return std::max(kMinSteps, static_cast<int>(n));
}

/// cosh(r), sinh(r)/r for the scaled exponential; when r > 1 the common
/// factor e^r is returned separately in `log_factor`. `excess` is
/// log_factor - base computed without cancellation, where delta = base^2 + dev.
struct HyperbolicPair {
  double ch;
  double sh_over_r;
  double log_factor;
  double excess;
};

HyperbolicPair hyperbolic(double base, double dev) {
  const double delta = base * base + dev;  // r^2, negative on the trigonometric branch
  if (delta > 1.0) {
    const double r = std::sqrt(delta);
    const double e = std::exp(-2.0 * r);
    return {0.5 * (1.0 + e), 0.5 * (1.0 - e) / r, r, dev / (r + base)};
  }
  if (delta > 0.0) {
    const double r = std::sqrt(delta);
    return {std::cosh(r), std::sinh(r) / r, 0.0, -base};
  }
  if (delta < 0.0) {
    const double r = std::sqrt(-delta);
    return {std::cos(r), std::sin(r) / r, 0.0, -base};
  }
  return {1.0, 1.0, 0.0, -base};
}

/// 2x2 propagator exp(Omega) with Omega = [[c, h], [h*qbar, -c]], scaled by
/// exp(-log_factor).
struct Step {
  double m00, m01, m10, m11;
  double log_factor;
  double excess;
};

// `rate` is sqrt(shift) for shift >= 0 and 0 otherwise; the excess is only
// meaningful on the rotated axis.
Step exact_step(double v, double shift, double rate, double h) {
  const double q = v + shift;
  const HyperbolicPair hp =
      rate > 0.0 ? hyperbolic(rate * h, v * h * h) : hyperbolic(0.0, q * h * h);
  return {hp.ch, h * hp.sh_over_r, q * h * hp.sh_over_r, hp.ch, hp.log_factor, hp.excess};
}

Step magnus_step(const PotentialSpec& p, double shift, double rate, double x, double h) {
  static const double kGauss = std::sqrt(3.0) / 6.0;
  const double v1 = potential_value(p, x + h * (0.5 - kGauss), 0);
  const double v2 = potential_value(p, x + h * (0.5 + kGauss), 0);
  const double vbar = 0.5 * (v1 + v2);
  const double qbar = vbar + shift;
  const double c = std::sqrt(3.0) * h * h * (v1 - v2) / 12.0;
  const HyperbolicPair hp = rate > 0.0 ? hyperbolic(rate * h, c * c + h * h * vbar)
                                       : hyperbolic(0.0, c * c + h * h * qbar);
  return {hp.ch + c * hp.sh_over_r, h * hp.sh_over_r, h * qbar * hp.sh_over_r,
          hp.ch - c * hp.sh_over_r, hp.log_factor, hp.excess};
}

struct ScaledState {
  double p = 0.0, dp = 1.0, log_scale = 0.0;
  double log_excess = 0.0;  // log_scale minus rate * distance travelled

  void apply(const Step& s) {
    const double np = s.m00 * p + s.m01 * dp;
    const double ndp = s.m10 * p + s.m11 * dp;
    p = np;
    dp = ndp;
    log_scale += s.log_factor;
    log_excess += s.excess;
    const double m = std::max(std::abs(p), std::abs(dp));
    if (m > 1e64 || (m < 1e-64 && m > 0.0)) normalise();
  }
  void normalise() {
    const double m = std::max(std::abs(p), std::abs(dp));
    if (m == 0.0) return;
    p /= m;
    dp /= m;
    log_scale += std::log(m);
    log_excess += std::log(m);
  }
};

GrowthResult grow(const PotentialSpec& p, double length, double shift, int refine) {
  ScaledState st;
  const double rate = shift > 0.0 ? std::sqrt(shift) : 0.0;
  for (const Segment& seg : segments(p, length)) {
    const double h = seg.b - seg.a;
    if (!seg.numeric) {
      st.apply(exact_step(seg.q_offset, shift, rate, h));
      st.normalise();
      continue;
    }
    const int n = magnus_steps(p, h) * refine;
    const double dx = h / n;
    for (int i = 0; i < n; ++i) st.apply(magnus_step(p, shift, rate, seg.a + i * dx, dx));
    st.normalise();
  }
  GrowthResult r;
  if (st.p == 0.0) {
    r.sign = 0;
    r.log_abs_value = -INFINITY;
    r.log_abs_excess = -INFINITY;
    r.log_derivative = INFINITY;
    return r;
  }
  r.sign = st.p > 0.0 ? 1 : -1;
  r.log_abs_value = st.log_scale + std::log(std::abs(st.p));
  r.log_abs_excess = st.log_excess + std::log(std::abs(st.p));
  r.log_derivative = st.dp / st.p;
  return r;
}

Eigen::Matrix2d transfer(const PotentialSpec& p, double length, double shift, int refine) {
  Eigen::Matrix2d m = Eigen::Matrix2d::Identity();
  auto apply = [&m](const Step& s) {
    Eigen::Matrix2d step;
    const double f = s.log_factor == 0.0 ? 1.0 : std::exp(s.log_factor);
    step << s.m00 * f, s.m01 * f, s.m10 * f, s.m11 * f;
    m = step * m;
  };
  for (const Segment& seg : segments(p, length)) {
    const double h = seg.b - seg.a;
    if (!seg.numeric) {
      apply(exact_step(seg.q_offset, shift, 0.0, h));
      continue;
    }
    const int n = magnus_steps(p, h) * refine;
    const double dx = h / n;
    for (int i = 0; i < n; ++i) apply(magnus_step(p, shift, 0.0, seg.a + i * dx, dx));
  }
  return m;
}

bool has_numeric_segment(const PotentialSpec& p, double length) {
  for (const auto& s : segments(p, length))
    if (s.numeric) return true;
  return false;
}

}  // namespace

double SignedLog::value() const {
  if (log_abs < std::log(1e-300)) return 0.0;
  return sign * std::exp(log_abs);
}

GrowthResult propagate_growing(const PotentialSpec& potential, double length, double shift) {
  GrowthResult fine = grow(potential, length, shift, 2);
  if (!has_numeric_segment(potential, length) || fine.sign == 0) return fine;
  const GrowthResult coarse = grow(potential, length, shift, 1);
  // the Magnus scheme is symmetric, so the error expands in even powers h^4, h^6, ...
  GrowthResult out = fine;
  out.log_abs_value = fine.log_abs_value + (fine.log_abs_value - coarse.log_abs_value) / 15.0;
  out.log_abs_excess = fine.log_abs_excess + (fine.log_abs_excess - coarse.log_abs_excess) / 15.0;
  out.log_derivative = fine.log_derivative + (fine.log_derivative - coarse.log_derivative) / 15.0;
  out.error_estimate = std::max(std::abs(fine.log_abs_value - coarse.log_abs_value),
                                std::abs(fine.log_derivative - coarse.log_derivative) /
                                    std::max(1.0, std::abs(fine.log_derivative))) /
                       15.0;
  return out;
}

Eigen::Matrix2d transfer_matrix(const PotentialSpec& potential, double length, double shift) {
  const Eigen::Matrix2d fine = transfer(potential, length, shift, 2);
  if (!has_numeric_segment(potential, length)) return fine;
  const Eigen::Matrix2d coarse = transfer(potential, length, shift, 1);
  return fine + (fine - coarse) / 15.0;
}

double imag_axis_t_min(const Bond& bond) {
  const double vmin = bond.potential.min_value(bond.length);
  if (vmin >= 0.0) return 0.0;
  return std::sqrt(-vmin) + 1e-6;
}

ImagAxisSolution solve_imag_axis(const Bond& bond, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw NumericalError("solve_imag_axis: t must be >= 0");
  const double tmin = imag_axis_t_min(bond);
  if (t < tmin) {
    throw NumericalError("solve_imag_axis: t = " + std::to_string(t) + " below t_min = " +
                         std::to_string(tmin) + " for bond " + std::to_string(bond.id));
  }
  const double shift = t * t;
  const GrowthResult fwd = propagate_growing(bond.potential, bond.length, shift);
  const GrowthResult rev =
      propagate_growing(bond.potential.reversed(bond.length), bond.length, shift);
  if (fwd.sign <= 0 || rev.sign <= 0) {
    throw NumericalError("solve_imag_axis: u(L) not positive on bond " + std::to_string(bond.id));
  }
  ImagAxisSolution s;
  s.t = t;
  // f_b(x) = ubar(L - x)/ubar(L), with ubar integrated from the terminal end
  s.f_prime_at_0 = -rev.log_derivative;
  s.f_prime_rev_at_0 = -fwd.log_derivative;
  s.log_u_at_L = fwd.log_abs_value;
  s.log_u_rev_at_L = rev.log_abs_value;
  s.f_prime_at_L = SignedLog{-1, -fwd.log_abs_value};
  s.error_estimate = std::max(fwd.error_estimate, rev.error_estimate);
  return s;
}

RealAxisBasis solve_real_axis(const Bond& bond, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw NumericalError("solve_real_axis: k must be > 0");
  const Eigen::Matrix2d m = transfer_matrix(bond.potential, bond.length, -k * k);
  RealAxisBasis r;
  r.k = k;
  r.c = m(0, 0);
  r.c_prime = m(1, 0);
  r.s = m(0, 1);
  r.s_prime = m(1, 1);
  return r;
}

double dirichlet_log_u_subtracted(const Bond& bond, double t) {
  if (!(t > 0.0)) throw NumericalError("dirichlet_log_u_subtracted: t must be > 0");
  const double shift = t * t;
  if (t < imag_axis_t_min(bond)) throw NumericalError("dirichlet_log_u_subtracted: t below t_min");
  const double d = potential_integral(bond.potential, bond.length);
  if (bond.potential.is_zero()) {
    // log(sinh(tL)/t) - tL + log(2t) = log(1 - e^{-2tL}), evaluated without cancellation
    return std::log1p(-std::exp(-2.0 * t * bond.length));
  }
  const GrowthResult fwd = propagate_growing(bond.potential, bond.length, shift);
  return fwd.log_abs_excess + std::log(2.0 * t) - d / t;
}

namespace {

// sigma_{-1}..sigma_5 at x for the growing solution, u'/u = t + sum sigma_j t^-j:
// sigma_1 = V/2, sigma_{j+1} = -(sigma_j' + sum_{i=0}^{j} sigma_i sigma_{j-i}) / 2.
std::array<double, 7> growing_wkb(const PotentialSpec& p, double x) {
  using Jet4 = numeric::Jet<4>;
  Jet4 v;
  double fact = 1.0;
  for (int k = 0; k <= 4; ++k) {
    if (k > 1) fact *= k;
    v.c[k] = potential_value(p, x, k) / fact;
  }
  std::array<Jet4, 7> sig{};
  sig[0] = Jet4::constant(1.0);
  sig[2] = 0.5 * v;
  for (int j = 1; j <= 4; ++j) {
    Jet4 acc = sig[j + 1].differentiate();
    for (int i = 0; i <= j; ++i) acc = acc + sig[i + 1] * sig[j - i + 1];
    sig[j + 2] = -0.5 * acc;
  }
  std::array<double, 7> out{};
  for (int j = 0; j < 7; ++j) out[j] = sig[j].c[0];
  return out;
}

}  // namespace

DirichletRemainder::DirichletRemainder(const Bond& bond)
    : bond_(bond), d_(potential_integral(bond.potential, bond.length)) {
  const PotentialSpec& p = bond.potential;
  if (p.kind != PotentialKind::bump || p.height == 0.0) return;  // closed forms are exact
  const double a = std::max(0.0, p.center - p.half_width);
  const double b = std::min(bond.length, p.center + p.half_width);
  if (b <= a) return;
  numeric::AdaptiveOptions ao;
  ao.abs_tol = 1e-15;
  ao.rel_tol = 1e-13;
  for (int j = 2; j <= 5; ++j) {
    integrals_[j] =
        numeric::integrate_adaptive_real([&](double x) { return growing_wkb(p, x)[j + 1]; }, a, b, ao)
            .value.real();
  }
  const auto sig0 = growing_wkb(p, 0.0);
  const auto s0 = wkb_coefficients(bond, BondDirection::forward, kMaxWkbOrder);
  for (int j = 1; j <= 4; ++j) endpoint_[j] = sig0[j + 1] - s0[j + 1];
  switch_ = std::max({1e3, 300.0 / p.half_width, 100.0 * std::sqrt(std::abs(p.height))});
}

double DirichletRemainder::series(double t) const {
  double g = 0.0;
  for (int j = 2; j <= 5; ++j) g += integrals_[j] * std::pow(t, -j);
  // log of (S+(0) - S-(0)) / (2t)
  double e = 0.0;
  for (int j = 1; j <= 4; ++j) e += endpoint_[j] * std::pow(t, -j - 1) / 2.0;
  return g - std::log1p(e);
}

double DirichletRemainder::operator()(double t) const {
  if (!(t > 0.0)) throw NumericalError("Dirichlet remainder: t must be > 0");
  if (bond_.potential.is_zero()) return std::log1p(-std::exp(-2.0 * t * bond_.length));
  if (t >= switch_) return series(t);
  return propagate_growing(bond_.potential, bond_.length, t * t).log_abs_excess +
         std::log(2.0 * t) - d_ / t;
}

}  // namespace qgraph
