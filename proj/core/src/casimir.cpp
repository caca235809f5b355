#include "qgraph/casimir.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "qgraph/error.hpp"
#include "qgraph/interval_solver.hpp"
#include "qgraph/numeric/quadrature.hpp"
#include "qgraph/secular.hpp"

namespace qgraph {
namespace {

constexpr double kPi = std::numbers::pi;

void require_compact(const Bond& bond) {
  if (bond.potential.is_zero()) return;
  if (!bond.potential.compactly_supported_in(bond.length))
    throw UnsupportedError("bond " + std::to_string(bond.id) +
                           ": the force needs a potential that vanishes near both bond ends");
}

struct Integral {
  double value = 0.0;
  double error = 0.0;
};

// int_0^inf f over [0, 1] and [1, T]; T doubles until |f(T)| drops below
// `floor`. The integrands here decay exponentially.
Integral integrate_decaying(const std::function<double(double)>& f, double floor, double t_max) {
  numeric::AdaptiveOptions ao;
  ao.abs_tol = std::max(1e-13, floor);
  ao.rel_tol = 1e-10;
  Integral out;
  const auto low = numeric::integrate_adaptive_real(f, 0.0, 1.0, ao);
  out.value = low.value.real();
  out.error = low.error;
  double a = 1.0, b = 2.0;
  while (true) {
    const auto piece = numeric::integrate_adaptive_real(f, a, b, ao);
    out.value += piece.value.real();
    out.error += piece.error;
    if (std::abs(f(b)) < floor) break;
    if (b >= t_max) throw NumericalError("force integrand does not decay within the cutoff");
    a = b;
    b *= 2.0;
  }
  return out;
}

// Richardson central difference of a length-dependent scalar.
struct Difference {
  double value;
  double error;
};

Difference length_derivative(const std::function<double(double)>& q, double length, double rel) {
  const double h = rel * length;
  auto central = [&](double step) { return (q(length + step) - q(length - step)) / (2.0 * step); };
  const double d1 = central(h);
  const double d2 = central(0.5 * h);
  const double r = d2 + (d2 - d1) / 3.0;
  return {r, std::abs(r - d2)};
}

}  // namespace

double residue_at_minus_half(const MetricGraph& graph, const AsymptoticData& asym) {
  double res = 0.0;
  if (asym.j && *asym.j == 1) res += asym.eta().real() / (2.0 * kPi);
  for (const Bond& b : graph.bonds()) res += potential_integral(b.potential, b.length) / (2.0 * kPi);
  return res;
}

EnergyResult vacuum_energy(const MetricGraph& graph, const MatchingConditions& mc, double mu,
                           const CasimirOptions& opts) {
  if (!(mu > 0.0)) throw ValidationError("mu must be positive");
  const MinusHalfData mh = minus_half_data(graph, mc, opts.zeta);
  EnergyResult e;
  e.fp_half = 0.5 * mh.fp_total;
  e.res_half = 0.5 * mh.res_total;
  e.mu = mu;
  e.ambiguous = std::abs(e.res_half) > 1e-10;
  e.finite_energy_at_mu = e.fp_half + e.res_half * std::log(mu * mu);
  e.error_estimate = 0.5 * mh.error;
  return e;
}

ForceResult casimir_force(const MetricGraph& graph, const MatchingConditions& mc, int bond_index,
                          const CasimirOptions& opts) {
  if (bond_index < 0 || bond_index >= graph.bond_count())
    throw ValidationError("bond index out of range");
  require_rotated_axis_support(graph, mc);
  const Bond& bond = graph.bond(bond_index);
  require_compact(bond);
  const double rel = opts.relative_step;
  const double length = bond.length;
  const double t_max = 200.0 / graph.min_length();
  // Finite differences of O(log) quantities carry noise ~ eps |value| / h.
  const double noise_floor = std::max(1e-14, 1e3 * std::numeric_limits<double>::epsilon() / rel);

  // Dirichlet part: d/dL [log u(L; t^2) - L t].
  ForceResult out;
  out.bond = bond_index;
  double dir_err = 0.0;
  auto dir_integrand = [&](double t) {
    const Difference d = length_derivative(
        [&](double len) { return propagate_growing(bond.potential, len, t * t).log_abs_excess; },
        length, rel);
    dir_err = std::max(dir_err, d.error);
    return d.value;
  };
  const Integral dir = integrate_decaying(dir_integrand, noise_floor, t_max);
  out.dirichlet_part = -dir.value / (2.0 * kPi);

  const AsymptoticData asym = asymptotic_F_coefficients(graph, mc);
  check_F_at_zero(graph, mc, asym);
  double int_err = 0.0;
  auto int_integrand = [&](double t) {
    const DerivativeEstimate d = dF_dL_imag(graph, mc, t, bond_index, rel);
    int_err = std::max(int_err, d.error);
    return d.value.real();
  };
  const Integral inter = integrate_decaying(int_integrand, noise_floor, t_max);
  out.interaction_part = -inter.value / (2.0 * kPi);

  out.force = out.dirichlet_part + out.interaction_part;
  const double t_span = std::min(t_max, 60.0 / graph.min_length());
  out.error_estimate =
      (dir.error + inter.error + (dir_err + int_err) * t_span) / (2.0 * kPi);
  return out;
}

double mu_sensitivity(const MetricGraph& graph, const MatchingConditions& mc, int bond_index,
                      const CasimirOptions& opts) {
  if (bond_index < 0 || bond_index >= graph.bond_count())
    throw ValidationError("bond index out of range");
  require_compact(graph.bond(bond_index));
  AsymptoticOptions ao;
  ao.cross_validate = false;
  auto res_half = [&](double len) {
    const MetricGraph g = graph.with_length(bond_index, len);
    return 0.5 * residue_at_minus_half(g, asymptotic_F_coefficients(g, mc, ao));
  };
  return length_derivative(res_half, graph.bond(bond_index).length, opts.relative_step).value;
}

}  // namespace qgraph
