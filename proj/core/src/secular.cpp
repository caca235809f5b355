#include "qgraph/secular.hpp"

#include <cmath>
#include <string>

#include "qgraph/error.hpp"
#include "qgraph/interval_solver.hpp"

namespace qgraph {

CMatrix assemble_M_imag(const MetricGraph& graph, double t) {
  const int nb = graph.bond_count();
  CMatrix m = CMatrix::Zero(2 * nb, 2 * nb);
  for (int b = 0; b < nb; ++b) {
    const Bond& bond = graph.bond(b);
    const ImagAxisSolution sol = solve_imag_axis(bond, t);
    m(b, b) = sol.f_prime_at_0;
    m(nb + b, nb + b) = sol.f_prime_rev_at_0;
    const double fl = sol.f_prime_at_L.value();
    if (fl != 0.0) {
      const cplx phase = std::polar(1.0, bond.vector_potential * bond.length);
      m(nb + b, b) = -fl * phase;
      m(b, nb + b) = -fl * std::conj(phase);
    }
  }
  return m;
}

SecularValue F_imag(const MetricGraph& graph, const MatchingConditions& mc, double t) {
  if (mc.size() != graph.slot_count())
    throw ValidationError("matching conditions do not match the graph size");
  const CMatrix m = assemble_M_imag(graph, t);
  const numeric::LogDet ld = numeric::log_determinant(mc.a + mc.b * m);
  SecularValue out;
  out.t = t;
  out.log_abs = ld.log_abs;
  out.phase = ld.phase;
  if (std::isfinite(ld.log_abs) && std::abs(ld.log_abs) < 700.0) out.value = ld.value();
  else if (ld.singular()) out.value = cplx(0.0);
  return out;
}

namespace {

double log_ratio_real(const SecularValue& a, const SecularValue& b) { return a.log_abs - b.log_abs; }

cplx log_ratio(const SecularValue& a, const SecularValue& b) {
  return {log_ratio_real(a, b), numeric::wrap_phase(a.phase - b.phase)};
}

}  // namespace

DerivativeEstimate dF_dL_imag(const MetricGraph& graph, const MatchingConditions& mc, double t,
                              int bond_index, double relative_step) {
  const Bond& bond = graph.bond(bond_index);
  const double length = bond.length;
  const double h = relative_step * length;
  if (!(h > 0.0)) throw ValidationError("length step must be positive");
  if (!bond.potential.is_zero() && !bond.potential.compactly_supported_in(length - h))
    throw UnsupportedError("potential on bond " + std::to_string(bond.id) +
                           " is not strictly inside the bond");

  auto central = [&](double step) {
    const SecularValue plus = F_imag(graph.with_length(bond_index, length + step), mc, t);
    const SecularValue minus = F_imag(graph.with_length(bond_index, length - step), mc, t);
    return log_ratio(plus, minus) / (2.0 * step);
  };
  const cplx d1 = central(h);
  const cplx d2 = central(0.5 * h);
  const cplx extrapolated = d2 + (d2 - d1) / 3.0;
  return {extrapolated, std::abs(extrapolated - d2)};
}

CMatrix secular_matrix_real(const MetricGraph& graph, const MatchingConditions& mc, double k) {
  if (!(k > 0.0)) throw ValidationError("k must be positive");
  const int nb = graph.bond_count();
  // Rows: slot values (T) and inward covariant derivatives (S) in terms of
  // the coefficient vector (a_1..a_B, beta_1/kappa..beta_B/kappa). kappa ~ k
  // balances the two halves at large k and stays positive as k -> 0.
  CMatrix tm = CMatrix::Zero(2 * nb, 2 * nb);
  CMatrix sm = CMatrix::Zero(2 * nb, 2 * nb);
  for (int b = 0; b < nb; ++b) {
    const Bond& bond = graph.bond(b);
    const RealAxisBasis basis = solve_real_axis(bond, k);
    const cplx phase = std::polar(1.0, bond.vector_potential * bond.length);
    const double kappa = std::hypot(k, 1.0 / bond.length);
    tm(b, b) = 1.0;
    sm(b, nb + b) = kappa;
    tm(nb + b, b) = phase * basis.c;
    tm(nb + b, nb + b) = phase * basis.s * kappa;
    sm(nb + b, b) = -phase * basis.c_prime;
    sm(nb + b, nb + b) = -phase * basis.s_prime * kappa;
  }
  CMatrix q = mc.a * tm + mc.b * sm;
  // Equilibrate rows so the determinant is insensitive to how each vertex
  // condition happens to be normalised. The scale comes from (A, B), not from
  // q: a row of q may vanish identically at an eigenvalue (loops).
  for (Eigen::Index r = 0; r < q.rows(); ++r) {
    const double n = std::hypot(mc.a.row(r).norm(), mc.b.row(r).norm());
    if (n > 0.0) q.row(r) /= n;
  }
  return q;
}

cplx pole_free_secular_real(const MetricGraph& graph, const MatchingConditions& mc, double k) {
  return numeric::log_determinant(secular_matrix_real(graph, mc, k)).value();
}

void require_rotated_axis_support(const MetricGraph& graph, const MatchingConditions& mc) {
  if (!mc.is_local())
    throw UnsupportedError("zeta and Casimir computations require local (per-vertex) conditions");
  if (mc.size() != graph.slot_count())
    throw ValidationError("matching conditions do not match the graph size");
  for (const Bond& b : graph.bonds())
    if (b.potential.min_value(b.length) < 0.0)
      throw UnsupportedError("bond " + std::to_string(b.id) +
                             " has a negative potential; the rotated-axis representation needs V >= 0");
}

}  // namespace qgraph
