#pragma once

#include <optional>

#include "qgraph/graph.hpp"
#include "qgraph/numeric/logdet.hpp"

namespace qgraph {

/// F(it) = det(A + B M(t^2)) in log/phase form.
struct SecularValue {
  double t = 0.0;
  double log_abs = 0.0;
  double phase = 0.0;          ///< in (-pi, pi]
  std::optional<cplx> value;   ///< set when |F| is representable

  cplx log() const { return {log_abs, phase}; }
};

/// The 2B x 2B endpoint map on the rotated axis k = i t. Row/column a < B is
/// the start of bond a+1, a >= B its end.
CMatrix assemble_M_imag(const MetricGraph& graph, double t);

SecularValue F_imag(const MetricGraph& graph, const MatchingConditions& mc, double t);

struct DerivativeEstimate {
  cplx value;
  double error = 0.0;
};

/// d/dL_beta log F(it) by central differences with one Richardson step.
/// `relative_step` is h/L_beta. The potential on bond beta must stay strictly
/// inside the perturbed bond.
DerivativeEstimate dF_dL_imag(const MetricGraph& graph, const MatchingConditions& mc, double t,
                              int bond_index, double relative_step = 1e-4);

/// A T(k) + B S(k): the matching conditions applied to psi_b = e^{iA_b x}
/// (a_b c_b + beta_b s_b). Columns: a_1..a_B, then beta_1..beta_B scaled by
/// sqrt(k^2 + L_b^-2) so both halves have comparable size.
CMatrix secular_matrix_real(const MetricGraph& graph, const MatchingConditions& mc, double k);

/// Sigma(k) = det of secular_matrix_real. Vanishes exactly at eigenvalues
/// k^2, including the Dirichlet points where F itself has poles.
cplx pole_free_secular_real(const MetricGraph& graph, const MatchingConditions& mc, double k);

/// Rejects non-local conditions and t values below the solver's domain.
void require_rotated_axis_support(const MetricGraph& graph, const MatchingConditions& mc);

}  // namespace qgraph
