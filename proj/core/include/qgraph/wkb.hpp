#pragma once

#include <optional>
#include <vector>

#include "qgraph/graph.hpp"

namespace qgraph {

enum class BondDirection { forward, reverse };

constexpr int kMaxWkbOrder = 4;

/// s_j(0) for j = -1..j_max of the Riccati expansion
///   f'/f = sum_j s_j t^{-j}
/// of the decaying interval solution. Index 0 of the result holds s_{-1}.
/// For the reverse direction the potential is reflected, V(L - x).
std::vector<double> wkb_coefficients(const Bond& bond, BondDirection direction, int j_max);

struct AsymptoticData {
  /// Per bond, s_{-1}..s_{j_max} at the start (forward) and at the end
  /// (reverse direction).
  std::vector<std::vector<double>> s_forward;
  std::vector<std::vector<double>> s_reverse;
  int n = 0;                 ///< index of the first nonzero c_j
  std::optional<int> j;      ///< gap to the next nonzero coefficient; empty = none
  cplx c_n{};
  cplx c_nj{};               ///< zero when j is empty
  std::vector<double> d;     ///< per-bond d_b = (1/2) int V
  std::vector<cplx> coefficients;  ///< c_0 .. c_{trusted_order}
  int trusted_order = 0;
  bool exact = false;        ///< no truncation: every coefficient is trusted
  double t_scale = 1.0;      ///< natural t unit used for scaling checks

  /// Large-t fit, filled when cross-validation ran.
  std::optional<cplx> fit_c_n, fit_c_n1;
  double fit_discrepancy = 0.0;

  /// eta = c_{N+J}/c_N, or 0.
  cplx eta() const { return j ? c_nj / c_n : cplx(0.0); }
};

struct AsymptoticOptions {
  bool cross_validate = true;
  double tolerance = 1e-6;
};

/// Large-t expansion F(it) ~ sum_j c_j t^{2B-j}. Coefficients come from the
/// polynomial det(tau A + B Q(tau)), Q the diagonal WKB symbol, sampled on a
/// circle in the tau = 1/t plane; a direct fit of F(it) at large t
/// cross-checks N, c_N and c_{N+1}.
AsymptoticData asymptotic_F_coefficients(const MetricGraph& graph, const MatchingConditions& mc,
                                         const AsymptoticOptions& opts = {});

std::vector<double> d_constants(const MetricGraph& graph);

}  // namespace qgraph
