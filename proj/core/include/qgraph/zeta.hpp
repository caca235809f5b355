#pragma once

#include <vector>

#include "qgraph/graph.hpp"
#include "qgraph/wkb.hpp"

namespace qgraph {

struct ZetaEvaluation {
  cplx s{};
  double gamma = 0.0;
  cplx value{};
  double strip_lo = 0.0;  ///< representation valid for strip_lo < Re s < strip_hi
  double strip_hi = 1.0;
  double quadrature_error = 0.0;
};

struct MinusHalfData {
  double fp_im = 0.0, res_im = 0.0;
  std::vector<double> fp_dir, res_dir;
  double fp_total = 0.0, res_total = 0.0;
  double error = 0.0;  ///< accumulated quadrature error estimate of fp_total
};

struct ZetaOptions {
  int jacobi_nodes = 64;       ///< endpoint rules; compared against 3/4 of this
  double rel_tol = 1e-10;      ///< adaptive middle panel
  double abs_tol = 1e-12;
};

/// Contribution of the zeros of F(it): the rotated-axis integral of
/// log F(it) with its large-t behaviour subtracted.
ZetaEvaluation zeta_im(const MetricGraph& graph, const MatchingConditions& mc, cplx s, double gamma,
                       const ZetaOptions& opts = {});
ZetaEvaluation zeta_im(const MetricGraph& graph, const MatchingConditions& mc,
                       const AsymptoticData& asym, cplx s, double gamma,
                       const ZetaOptions& opts = {});

/// Zeta function of one bond with Dirichlet ends (the poles of F).
ZetaEvaluation zeta_dir_bond(const Bond& bond, cplx s, double gamma, const ZetaOptions& opts = {});

/// zeta_im plus the Dirichlet parts of every bond.
ZetaEvaluation zeta_total(const MetricGraph& graph, const MatchingConditions& mc, cplx s,
                          double gamma, const ZetaOptions& opts = {});

/// Finite parts and residues of every component at s = -1/2, gamma = 0.
MinusHalfData minus_half_data(const MetricGraph& graph, const MatchingConditions& mc,
                              const ZetaOptions& opts = {});
MinusHalfData minus_half_data(const MetricGraph& graph, const MatchingConditions& mc,
                              const AsymptoticData& asym, const ZetaOptions& opts = {});

/// Throws NumericalError when F(0) vanishes (to 1e-8 of max(|c_N|, 1)).
void check_F_at_zero(const MetricGraph& graph, const MatchingConditions& mc,
                     const AsymptoticData& asym);

}  // namespace qgraph
