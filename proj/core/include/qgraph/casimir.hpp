#pragma once

#include "qgraph/graph.hpp"
#include "qgraph/zeta.hpp"

namespace qgraph {

/// Vacuum energy E = FP/2 + (1/eps + ln mu^2) Res/2 at s = -1/2, kept as its
/// separate pieces because the single number depends on mu whenever Res != 0.
struct EnergyResult {
  double fp_half = 0.0;
  double res_half = 0.0;      ///< coefficient of 1/eps; reported, never dropped
  double mu = 1.0;
  double finite_energy_at_mu = 0.0;
  bool ambiguous = false;     ///< res_half != 0 (beyond 1e-10)
  double error_estimate = 0.0;
};

struct ForceResult {
  int bond = 0;  ///< 0-based index
  double force = 0.0;
  double dirichlet_part = 0.0;
  double interaction_part = 0.0;
  double error_estimate = 0.0;
};

struct CasimirOptions {
  double relative_step = 1e-4;  ///< h / L_beta for length derivatives
  ZetaOptions zeta;
};

EnergyResult vacuum_energy(const MetricGraph& graph, const MatchingConditions& mc, double mu,
                           const CasimirOptions& opts = {});

/// Force on bond `bond_index` (0-based): the Dirichlet part plus
/// -(1/2pi) int_0^inf d/dL log F(it) dt. Requires the potential on that bond
/// to vanish near both ends.
ForceResult casimir_force(const MetricGraph& graph, const MatchingConditions& mc, int bond_index,
                          const CasimirOptions& opts = {});

/// d(res_half)/dL_beta by central differences. Zero (to rounding) certifies
/// that the force does not depend on mu.
double mu_sensitivity(const MetricGraph& graph, const MatchingConditions& mc, int bond_index,
                      const CasimirOptions& opts = {});

/// Res zeta(-1/2, 0) from the asymptotic data alone.
double residue_at_minus_half(const MetricGraph& graph, const AsymptoticData& asym);

}  // namespace qgraph
