#pragma once

#include <cmath>
#include <vector>

#include "qgraph/casimir.hpp"
#include "qgraph/graph.hpp"

namespace qgraph {

struct SpectralRoot {
  double k = 0.0;
  int multiplicity = 1;
};

/// Eigenvalues E = k^2 with 0 < k <= k_max, found on the real axis.
struct SpectrumWindow {
  double k_max = 0.0;
  std::vector<SpectralRoot> roots;  ///< strictly increasing in k
  double total_length = 0.0;
  double count_estimate = 0.0;      ///< total_length * k_max / pi

  int count() const;  ///< roots counted with multiplicity
  /// count() - count_estimate
  double weyl_deviation() const { return count() - count_estimate; }
};

struct ScanOptions {
  int threads = 1;
  int grid_per_spacing = 8;  ///< grid points per mean level spacing pi / total_length
  double root_tol = 1e-10;
  double null_tol = 1e-6;    ///< singular values below this count toward multiplicity
};

/// Scans the smallest singular value of the real-axis secular matrix on a grid and
/// refines every local minimum. A count far from the Weyl estimate (beyond
/// 2B + 2) triggers one rescan at 4x resolution, then a NumericalError.
SpectrumWindow scan_spectrum(const MetricGraph& graph, const MatchingConditions& mc, double k_max,
                             const ScanOptions& opts = {});

struct DirectZeta {
  cplx value{};
  double tail_bound = 0.0;      ///< |phi(K)| sup|N - rho k - C0|: crude majorant of the neglected oscillation
  double error_estimate = 0.0;  ///< |phi'(K)| times the oscillation's running integral
  int terms = 0;
  double cutoff = 0.0;
};

/// sum_j (gamma + k_j^2)^-s over the window plus a Weyl-law tail whose
/// constant term is a Hann-weighted average of N(k) - rho k over [K/2, K].
/// Throws NumericalError when error_estimate exceeds `target`.
DirectZeta zeta_direct(const SpectrumWindow& spectrum, cplx s, double gamma,
                       double target = INFINITY);

/// -(fp_half(L + h) - fp_half(L - h)) / (2h) with h = relative_step * L.
double energy_finite_difference(const MetricGraph& graph, const MatchingConditions& mc,
                                int bond_index, double relative_step = 1e-4,
                                const CasimirOptions& opts = {});

}  // namespace qgraph
