#pragma once

#include <complex>
#include <Eigen/Dense>

namespace qgraph::numeric {

using cplx = std::complex<double>;

/// Determinant kept as log-magnitude and phase so that values far outside
/// the double range are still representable.
struct LogDet {
  double log_abs = 0.0;  ///< log|det|; -inf when the matrix is exactly singular
  double phase = 0.0;    ///< arg det in (-pi, pi]

  bool singular() const;
  /// exp(log_abs + i phase); overflows to inf for huge determinants.
  cplx value() const;
  /// Principal complex logarithm log_abs + i phase.
  cplx log() const { return {log_abs, phase}; }
};

/// LU factorisation with partial pivoting; the product of pivots is
/// accumulated in log/phase form.
LogDet log_determinant(Eigen::MatrixXcd m);

/// Wraps an angle into (-pi, pi].
double wrap_phase(double angle);

}  // namespace qgraph::numeric
