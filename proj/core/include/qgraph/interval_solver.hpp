#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "qgraph/graph.hpp"

namespace qgraph {

/// A real number stored as sign * exp(log_abs).
struct SignedLog {
  int sign = 1;
  double log_abs = 0.0;

  /// Expanded value; flushed to 0 below 1e-300.
  double value() const;
};

/// Interval quantities on the rotated axis k = i t for one bond.
///
/// f solves -f'' + V f = -t^2 f with f(0) = 1, f(L) = 0; the reversed
/// solution f_rev is the same problem seen from the terminal end. u solves the
/// initial value problem u(0) = 0, u'(0) = 1.
struct ImagAxisSolution {
  double t = 0.0;
  double f_prime_at_0 = 0.0;      ///< f_b'(0; t^2)
  double f_prime_rev_at_0 = 0.0;  ///< f_{b-bar}'(0; t^2), derivative along x_{b-bar}
  SignedLog f_prime_at_L;         ///< f_b'(L_b; t^2) = f_{b-bar}'(L_b; t^2) = -1/u(L)
  double log_u_at_L = 0.0;        ///< log u_b(L_b; t^2)
  double log_u_rev_at_L = 0.0;    ///< same quantity integrated from the other end
  double error_estimate = 0.0;    ///< extrapolation error of the numerical segments
};

/// Endpoint values of the cosine-like (c(0)=1, c'(0)=0) and sine-like
/// (s(0)=0, s'(0)=1) solutions of -psi'' + V psi = k^2 psi.
struct RealAxisBasis {
  double k = 0.0;
  double c = 1.0, c_prime = 0.0, s = 0.0, s_prime = 1.0;

  double wronskian() const { return c * s_prime - c_prime * s; }
};

/// Result of integrating psi'' = (V + shift) psi from psi(0)=0, psi'(0)=1
/// in log-scaled form.
struct GrowthResult {
  int sign = 1;
  double log_abs_value = 0.0;   ///< log |psi(L)|
  double log_abs_excess = 0.0;  ///< log |psi(L)| - sqrt(shift) L, accumulated without cancellation
  double log_derivative = 0.0;  ///< psi'(L)/psi(L)
  double error_estimate = 0.0;
};

/// Smallest admissible t on the rotated axis: sqrt(max(0, -min V)), plus a
/// 1e-6 margin whenever V has negative parts.
double imag_axis_t_min(const Bond& bond);

ImagAxisSolution solve_imag_axis(const Bond& bond, double t);

RealAxisBasis solve_real_axis(const Bond& bond, double k);

/// log u(L; t^2) - t L + log(2 t) - d_b / t.
double dirichlet_log_u_subtracted(const Bond& bond, double t);

/// The same remainder with per-bond data precomputed. Beyond switch_point()
/// the WKB series through t^-5 replaces the numerical solution, whose
/// rounding noise (~1e-15) would otherwise dominate the O(t^-3) remainder.
class DirichletRemainder {
 public:
  explicit DirichletRemainder(const Bond& bond);

  double operator()(double t) const;
  /// Large-t series; accurate to O(t^-6).
  double series(double t) const;
  double switch_point() const { return switch_; }
  double d() const { return d_; }

 private:
  Bond bond_;
  double d_ = 0.0;
  double switch_ = INFINITY;
  double integrals_[6] = {};  // int_0^L sigma_j, j = 0..5
  double endpoint_[5] = {};   // sigma_j(0) - s_j(0), j = 0..4
};

/// Low-level propagators. Segments where V is constant are propagated in
/// closed form, the bump support with a fourth-order Magnus scheme plus one
/// Richardson step.
GrowthResult propagate_growing(const PotentialSpec& potential, double length, double shift);
Eigen::Matrix2d transfer_matrix(const PotentialSpec& potential, double length, double shift);

}  // namespace qgraph
