#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace qgraph::numeric {

using cplx = std::complex<double>;

struct QuadratureResult {
  cplx value;
  double error = 0.0;  ///< estimated absolute error
  int evaluations = 0;
};

struct AdaptiveOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  int max_intervals = 2000;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration of a complex-valued
/// integrand over [a, b]. Subdivision order and the final summation are fixed,
/// so repeated calls return bit-identical results.
QuadratureResult integrate_adaptive(const std::function<cplx(double)>& f, double a, double b,
                                    const AdaptiveOptions& opts = {});

/// Real-valued convenience wrapper.
QuadratureResult integrate_adaptive_real(const std::function<double(double)>& f, double a,
                                         double b, const AdaptiveOptions& opts = {});

/// Quadrature nodes/weights for a fixed interval and weight function.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Jacobi rule on [-1, 1] for the weight (1-x)^alpha (1+x)^beta,
/// alpha, beta > -1, computed with the Golub-Welsch eigenvalue method.
QuadratureRule gauss_jacobi(int n, double alpha, double beta);

/// Rule for integrals of the form  int_0^1 x^a f(x) dx,  a > -1.
/// Results are cached per (n, a).
const QuadratureRule& power_weight_rule(int n, double a);

/// Applies a rule: sum_i w_i f(x_i).
cplx apply_rule(const QuadratureRule& rule, const std::function<cplx(double)>& f);

}  // namespace qgraph::numeric
