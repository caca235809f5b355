#include "qgraph/numeric/logdet.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace qgraph::numeric {

double wrap_phase(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::remainder(angle, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  return a;
}

bool LogDet::singular() const { return std::isinf(log_abs) && log_abs < 0; }

cplx LogDet::value() const {
  if (singular()) return {0.0, 0.0};
  return std::polar(std::exp(log_abs), phase);
}

LogDet log_determinant(Eigen::MatrixXcd m) {
  const Eigen::Index n = m.rows();
  LogDet out;
  double phase = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pivot = k;
    double best = std::abs(m(k, k));
    for (Eigen::Index r = k + 1; r < n; ++r) {
      const double v = std::abs(m(r, k));
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == 0.0) {
      out.log_abs = -std::numeric_limits<double>::infinity();
      out.phase = 0.0;
      return out;
    }
    if (pivot != k) {
      m.row(k).swap(m.row(pivot));
      phase += std::numbers::pi;
    }
    const cplx p = m(k, k);
    out.log_abs += std::log(best);
    phase += std::arg(p);
    for (Eigen::Index r = k + 1; r < n; ++r) {
      const cplx factor = m(r, k) / p;
      if (factor == cplx{}) continue;
      m.row(r).tail(n - k - 1) -= factor * m.row(k).tail(n - k - 1);
    }
  }
  out.phase = wrap_phase(phase);
  return out;
}

}  // namespace qgraph::numeric
