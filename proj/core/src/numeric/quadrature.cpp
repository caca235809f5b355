#include "qgraph/numeric/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

#include <Eigen/Eigenvalues>

namespace qgraph::numeric {
namespace {

// Kronrod 15-point abscissae (positive half) and weights; the Gauss 7-point
// rule uses every other abscissa.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  cplx value;
  double error;
};

Panel gk15(const std::function<cplx(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const cplx fc = f(c);
  cplx kronrod = fc * kWgk[7];
  cplx gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const cplx f1 = f(c - dx);
    const cplx f2 = f(c + dx);
    kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  kronrod *= h;
  gauss *= h;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<cplx(double)>& f, double a, double b,
                                    const AdaptiveOptions& opts) {
  if (a == b) return {};
  std::vector<Panel> panels{gk15(f, a, b)};
  int evaluations = 15;
  auto totals = [&] {
    cplx v{};
    double e = 0.0;
    for (const auto& p : panels) {
      v += p.value;
      e += p.error;
    }
    return std::pair{v, e};
  };
  while (true) {
    auto [value, error] = totals();
    if (error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(value)) ||
        static_cast<int>(panels.size()) >= opts.max_intervals) {
      break;
    }
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const Panel& x, const Panel& y) { return x.error < y.error; });
    const double mid = 0.5 * (worst->a + worst->b);
    if (mid <= worst->a || mid >= worst->b) break;
    Panel left = gk15(f, worst->a, mid);
    Panel right = gk15(f, mid, worst->b);
    evaluations += 30;
    *worst = left;
    panels.insert(worst + 1, right);
  }
  // panels are kept in left-to-right order, so this reduction is deterministic
  auto [value, error] = totals();
  return {value, error, evaluations};
}

QuadratureResult integrate_adaptive_real(const std::function<double(double)>& f, double a,
                                         double b, const AdaptiveOptions& opts) {
  return integrate_adaptive([&](double x) { return cplx{f(x), 0.0}; }, a, b, opts);
}

QuadratureRule gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1 || alpha <= -1.0 || beta <= -1.0) {
    throw std::invalid_argument("gauss_jacobi: need n >= 1 and alpha, beta > -1");
  }
  const double ab = alpha + beta;
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double two_k_ab = 2.0 * k + ab;
    double diag;
    if (k == 0) {
      diag = (beta - alpha) / (ab + 2.0);
    } else {
      diag = (beta * beta - alpha * alpha) / (two_k_ab * (two_k_ab + 2.0));
    }
    jac(k, k) = diag;
    if (k + 1 < n) {
      const double m = k + 1.0;
      const double t = 2.0 * m + ab;
      double off2;
      if (m == 1.0) {
        off2 = 4.0 * (alpha + 1.0) * (beta + 1.0) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
      } else {
        off2 = 4.0 * m * (m + alpha) * (m + beta) * (m + ab) / (t * t * (t + 1.0) * (t - 1.0));
      }
      jac(k, k + 1) = jac(k + 1, k) = std::sqrt(off2);
    }
  }
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                              std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

const QuadratureRule& power_weight_rule(int n, double a) {
  static std::mutex mutex;
  static std::map<std::pair<int, double>, QuadratureRule> cache;
  std::lock_guard lock(mutex);
  auto key = std::pair{n, a};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  // x = (1 + y)/2 maps [-1,1] to [0,1]; x^a = 2^-a (1+y)^a, dx = dy/2.
  QuadratureRule rule = gauss_jacobi(n, 0.0, a);
  const double scale = std::pow(0.5, a + 1.0);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = 0.5 * (1.0 + rule.nodes[i]);
    rule.weights[i] *= scale;
  }
  return cache.emplace(key, std::move(rule)).first->second;
}

cplx apply_rule(const QuadratureRule& rule, const std::function<cplx(double)>& f) {
  cplx sum{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(rule.nodes[i]);
  return sum;
}

}  // namespace qgraph::numeric
