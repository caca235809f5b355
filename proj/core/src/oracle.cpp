#include "qgraph/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <numbers>
#include <string>
#include <thread>

#include <Eigen/SVD>

#include "qgraph/error.hpp"
#include "qgraph/secular.hpp"

namespace qgraph {
namespace {

constexpr double kPi = std::numbers::pi;

// Runs body(i) for i in [0, n) on up to `threads` workers. Results go to
// caller-owned slots indexed by i, so the outcome is thread-count independent.
void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  threads = std::clamp(threads, 1, std::max(1, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < n; i += threads) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

Eigen::VectorXd singular_values(const MetricGraph& graph, const MatchingConditions& mc, double k) {
  Eigen::JacobiSVD<CMatrix> svd(secular_matrix_real(graph, mc, k));
  return svd.singularValues();  // descending
}

// Rows are scaled by the k-independent norms of (A, B), so absolute singular
// values are meaningful; at a degenerate eigenvalue even sigma_max may vanish.
double sigma_min(const MetricGraph& graph, const MatchingConditions& mc, double k) {
  const Eigen::VectorXd sv = singular_values(graph, mc, k);
  return sv(sv.size() - 1);
}

struct Candidate {
  bool found = false;
  SpectralRoot root;
};

// Golden-section search on sigma_min, which has a V-shaped zero at
// every eigenvalue regardless of multiplicity.
Candidate refine(const MetricGraph& graph, const MatchingConditions& mc, double lo, double hi,
                 const ScanOptions& opts) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto f = [&](double k) { return sigma_min(graph, mc, k); };
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  const double tol = opts.root_tol * std::max(1.0, 1e-2 * hi);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  const double k = 0.5 * (a + b);
  const Eigen::VectorXd sv = singular_values(graph, mc, k);
  Candidate c;
  // A genuine zero is resolved down to the bracket width; spurious dips are not.
  if (sv(sv.size() - 1) > 1e3 * tol + 1e-12) return c;
  c.found = true;
  c.root.k = k;
  c.root.multiplicity = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) < opts.null_tol) ++c.root.multiplicity;
  c.root.multiplicity = std::max(1, c.root.multiplicity);
  return c;
}

SpectrumWindow scan_once(const MetricGraph& graph, const MatchingConditions& mc, double k_max,
                         int per_spacing, const ScanOptions& opts) {
  SpectrumWindow w;
  w.k_max = k_max;
  w.total_length = graph.total_length();
  w.count_estimate = w.total_length * k_max / kPi;
  const double h = kPi / (w.total_length * per_spacing);
  // Grid k_i = i h for i = 0..n; one step past k_max so a root at the edge
  // is bracketed.
  const int n = static_cast<int>(std::ceil(k_max / h)) + 1;
  std::vector<double> ratio(n + 1);
  ratio[0] = INFINITY;  // k = 0 is never part of the positive spectrum
  parallel_for(n, opts.threads, [&](int i) { ratio[i + 1] = sigma_min(graph, mc, (i + 1) * h); });

  std::vector<int> minima;
  for (int i = 1; i < n; ++i)
    if (ratio[i] <= ratio[i - 1] && ratio[i] < ratio[i + 1]) minima.push_back(i);
  std::vector<Candidate> found(minima.size());
  parallel_for(static_cast<int>(minima.size()), opts.threads, [&](int m) {
    const int i = minima[m];
    found[m] = refine(graph, mc, (i - 1) * h, (i + 1) * h, opts);
  });

  for (const Candidate& c : found) {
    // k ~ 0 is a zero mode (e.g. a Neumann circle), not part of the positive spectrum
    if (!c.found || c.root.k <= 1e-6 * h || c.root.k > k_max) continue;
    if (!w.roots.empty() && c.root.k - w.roots.back().k < 1e-8 * std::max(1.0, c.root.k)) {
      w.roots.back().multiplicity = std::max(w.roots.back().multiplicity, c.root.multiplicity);
      continue;
    }
    w.roots.push_back(c.root);
  }
  return w;
}

}  // namespace

int SpectrumWindow::count() const {
  int n = 0;
  for (const auto& r : roots) n += r.multiplicity;
  return n;
}

SpectrumWindow scan_spectrum(const MetricGraph& graph, const MatchingConditions& mc, double k_max,
                             const ScanOptions& opts) {
  if (!(k_max > 0.0) || !std::isfinite(k_max)) throw ValidationError("k_max must be positive");
  if (mc.size() != graph.slot_count())
    throw ValidationError("matching conditions do not match the graph size");
  if (opts.grid_per_spacing < 2) throw ValidationError("grid needs at least 2 points per spacing");
  const double bound = 2.0 * graph.bond_count() + 2.0;
  SpectrumWindow w = scan_once(graph, mc, k_max, opts.grid_per_spacing, opts);
  if (std::abs(w.weyl_deviation()) <= bound) return w;
  w = scan_once(graph, mc, k_max, 4 * opts.grid_per_spacing, opts);
  if (std::abs(w.weyl_deviation()) <= bound) return w;
  throw NumericalError("spectrum scan: found " + std::to_string(w.count()) +
                       " roots but the Weyl estimate is " + std::to_string(w.count_estimate));
}

DirectZeta zeta_direct(const SpectrumWindow& spectrum, cplx s, double gamma, double target) {
  if (!(s.real() > 0.5)) throw ValidationError("zeta_direct needs Re s > 1/2");
  if (!(gamma >= 0.0)) throw ValidationError("gamma must be >= 0");
  const double big_k = spectrum.k_max;
  if (spectrum.roots.size() < 20 || gamma >= 0.25 * big_k * big_k)
    throw NumericalError("zeta_direct: spectrum window too small");
  auto phi = [&](double k) { return std::pow(gamma + k * k, -s); };
  DirectZeta out;
  out.cutoff = big_k;
  for (const auto& r : spectrum.roots) {
    out.value += double(r.multiplicity) * phi(r.k);
    out.terms += r.multiplicity;
  }

  const double rho = spectrum.total_length / kPi;
  // C0 = Hann-weighted mean of N(k) - rho k on [a, K].
  const double a = 0.5 * big_k, ell = big_k - a;
  auto weight_above = [&](double x) {  // int_x^K sin^2(pi (k - a) / ell) dk
    x = std::max(x, a);
    return 0.5 * (big_k - x) + ell / (4.0 * kPi) * std::sin(2.0 * kPi * (x - a) / ell);
  };
  double wn = 0.0;
  for (const auto& r : spectrum.roots) wn += r.multiplicity * weight_above(r.k);
  const double c0 = (wn - rho * 0.5 * ell * (a + 0.5 * ell)) / (0.5 * ell);

  // int_K^inf (k^2 + gamma)^-s dk = K^{1-2s} sum_n binom(-s, n) (gamma/K^2)^n / (2s - 1 + 2n)
  cplx integral{}, coef = 1.0;
  const double x = gamma / (big_k * big_k);
  double xp = 1.0;
  for (int m = 0; m < 200; ++m) {
    const cplx term = coef * xp / (2.0 * s - 1.0 + 2.0 * m);
    integral += term;
    if (std::abs(term) < 1e-17 * std::abs(integral)) break;
    coef *= (-s - double(m)) / double(m + 1);
    xp *= x;
  }
  integral *= std::pow(big_k, 1.0 - 2.0 * s);

  const double n_k = out.terms;
  out.value += rho * integral + phi(big_k) * (c0 - (n_k - rho * big_k));

  // Oscillation o(k) = N(k) - rho k - C0 on the window: its sup and the sup of
  // its running integral, both exact for the step function N.
  double sup_o = 0.0, running = 0.0, sup_int = 0.0;
  {
    double prev = a;
    int count_below = 0;
    for (const auto& r : spectrum.roots)
      if (r.k <= a) count_below += r.multiplicity;
    auto advance = [&](double to) {
      const double o0 = count_below - rho * prev - c0;
      const double o1 = count_below - rho * to - c0;
      sup_o = std::max({sup_o, std::abs(o0), std::abs(o1)});
      running += 0.5 * (o0 + o1) * (to - prev);
      sup_int = std::max(sup_int, std::abs(running));
      prev = to;
    };
    for (const auto& r : spectrum.roots) {
      if (r.k <= a) continue;
      advance(r.k);
      count_below += r.multiplicity;
    }
    advance(big_k);
  }
  const double dphi = std::abs(2.0 * s * big_k * std::pow(gamma + big_k * big_k, -s - 1.0));
  out.tail_bound = std::abs(phi(big_k)) * sup_o;
  out.error_estimate = dphi * sup_int;
  if (out.error_estimate > target)
    throw NumericalError("zeta_direct: spectrum window too small for the requested accuracy");
  return out;
}

double energy_finite_difference(const MetricGraph& graph, const MatchingConditions& mc,
                                int bond_index, double relative_step, const CasimirOptions& opts) {
  if (bond_index < 0 || bond_index >= graph.bond_count())
    throw ValidationError("bond index out of range");
  if (!(relative_step > 0.0)) throw ValidationError("step must be positive");
  if (std::abs(mu_sensitivity(graph, mc, bond_index, opts)) > 1e-8)
    throw UnsupportedError("the residue depends on this bond length; the energy difference is mu-dependent");
  const double len = graph.bond(bond_index).length;
  const double h = relative_step * len;
  const double ep = vacuum_energy(graph.with_length(bond_index, len + h), mc, 1.0, opts).fp_half;
  const double em = vacuum_energy(graph.with_length(bond_index, len - h), mc, 1.0, opts).fp_half;
  return -(ep - em) / (2.0 * h);
}

}  // namespace qgraph
