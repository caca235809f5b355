#include "qgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "qgraph/error.hpp"
#include "qgraph/numeric/jet.hpp"
#include "qgraph/numeric/quadrature.hpp"

namespace qgraph {

PotentialSpec PotentialSpec::constant(double c) {
  PotentialSpec p;
  p.kind = PotentialKind::constant;
  p.value = c;
  return p;
}

PotentialSpec PotentialSpec::bump(double center, double half_width, double height) {
  if (!(half_width > 0.0)) throw ValidationError("bump potential needs half_width > 0");
  PotentialSpec p;
  p.kind = PotentialKind::bump;
  p.center = center;
  p.half_width = half_width;
  p.height = height;
  return p;
}

bool PotentialSpec::is_zero() const {
  switch (kind) {
    case PotentialKind::zero: return true;
    case PotentialKind::constant: return value == 0.0;
    case PotentialKind::bump: return height == 0.0;
  }
  return true;
}

bool PotentialSpec::compactly_supported_in(double length) const {
  switch (kind) {
    case PotentialKind::zero: return true;
    case PotentialKind::constant: return value == 0.0;
    case PotentialKind::bump:
      return height == 0.0 || (center - half_width > 0.0 && center + half_width < length);
  }
  return false;
}

PotentialSpec PotentialSpec::reversed(double length) const {
  PotentialSpec r = *this;
  if (kind == PotentialKind::bump) r.center = length - center;
  return r;
}

double PotentialSpec::min_value(double length) const {
  switch (kind) {
    case PotentialKind::zero: return 0.0;
    case PotentialKind::constant: return value;
    case PotentialKind::bump: {
      const bool peak_inside = center >= 0.0 && center <= length;
      const bool touches = center + half_width > 0.0 && center - half_width < length;
      if (height < 0.0 && peak_inside) return height;
      if (height < 0.0 && touches) {
        const double x = center < 0.0 ? 0.0 : length;
        return potential_value(*this, x, 0);
      }
      return 0.0;
    }
  }
  return 0.0;
}

double potential_value(const PotentialSpec& p, double x, int order) {
  if (order < 0 || order > 4) throw ValidationError("potential derivative order must be in 0..4");
  switch (p.kind) {
    case PotentialKind::zero: return 0.0;
    case PotentialKind::constant: return order == 0 ? p.value : 0.0;
    case PotentialKind::bump: {
      const double y = (x - p.center) / p.half_width;
      if (std::abs(y) >= 1.0 || p.height == 0.0) return 0.0;
      using J = numeric::Jet<4>;
      const J yj = (1.0 / p.half_width) * (J::variable(x) + J::constant(-p.center));
      const J d = 1.0 + (-(yj * yj));
      const J phi = 1.0 + (-reciprocal(d));
      if (phi.c[0] < -700.0) return 0.0;
      const J v = p.height * numeric::exp(phi);
      return v.derivative(static_cast<std::size_t>(order));
    }
  }
  return 0.0;
}

double potential_integral(const PotentialSpec& p, double length) {
  switch (p.kind) {
    case PotentialKind::zero: return 0.0;
    case PotentialKind::constant: return 0.5 * p.value * length;
    case PotentialKind::bump: {
      const double a = std::max(0.0, p.center - p.half_width);
      const double b = std::min(length, p.center + p.half_width);
      if (b <= a || p.height == 0.0) return 0.0;
      numeric::AdaptiveOptions opts;
      opts.abs_tol = 1e-15 * std::abs(p.height) * p.half_width;
      opts.rel_tol = 1e-13;
      auto r = numeric::integrate_adaptive_real([&](double x) { return potential_value(p, x, 0); },
                                                a, b, opts);
      return 0.5 * r.value.real();
    }
  }
  return 0.0;
}

MetricGraph::MetricGraph(int vertex_count, std::vector<Bond> bonds)
    : vertex_count_(vertex_count), bonds_(std::move(bonds)) {
  if (vertex_count_ < 1) throw ValidationError("graph needs at least one vertex");
  if (bonds_.empty()) throw ValidationError("graph needs at least one bond");
  std::sort(bonds_.begin(), bonds_.end(), [](const Bond& a, const Bond& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < bonds_.size(); ++i) {
    Bond& b = bonds_[i];
    if (b.id != static_cast<int>(i) + 1) {
      throw ValidationError("bond ids must be exactly 1..B without gaps or duplicates");
    }
    for (int v : {b.origin, b.terminus}) {
      if (v < 1 || v > vertex_count_) {
        std::ostringstream os;
        os << "bond " << b.id << " references vertex " << v << " outside [1, " << vertex_count_
           << "]";
        throw ValidationError(os.str());
      }
    }
    if (!(b.length > 0.0) || !std::isfinite(b.length)) {
      throw ValidationError("bond " + std::to_string(b.id) + " must have positive length");
    }
    if (b.origin > b.terminus) {
      std::swap(b.origin, b.terminus);
      b.potential = b.potential.reversed(b.length);
      b.vector_potential = -b.vector_potential;
    }
  }
}

std::vector<Slot> MetricGraph::incident_slots(int vertex) const {
  std::vector<Slot> out;
  const int nb = bond_count();
  for (int i = 0; i < nb; ++i) {
    if (bonds_[i].origin == vertex) out.push_back({i, i, true});
    if (bonds_[i].terminus == vertex) out.push_back({nb + i, i, false});
  }
  return out;
}

double MetricGraph::total_length() const {
  return std::accumulate(bonds_.begin(), bonds_.end(), 0.0,
                         [](double acc, const Bond& b) { return acc + b.length; });
}

double MetricGraph::min_length() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& b : bonds_) m = std::min(m, b.length);
  return m;
}

MetricGraph MetricGraph::with_length(int index, double length) const {
  MetricGraph g = *this;
  g.bonds_.at(index).length = length;
  return g;
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.passed || c.skipped; });
}

ValidationReport validate_matching(const MatchingConditions& mc, const MetricGraph* graph) {
  ValidationReport report;
  const Eigen::Index n = mc.a.rows();
  if (mc.a.cols() != n || mc.b.rows() != n || mc.b.cols() != n) {
    report.checks.push_back({"shape", false, false, "A and B must both be 2B x 2B"});
    return report;
  }
  if (graph != nullptr && n != graph->slot_count()) {
    report.checks.push_back({"shape", false, false, "matrix size does not match 2B"});
    return report;
  }
  CMatrix ab(n, 2 * n);
  ab << mc.a, mc.b;
  Eigen::JacobiSVD<CMatrix> svd(ab);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double tol = 1e-12 * smax;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++rank;
  {
    std::ostringstream os;
    os << "rank " << rank << " of " << n;
    report.checks.push_back({"rank", rank == n && smax > 0.0, false, os.str()});
  }
  {
    const CMatrix h = mc.a * mc.b.adjoint() - mc.b * mc.a.adjoint();
    const double dev = h.cwiseAbs().maxCoeff();
    std::ostringstream os;
    os << "max|AB^+ - BA^+| = " << dev;
    report.checks.push_back({"hermiticity", dev <= 1e-12 * std::max(smax * smax, 1.0), false, os.str()});
  }
  if (mc.is_local() && graph != nullptr) {
    std::vector<int> slot_vertex(n, 0);
    for (int v = 1; v <= graph->vertex_count(); ++v)
      for (const auto& s : graph->incident_slots(v)) slot_vertex[s.index] = v;
    const double zero = 1e-14 * std::max(smax, 1.0);
    bool local = true;
    std::string detail = "all rows couple a single vertex";
    for (Eigen::Index r = 0; r < n && local; ++r) {
      int owner = 0;
      for (Eigen::Index c = 0; c < n; ++c) {
        if (std::abs(mc.a(r, c)) <= zero && std::abs(mc.b(r, c)) <= zero) continue;
        if (owner == 0) owner = slot_vertex[c];
        else if (owner != slot_vertex[c]) {
          local = false;
          detail = "row " + std::to_string(r + 1) + " couples vertices " + std::to_string(owner) +
                   " and " + std::to_string(slot_vertex[c]);
          break;
        }
      }
    }
    report.checks.push_back({"locality", local, false, detail});
  } else {
    report.checks.push_back({"locality", false, true, "global matrices: locality not checked"});
  }
  return report;
}

std::pair<CMatrix, CMatrix> delta_block(int degree, double lambda) {
  CMatrix a = CMatrix::Zero(degree, degree);
  CMatrix b = CMatrix::Zero(degree, degree);
  if (degree == 0) return {a, b};
  a(0, 0) = -lambda;
  b.row(0).setOnes();
  for (int i = 1; i < degree; ++i) {
    a(i, i - 1) = -1.0;
    a(i, i) = 1.0;
  }
  return {a, b};
}

MatchingConditions build_vertex_conditions(const MetricGraph& graph,
                                           std::vector<VertexCondition> per_vertex) {
  const int nv = graph.vertex_count();
  std::sort(per_vertex.begin(), per_vertex.end(),
            [](const VertexCondition& x, const VertexCondition& y) { return x.vertex < y.vertex; });
  if (static_cast<int>(per_vertex.size()) != nv) {
    throw ValidationError("per-vertex matching needs exactly one entry per vertex");
  }
  const int n = graph.slot_count();
  MatchingConditions mc;
  mc.a = CMatrix::Zero(n, n);
  mc.b = CMatrix::Zero(n, n);
  int row = 0;
  for (int v = 1; v <= nv; ++v) {
    VertexCondition& vc = per_vertex[v - 1];
    if (vc.vertex != v) throw ValidationError("per-vertex matching: vertex " + std::to_string(v) + " missing or duplicated");
    const auto slots = graph.incident_slots(v);
    const int m = static_cast<int>(slots.size());
    CMatrix a, b;
    switch (vc.kind) {
      case VertexConditionKind::dirichlet:
        a = CMatrix::Identity(m, m);
        b = CMatrix::Zero(m, m);
        break;
      case VertexConditionKind::neumann:
        std::tie(a, b) = delta_block(m, 0.0);
        break;
      case VertexConditionKind::delta:
        std::tie(a, b) = delta_block(m, vc.lambda);
        break;
      case VertexConditionKind::custom:
        if (vc.a.rows() != m || vc.a.cols() != m || vc.b.rows() != m || vc.b.cols() != m) {
          throw ValidationError("custom block at vertex " + std::to_string(v) + " must be " +
                                std::to_string(m) + "x" + std::to_string(m) + " (vertex degree)");
        }
        a = vc.a;
        b = vc.b;
        break;
    }
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        mc.a(row + i, slots[j].index) = a(i, j);
        mc.b(row + i, slots[j].index) = b(i, j);
      }
    }
    row += m;
  }
  mc.per_vertex = std::move(per_vertex);
  return mc;
}

}  // namespace qgraph
