#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qgraph {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

enum class PotentialKind { zero, constant, bump };

/// Bond potential. Only three profiles are supported: V = 0, V = c, and the
/// smooth compactly supported bump
///   V(x) = h exp(1 - 1/(1 - ((x - x0)/w)^2))   for |x - x0| < w,  0 otherwise.
struct PotentialSpec {
  PotentialKind kind = PotentialKind::zero;
  double value = 0.0;       // constant
  double center = 0.0;      // bump x0
  double half_width = 0.0;  // bump w
  double height = 0.0;      // bump h
  bool declared_compact = false;  ///< file asserted supp V inside (0, L)

  static PotentialSpec zero() { return {}; }
  static PotentialSpec constant(double c);
  static PotentialSpec bump(double center, double half_width, double height);

  bool is_zero() const;
  /// Support strictly inside (0, L).
  bool compactly_supported_in(double length) const;
  /// The same profile seen from the other end of a bond of the given length.
  PotentialSpec reversed(double length) const;
  /// Smallest value of V on [0, L].
  double min_value(double length) const;

  friend bool operator==(const PotentialSpec&, const PotentialSpec&) = default;
};

/// d^order V / dx^order at x, for order 0..4.
double potential_value(const PotentialSpec& p, double x, int order = 0);

/// d_b = (1/2) int_0^L V(x) dx.
double potential_integral(const PotentialSpec& p, double length);

struct Bond {
  int id = 0;        ///< 1-based
  int origin = 0;    ///< 1-based vertex, x = 0
  int terminus = 0;  ///< 1-based vertex, x = L
  double length = 1.0;
  double vector_potential = 0.0;
  PotentialSpec potential;

  bool is_loop() const { return origin == terminus; }
  friend bool operator==(const Bond&, const Bond&) = default;
};

/// Endpoint slot of a bond: index b-1 is the start (x_b = 0) of bond b,
/// index B + b - 1 its end (x_b = L_b).
struct Slot {
  int index;
  int bond;  ///< 0-based bond index
  bool at_start;
};

class MetricGraph {
 public:
  MetricGraph() = default;
  /// Validates and normalises the bonds: ids must be a permutation of 1..B,
  /// bonds are sorted by id, and bonds given with origin > terminus are
  /// flipped (potential reflected, vector potential negated).
  MetricGraph(int vertex_count, std::vector<Bond> bonds);

  int vertex_count() const { return vertex_count_; }
  int bond_count() const { return static_cast<int>(bonds_.size()); }
  int slot_count() const { return 2 * bond_count(); }
  const std::vector<Bond>& bonds() const { return bonds_; }
  const Bond& bond(int index) const { return bonds_.at(index); }

  /// Endpoint slots incident to vertex v (1-based), ordered by bond then start/end.
  std::vector<Slot> incident_slots(int vertex) const;
  int degree(int vertex) const { return static_cast<int>(incident_slots(vertex).size()); }
  double total_length() const;
  double min_length() const;

  /// Copy with bond `index` (0-based) resized; the potential keeps its
  /// position relative to the bond origin.
  MetricGraph with_length(int index, double length) const;

  friend bool operator==(const MetricGraph&, const MetricGraph&) = default;

 private:
  int vertex_count_ = 0;
  std::vector<Bond> bonds_;
};

enum class VertexConditionKind { dirichlet, neumann, delta, custom };

struct VertexCondition {
  int vertex = 0;
  VertexConditionKind kind = VertexConditionKind::dirichlet;
  double lambda = 0.0;  ///< delta strength
  CMatrix a;            ///< custom block, m_v x m_v, slot order of incident_slots()
  CMatrix b;
};

/// The pair (A, B) of 2B x 2B matrices imposing  A psi + B psi_hat = 0.
struct MatchingConditions {
  CMatrix a;
  CMatrix b;
  /// Present when assembled per vertex; the conditions are then local.
  std::optional<std::vector<VertexCondition>> per_vertex;

  bool is_local() const { return per_vertex.has_value(); }
  int size() const { return static_cast<int>(a.rows()); }
};

struct ValidationReport {
  struct Check {
    std::string name;
    bool passed = false;
    bool skipped = false;
    std::string detail;
  };
  std::vector<Check> checks;

  bool passed() const;
};

/// Rank, Hermiticity (A B^+ = B A^+) and, when per-vertex data is present,
/// locality. Tolerances are 1e-12 relative to the largest singular value.
ValidationReport validate_matching(const MatchingConditions& mc, const MetricGraph* graph = nullptr);

/// Assembles block-diagonal (up to slot permutation) matching conditions from
/// one entry per vertex. Rows are emitted vertex by vertex.
MatchingConditions build_vertex_conditions(const MetricGraph& graph,
                                           std::vector<VertexCondition> per_vertex);

/// The (m x m) delta-type block: row 0 is (-lambda, 0, ..) | (1, .., 1),
/// rows i >= 1 impose psi_i = psi_{i+1}.
std::pair<CMatrix, CMatrix> delta_block(int degree, double lambda);

}  // namespace qgraph
