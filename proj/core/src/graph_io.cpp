#include "qgraph/graph_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qgraph/error.hpp"

namespace qgraph {
namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(where + ": missing field \"" + key + "\"");
  }
  return obj.at(key);
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + ": expected a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
  return v.get<int>();
}

cplx complex_entry(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ParseError(where + ": complex entries must be a number or [re, im]");
}

CMatrix complex_matrix(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(v.size());
  if (rows == 0) return CMatrix(0, 0);
  if (!v[0].is_array()) throw ParseError(where + ": expected an array of rows");
  const auto cols = static_cast<Eigen::Index>(v[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!v[r].is_array() || static_cast<Eigen::Index>(v[r].size()) != cols) {
      throw ParseError(where + ": ragged matrix");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_entry(v[r][c], where);
  }
  return m;
}

PotentialSpec parse_potential(const json& p, const std::string& where, double length) {
  if (!p.is_object()) throw ParseError(where + ": potential must be an object");
  const std::string kind = require(p, "kind", where).get<std::string>();
  PotentialSpec spec;
  if (kind == "zero") {
    spec = PotentialSpec::zero();
  } else if (kind == "constant") {
    spec = PotentialSpec::constant(number(require(p, "value", where), where + ".value"));
  } else if (kind == "bump") {
    const double w = number(require(p, "half_width", where), where + ".half_width");
    if (!(w > 0.0)) throw ParseError(where + ": bump half_width must be positive");
    spec = PotentialSpec::bump(number(require(p, "center", where), where + ".center"), w,
                               number(require(p, "height", where), where + ".height"));
  } else {
    throw ParseError(where + ": unknown potential kind \"" + kind + "\"");
  }
  if (p.contains("compact")) {
    spec.declared_compact = p.at("compact").get<bool>();
    if (spec.declared_compact && !spec.compactly_supported_in(length)) {
      throw ParseError(where + ": potential declared compact but its support touches an endpoint");
    }
  }
  return spec;
}

json complex_to_json(cplx z) {
  if (z.imag() == 0.0) return z.real();
  return json::array({z.real(), z.imag()});
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json potential_to_json(const PotentialSpec& p) {
  json out;
  switch (p.kind) {
    case PotentialKind::zero: out["kind"] = "zero"; break;
    case PotentialKind::constant:
      out["kind"] = "constant";
      out["value"] = p.value;
      break;
    case PotentialKind::bump:
      out["kind"] = "bump";
      out["center"] = p.center;
      out["half_width"] = p.half_width;
      out["height"] = p.height;
      break;
  }
  if (p.declared_compact) out["compact"] = true;
  return out;
}

const char* condition_name(VertexConditionKind k) {
  switch (k) {
    case VertexConditionKind::dirichlet: return "dirichlet";
    case VertexConditionKind::neumann: return "neumann";
    case VertexConditionKind::delta: return "delta";
    case VertexConditionKind::custom: return "custom";
  }
  return "dirichlet";
}

MatchingConditions parse_matching(const json& jm, const MetricGraph& graph) {
  const int nv = graph.vertex_count();
  const std::string mode = require(jm, "mode", "matching").get<std::string>();
  if (mode == "per_vertex") {
    const json& jv = require(jm, "vertices", "matching");
    if (!jv.is_array()) throw ParseError("matching.vertices: expected an array");
    std::vector<VertexCondition> conds;
    for (std::size_t i = 0; i < jv.size(); ++i) {
      const json& v = jv[i];
      const std::string where = "matching.vertices[" + std::to_string(i) + "]";
      VertexCondition vc;
      vc.vertex = integer(require(v, "vertex", where), where + ".vertex");
      if (vc.vertex < 1 || vc.vertex > nv) {
        throw ParseError(where + ": vertex " + std::to_string(vc.vertex) + " does not exist");
      }
      const std::string kind = require(v, "kind", where).get<std::string>();
      if (kind == "dirichlet") {
        vc.kind = VertexConditionKind::dirichlet;
      } else if (kind == "neumann") {
        vc.kind = VertexConditionKind::neumann;
      } else if (kind == "delta") {
        vc.kind = VertexConditionKind::delta;
        vc.lambda = number(require(v, "lambda", where), where + ".lambda");
      } else if (kind == "custom") {
        vc.kind = VertexConditionKind::custom;
        vc.a = complex_matrix(require(v, "A", where), where + ".A");
        vc.b = complex_matrix(require(v, "B", where), where + ".B");
      } else {
        throw ParseError(where + ": unknown vertex condition \"" + kind + "\"");
      }
      conds.push_back(std::move(vc));
    }
    return build_vertex_conditions(graph, std::move(conds));
  }
  if (mode == "global") {
    MatchingConditions mc;
    mc.a = complex_matrix(require(jm, "A", "matching"), "matching.A");
    mc.b = complex_matrix(require(jm, "B", "matching"), "matching.B");
    const Eigen::Index n = graph.slot_count();
    if (mc.a.rows() != n || mc.a.cols() != n || mc.b.rows() != n || mc.b.cols() != n) {
      throw ParseError("matching: global A and B must be 2B x 2B");
    }
    return mc;
  }
  throw ParseError("matching.mode must be \"per_vertex\" or \"global\"");
}

}  // namespace

GraphDocument parse_graph(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("graph file is not valid JSON: ") + e.what());
  }
  try {
    const int nv = integer(require(doc, "vertices", "graph"), "vertices");
    const json& jb = require(doc, "bonds", "graph");
    if (!jb.is_array()) throw ParseError("bonds: expected an array");
    std::vector<Bond> bonds;
    for (std::size_t i = 0; i < jb.size(); ++i) {
      const json& b = jb[i];
      const std::string where = "bonds[" + std::to_string(i) + "]";
      Bond bond;
      bond.id = integer(require(b, "id", where), where + ".id");
      bond.origin = integer(require(b, "origin", where), where + ".origin");
      bond.terminus = integer(require(b, "terminus", where), where + ".terminus");
      bond.length = number(require(b, "length", where), where + ".length");
      bond.vector_potential = b.contains("vector_potential")
                                  ? number(b.at("vector_potential"), where + ".vector_potential")
                                  : 0.0;
      bond.potential = b.contains("potential")
                           ? parse_potential(b.at("potential"), where + ".potential", bond.length)
                           : PotentialSpec::zero();
      bonds.push_back(std::move(bond));
    }
    MetricGraph graph(nv, std::move(bonds));

    MatchingConditions mc = parse_matching(require(doc, "matching", "graph"), graph);
    return {std::move(graph), std::move(mc)};
  } catch (const json::exception& e) {
    throw ParseError(std::string("graph file: ") + e.what());
  }
}

GraphDocument load_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

std::string serialize_graph(const GraphDocument& doc) {
  json out;
  out["vertices"] = doc.graph.vertex_count();
  json bonds = json::array();
  for (const Bond& b : doc.graph.bonds()) {
    bonds.push_back({{"id", b.id},
                     {"origin", b.origin},
                     {"terminus", b.terminus},
                     {"length", b.length},
                     {"vector_potential", b.vector_potential},
                     {"potential", potential_to_json(b.potential)}});
  }
  out["bonds"] = std::move(bonds);
  json m;
  if (doc.matching.per_vertex) {
    m["mode"] = "per_vertex";
    json verts = json::array();
    for (const auto& vc : *doc.matching.per_vertex) {
      json v{{"vertex", vc.vertex}, {"kind", condition_name(vc.kind)}};
      if (vc.kind == VertexConditionKind::delta) v["lambda"] = vc.lambda;
      if (vc.kind == VertexConditionKind::custom) {
        v["A"] = matrix_to_json(vc.a);
        v["B"] = matrix_to_json(vc.b);
      }
      verts.push_back(std::move(v));
    }
    m["vertices"] = std::move(verts);
  } else {
    m["mode"] = "global";
    m["A"] = matrix_to_json(doc.matching.a);
    m["B"] = matrix_to_json(doc.matching.b);
  }
  out["matching"] = std::move(m);
  return out.dump(2);
}

}  // namespace qgraph
