#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "qgraph/graph.hpp"

namespace qgraph {

struct GraphDocument {
  MetricGraph graph;
  MatchingConditions matching;
};

/// Parses the JSON graph format:
///
///   { "vertices": V,
///     "bonds": [ {"id", "origin", "terminus", "length", "vector_potential",
///                 "potential": {"kind": "zero" | "constant" | "bump", ...}} ],
///     "matching": {"mode": "per_vertex", "vertices": [...]}
///               | {"mode": "global", "A": [[...]], "B": [[...]]} }
///
/// Complex matrix entries are [re, im] pairs or bare numbers.
/// Throws ParseError on malformed input and ValidationError on invalid graphs.
GraphDocument parse_graph(std::string_view json_text);

GraphDocument load_graph_file(const std::filesystem::path& path);

/// Inverse of parse_graph. Numbers are written with round-trip precision.
std::string serialize_graph(const GraphDocument& doc);

}  // namespace qgraph
