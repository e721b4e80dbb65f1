#pragma once

#include <iosfwd>
#include <string>

#include "metgraph/graph.hpp"

namespace metgraph {

/// Graph text format, one directive per line:
///
///   # comment (also allowed after a directive)
///   vertex <label>
///   edge <label_u> <label_v> <length>
///
/// `<length>` is a rational `p/q` or a decimal literal; both parse exactly.
/// Explicit `vertex` lines fix the vertex ordering; when any are present,
/// an edge endpoint with an undeclared label is an error. Without them,
/// labels are registered in order of first appearance.
MetrizedGraph parse_graph(std::istream& in, const std::string& source_name = "<input>");

/// Loads and parses a graph file; throws Error with the path and line on failure.
MetrizedGraph load_graph(const std::string& path);

/// Text-format serialization; re-parsing yields a structurally identical graph.
std::string serialize_graph(const MetrizedGraph& graph);

}  // namespace metgraph
