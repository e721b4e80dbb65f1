#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "metgraph/rational.hpp"

namespace metgraph {

/// Undirected edge between two vertex indices. Lengths double as
/// resistances; they are stored exactly regardless of the compute backend.
/// Self-loops (u == v) and parallel edges are legal in a raw graph.
struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;
    Rational length;

    bool is_loop() const { return u == v; }
    std::pair<std::size_t, std::size_t> key() const {
        return u <= v ? std::make_pair(u, v) : std::make_pair(v, u);
    }
    bool operator==(const Edge& o) const { return u == o.u && v == o.v && length == o.length; }
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Records how optimalize/subdivide_edge rewrote a graph: which original
/// edge each new edge is a piece of, and which vertices were created.
/// Added vertices always have valence 2 and are appended after the
/// original vertex list.
struct SubdivisionMap {
    std::size_t original_vertex_count = 0;
    std::size_t original_edge_count = 0;
    std::vector<std::size_t> piece_to_original;  // indexed by new edge
    std::vector<std::size_t> added_vertices;     // indices in the new graph

    bool is_identity() const {
        if (!added_vertices.empty()) return false;
        if (piece_to_original.size() != original_edge_count) return false;
        for (std::size_t i = 0; i < piece_to_original.size(); ++i)
            if (piece_to_original[i] != i) return false;
        return true;
    }
};

/// A metrized graph: ordered labelled vertices plus edges with positive
/// lengths. The vertex order is fixed at insertion time and is the
/// row/column order of every matrix derived from the graph.
///
/// Values are immutable once built (the mutating API is construction
/// only); all free functions on graphs are pure.
class MetrizedGraph {
public:
    MetrizedGraph() = default;

    /// Registers a vertex; throws on duplicate label. Returns its index.
    std::size_t add_vertex(const std::string& label);

    /// Returns the index for `label`, registering it first if unknown.
    std::size_t ensure_vertex(const std::string& label);

    /// Endpoints are bounds-checked; lengths are not (validate() reports
    /// non-positive lengths as diagnostics).
    std::size_t add_edge(std::size_t u, std::size_t v, Rational length);

    std::size_t vertex_count() const { return labels_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::string& vertex_label(std::size_t i) const;
    std::optional<std::size_t> find_vertex(const std::string& label) const;

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(std::size_t i) const;

    Rational total_length() const;

    /// Number of directions emanating from p; a self-loop contributes 2.
    std::size_t valence(std::size_t p) const;

    /// Every pair of vertices joined by a path. A single vertex with no
    /// edges is connected; an empty graph is not.
    bool connected() const;

    /// True when the vertex set is optimal: no self-loops and no two
    /// edges sharing the same unordered endpoint pair.
    bool optimal() const;

    ValidationReport validate() const;

    bool operator==(const MetrizedGraph& o) const {
        return labels_ == o.labels_ && edges_ == o.edges_;
    }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<Edge> edges_;
};

/// Rewrites the vertex set so the result is optimal without changing any
/// invariant: each self-loop is cut by 2 new vertices into 3 equal pieces;
/// in each family of k >= 2 parallel edges the first stays and the other
/// k-1 are halved at a fresh midpoint. Idempotent. Throws on invalid input.
std::pair<MetrizedGraph, SubdivisionMap> optimalize(const MetrizedGraph& graph);

/// Replaces one edge by a path of valence-2 vertices with the given piece
/// lengths. Pieces must be positive and sum exactly to the edge length.
std::pair<MetrizedGraph, SubdivisionMap> subdivide_edge(const MetrizedGraph& graph,
                                                        std::size_t edge_index,
                                                        const std::vector<Rational>& piece_lengths);

}  // namespace metgraph
