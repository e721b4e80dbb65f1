#include "metgraph/graph.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "metgraph/error.hpp"

namespace metgraph {

std::size_t MetrizedGraph::add_vertex(const std::string& label) {
    if (index_.count(label)) throw Error("duplicate vertex label '" + label + "'");
    labels_.push_back(label);
    index_.emplace(label, labels_.size() - 1);
    return labels_.size() - 1;
}

std::size_t MetrizedGraph::ensure_vertex(const std::string& label) {
    auto it = index_.find(label);
    if (it != index_.end()) return it->second;
    return add_vertex(label);
}

std::size_t MetrizedGraph::add_edge(std::size_t u, std::size_t v, Rational length) {
    if (u >= labels_.size() || v >= labels_.size())
        throw Error("edge endpoint index out of range");
    edges_.push_back(Edge{u, v, std::move(length)});
    return edges_.size() - 1;
}

const std::string& MetrizedGraph::vertex_label(std::size_t i) const {
    if (i >= labels_.size()) throw Error("vertex index out of range");
    return labels_[i];
}

std::optional<std::size_t> MetrizedGraph::find_vertex(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const Edge& MetrizedGraph::edge(std::size_t i) const {
    if (i >= edges_.size()) throw Error("edge index out of range");
    return edges_[i];
}

Rational MetrizedGraph::total_length() const {
    Rational total(0);
    for (const Edge& e : edges_) total += e.length;
    return total;
}

std::size_t MetrizedGraph::valence(std::size_t p) const {
    if (p >= labels_.size()) throw Error("unknown vertex index");
    std::size_t count = 0;
    for (const Edge& e : edges_) {
        if (e.u == p) ++count;
        if (e.v == p) ++count;
    }
    return count;
}

bool MetrizedGraph::connected() const {
    const std::size_t n = labels_.size();
    if (n == 0) return false;
    std::vector<std::vector<std::size_t>> adj(n);
    for (const Edge& e : edges_) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        std::size_t cur = stack.back();
        stack.pop_back();
        for (std::size_t nb : adj[cur])
            if (!seen[nb]) {
                seen[nb] = 1;
                ++reached;
                stack.push_back(nb);
            }
    }
    return reached == n;
}

bool MetrizedGraph::optimal() const {
    std::map<std::pair<std::size_t, std::size_t>, int> pairs;
    for (const Edge& e : edges_) {
        if (e.is_loop()) return false;
        if (++pairs[e.key()] > 1) return false;
    }
    return true;
}

ValidationReport MetrizedGraph::validate() const {
    ValidationReport report;
    if (labels_.empty()) report.violations.push_back("vertex set is empty");
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        if (e.u >= labels_.size() || e.v >= labels_.size())
            report.violations.push_back("edge " + std::to_string(i) + " has a dangling endpoint");
        if (e.length <= 0)
            report.violations.push_back("edge " + std::to_string(i) + " has non-positive length " +
                                        to_fraction_string(e.length));
    }
    if (!labels_.empty() && !connected()) report.violations.push_back("graph is disconnected");
    return report;
}

namespace {

/// Deterministic fresh labels: continue the numbering after the largest
/// all-digit label, skipping anything already taken.
class LabelAllocator {
public:
    explicit LabelAllocator(const MetrizedGraph& g) {
        for (std::size_t i = 0; i < g.vertex_count(); ++i) {
            const std::string& label = g.vertex_label(i);
            if (label.empty() || label.size() > 18) continue;
            if (!std::all_of(label.begin(), label.end(),
                             [](unsigned char c) { return std::isdigit(c); }))
                continue;
            next_ = std::max(next_, std::stoull(label) + 1);
        }
    }

    std::string next(const MetrizedGraph& current) {
        std::string label = std::to_string(next_++);
        while (current.find_vertex(label)) label = std::to_string(next_++);
        return label;
    }

private:
    unsigned long long next_ = 1;
};

void require_valid(const MetrizedGraph& graph) {
    ValidationReport report = graph.validate();
    if (!report.ok()) throw Error("invalid graph: " + report.violations.front());
}

}  // namespace

std::pair<MetrizedGraph, SubdivisionMap> optimalize(const MetrizedGraph& graph) {
    require_valid(graph);

    MetrizedGraph out;
    SubdivisionMap map;
    map.original_vertex_count = graph.vertex_count();
    map.original_edge_count = graph.edge_count();
    for (std::size_t i = 0; i < graph.vertex_count(); ++i) out.add_vertex(graph.vertex_label(i));
    LabelAllocator labels(graph);

    // Pass 1: cut every self-loop into three equal pieces. Loop pieces end
    // at fresh vertices, so they can never be parallel to anything later.
    std::vector<std::size_t> stage_origin;  // stage edge -> original edge
    std::vector<Edge> stage_edges;
    for (std::size_t i = 0; i < graph.edge_count(); ++i) {
        const Edge& e = graph.edge(i);
        if (e.is_loop()) {
            Rational third = e.length / 3;
            std::size_t a = out.add_vertex(labels.next(out));
            std::size_t b = out.add_vertex(labels.next(out));
            map.added_vertices.push_back(a);
            map.added_vertices.push_back(b);
            stage_edges.push_back(Edge{e.u, a, third});
            stage_edges.push_back(Edge{a, b, third});
            stage_edges.push_back(Edge{b, e.v, third});
            stage_origin.insert(stage_origin.end(), 3, i);
        } else {
            stage_edges.push_back(e);
            stage_origin.push_back(i);
        }
    }

    // Pass 2: in each parallel family keep the first edge, halve the rest.
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> family_count;
    for (const Edge& e : stage_edges) ++family_count[e.key()];
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;
    for (std::size_t s = 0; s < stage_edges.size(); ++s) {
        const Edge& e = stage_edges[s];
        std::size_t rank = seen[e.key()]++;
        if (family_count[e.key()] >= 2 && rank >= 1) {
            Rational half = e.length / 2;
            std::size_t mid = out.add_vertex(labels.next(out));
            map.added_vertices.push_back(mid);
            out.add_edge(e.u, mid, half);
            out.add_edge(mid, e.v, half);
            map.piece_to_original.push_back(stage_origin[s]);
            map.piece_to_original.push_back(stage_origin[s]);
        } else {
            out.add_edge(e.u, e.v, e.length);
            map.piece_to_original.push_back(stage_origin[s]);
        }
    }
    return {std::move(out), std::move(map)};
}

std::pair<MetrizedGraph, SubdivisionMap> subdivide_edge(const MetrizedGraph& graph,
                                                        std::size_t edge_index,
                                                        const std::vector<Rational>& piece_lengths) {
    const Edge& target = graph.edge(edge_index);
    if (piece_lengths.empty()) throw Error("no piece lengths given");
    Rational sum(0);
    for (const Rational& piece : piece_lengths) {
        if (piece <= 0) throw Error("non-positive piece length");
        sum += piece;
    }
    if (sum != target.length)
        throw Error("piece lengths sum to " + to_fraction_string(sum) + ", edge has length " +
                    to_fraction_string(target.length));

    MetrizedGraph out;
    SubdivisionMap map;
    map.original_vertex_count = graph.vertex_count();
    map.original_edge_count = graph.edge_count();
    for (std::size_t i = 0; i < graph.vertex_count(); ++i) out.add_vertex(graph.vertex_label(i));
    LabelAllocator labels(graph);

    for (std::size_t i = 0; i < graph.edge_count(); ++i) {
        const Edge& e = graph.edge(i);
        if (i != edge_index) {
            out.add_edge(e.u, e.v, e.length);
            map.piece_to_original.push_back(i);
            continue;
        }
        std::size_t prev = e.u;
        for (std::size_t k = 0; k < piece_lengths.size(); ++k) {
            std::size_t next = e.v;
            if (k + 1 < piece_lengths.size()) {
                next = out.add_vertex(labels.next(out));
                map.added_vertices.push_back(next);
            }
            out.add_edge(prev, next, piece_lengths[k]);
            map.piece_to_original.push_back(i);
            prev = next;
        }
    }
    return {std::move(out), std::move(map)};
}

}  // namespace metgraph
