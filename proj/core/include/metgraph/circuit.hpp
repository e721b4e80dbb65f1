#pragma once

#include <cstddef>
#include <vector>

#include "metgraph/graph.hpp"
#include "metgraph/laplacian.hpp"

namespace metgraph {

/// A resistance that may be infinite. R_i is infinite exactly when e_i is
/// a bridge (removing it disconnects the graph).
template <class S>
struct ResistanceValue {
    S value{};
    bool infinite = false;

    static ResistanceValue finite(S v) { return ResistanceValue{std::move(v), false}; }
    static ResistanceValue unbounded() { return ResistanceValue{S(0), true}; }
};

/// Circuit reduction of the complement of one edge, relative to a base
/// vertex p: the complement resistance R_i between the edge's endpoints
/// and the Y-arm resistances R_a (endpoint side), R_b (far endpoint side),
/// R_c (base side). For finite R_i, R_a + R_b = R_i. For a bridge,
/// (R_a, R_b) is (0, inf) or (inf, 0) depending on which component of the
/// cut graph contains p; R_c is reported as 0.
template <class S>
struct EdgeComplementData {
    std::size_t edge_index = 0;
    S length{};
    ResistanceValue<S> complement_resistance;  // R_i
    std::size_t base_vertex = 0;
    ResistanceValue<S> arm_a;
    ResistanceValue<S> arm_b;
    S arm_c{};
};

/// Effective resistance r(p,q) = l+_pp - 2 l+_pq + l+_qq.
template <class S>
S resistance(const LaplacianPair<S>& pair, std::size_t p, std::size_t q) {
    if (p >= pair.order() || q >= pair.order()) throw Error("unknown vertex index");
    return S(pair.pinv(p, p) - S(2) * pair.pinv(p, q) + pair.pinv(q, q));
}

/// Voltage j_z(x,y): potential at x relative to z when unit current enters
/// at y and exits at z. Equals l+_zz - l+_zx - l+_zy + l+_xy.
template <class S>
S voltage(const LaplacianPair<S>& pair, std::size_t z, std::size_t x, std::size_t y) {
    if (z >= pair.order() || x >= pair.order() || y >= pair.order())
        throw Error("unknown vertex index");
    return S(pair.pinv(z, z) - pair.pinv(z, x) - pair.pinv(z, y) + pair.pinv(x, y));
}

/// R_i from the full-graph pair by inverting r(p_i,q_i) = L R/(L+R):
/// R = L r/(L - r), infinite exactly when r equals the edge length (the
/// bridge case). r > L signals numerical corruption.
template <class S>
ResistanceValue<S> edge_complement_resistance(const MetrizedGraph& graph,
                                              const LaplacianPair<S>& pair,
                                              std::size_t edge_index) {
    const Edge& e = graph.edge(edge_index);
    S length = ScalarOps<S>::from_rational(e.length);
    S r = resistance(pair, e.u, e.v);
    if (pair.field.equal(r, length)) return ResistanceValue<S>::unbounded();
    if (r > length)
        throw Error("resistance across edge " + std::to_string(edge_index) +
                    " exceeds its length; matrix data is corrupt");
    return ResistanceValue<S>::finite(S(length * r / S(length - r)));
}

/// Base-vertex-independent part of the circuit reduction of one edge's
/// complement: either the Laplacian pair of the cut graph, or, for a
/// bridge, the component split.
template <class S>
struct EdgeReduction {
    std::size_t edge_index = 0;
    bool bridge = false;
    LaplacianPair<S> complement_pair;       // when !bridge
    std::vector<char> with_first_endpoint;  // when bridge: vertex -> component flag
};

template <class S>
EdgeReduction<S> reduce_edge(const MetrizedGraph& graph, std::size_t edge_index,
                             Field<S> field = {}) {
    const Edge& removed = graph.edge(edge_index);
    MetrizedGraph cut;
    for (std::size_t i = 0; i < graph.vertex_count(); ++i) cut.add_vertex(graph.vertex_label(i));
    for (std::size_t i = 0; i < graph.edge_count(); ++i)
        if (i != edge_index) {
            const Edge& e = graph.edge(i);
            cut.add_edge(e.u, e.v, e.length);
        }

    EdgeReduction<S> reduction;
    reduction.edge_index = edge_index;
    if (cut.connected()) {
        reduction.complement_pair = build_pair<S>(cut, field);
        return reduction;
    }

    reduction.bridge = true;
    reduction.with_first_endpoint.assign(graph.vertex_count(), 0);
    std::vector<std::vector<std::size_t>> adj(graph.vertex_count());
    for (const Edge& e : cut.edges()) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<std::size_t> stack{removed.u};
    reduction.with_first_endpoint[removed.u] = 1;
    while (!stack.empty()) {
        std::size_t cur = stack.back();
        stack.pop_back();
        for (std::size_t nb : adj[cur])
            if (!reduction.with_first_endpoint[nb]) {
                reduction.with_first_endpoint[nb] = 1;
                stack.push_back(nb);
            }
    }
    return reduction;
}

/// Y-arm resistances for one base vertex from a precomputed reduction.
/// Finite case: R_a = (r'(p_i,q_i) + r'(p_i,p) - r'(q_i,p)) / 2 and its
/// two symmetric companions, r' being resistance in the cut graph.
template <class S>
EdgeComplementData<S> arms_for_base(const MetrizedGraph& graph, const EdgeReduction<S>& reduction,
                                    std::size_t base_vertex) {
    const Edge& e = graph.edge(reduction.edge_index);
    if (base_vertex >= graph.vertex_count()) throw Error("unknown vertex index");

    EdgeComplementData<S> data;
    data.edge_index = reduction.edge_index;
    data.length = ScalarOps<S>::from_rational(e.length);
    data.base_vertex = base_vertex;

    if (reduction.bridge) {
        data.complement_resistance = ResistanceValue<S>::unbounded();
        data.arm_c = S(0);
        if (reduction.with_first_endpoint[base_vertex]) {
            data.arm_a = ResistanceValue<S>::finite(S(0));
            data.arm_b = ResistanceValue<S>::unbounded();
        } else {
            data.arm_a = ResistanceValue<S>::unbounded();
            data.arm_b = ResistanceValue<S>::finite(S(0));
        }
        return data;
    }

    const LaplacianPair<S>& pair = reduction.complement_pair;
    S r_pq = resistance(pair, e.u, e.v);
    S r_p = resistance(pair, e.u, base_vertex);
    S r_q = resistance(pair, e.v, base_vertex);
    S half = scalar_ratio<S>(1, 2);
    data.complement_resistance = ResistanceValue<S>::finite(r_pq);
    data.arm_a = ResistanceValue<S>::finite(S(half * S(r_pq + r_p - r_q)));
    data.arm_b = ResistanceValue<S>::finite(S(half * S(r_pq + r_q - r_p)));
    data.arm_c = S(half * S(r_p + r_q - r_pq));
    return data;
}

/// Full two-terminal reduction of one edge's complement for one base
/// vertex. Builds the cut graph's Laplacian pair internally.
template <class S>
EdgeComplementData<S> two_point_reduction(const MetrizedGraph& graph, std::size_t edge_index,
                                          std::size_t base_vertex, Field<S> field = {}) {
    return arms_for_base(graph, reduce_edge<S>(graph, edge_index, field), base_vertex);
}

/// Sum of L_i/(L_i + R_i) over all edges; bridge terms contribute 0. For a
/// connected graph this equals the cycle rank e - v + 1.
template <class S>
S cycle_rank_sum(const MetrizedGraph& graph, const LaplacianPair<S>& pair) {
    S sum(0);
    for (std::size_t i = 0; i < graph.edge_count(); ++i) {
        ResistanceValue<S> complement = edge_complement_resistance(graph, pair, i);
        if (complement.infinite) continue;
        S length = ScalarOps<S>::from_rational(graph.edge(i).length);
        sum += S(length / S(length + complement.value));
    }
    return sum;
}

/// Per-edge circuit table for any raw graph: length, complement resistance
/// and canonical-measure density, reported against the graph's own edges.
/// Computed on the optimalized graph and mapped back; subdividing an edge
/// changes neither L_i + R_i nor the density of its pieces.
template <class S>
struct EdgeTableRow {
    std::size_t edge_index = 0;
    S length{};
    ResistanceValue<S> complement_resistance;
    S density{};
};

template <class S>
std::vector<EdgeTableRow<S>> edge_table(const MetrizedGraph& graph, Field<S> field = {}) {
    auto [optimal, map] = optimalize(graph);
    LaplacianPair<S> pair = build_pair<S>(optimal, field);

    std::vector<EdgeTableRow<S>> rows(graph.edge_count());
    std::vector<char> filled(graph.edge_count(), 0);
    for (std::size_t piece = 0; piece < optimal.edge_count(); ++piece) {
        std::size_t original = map.piece_to_original[piece];
        if (filled[original]) continue;
        filled[original] = 1;

        EdgeTableRow<S>& row = rows[original];
        row.edge_index = original;
        row.length = ScalarOps<S>::from_rational(graph.edge(original).length);
        ResistanceValue<S> piece_complement = edge_complement_resistance(optimal, pair, piece);
        if (piece_complement.infinite) {
            row.complement_resistance = ResistanceValue<S>::unbounded();
            row.density = S(0);
        } else {
            S piece_length = ScalarOps<S>::from_rational(optimal.edge(piece).length);
            S total = S(piece_length + piece_complement.value);  // = L_i + R_i of the original
            row.complement_resistance = ResistanceValue<S>::finite(S(total - row.length));
            row.density = S(S(1) / total);
        }
    }
    return rows;
}

}  // namespace metgraph
