#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "metgraph/circuit.hpp"
#include "metgraph/graph.hpp"
#include "metgraph/laplacian.hpp"

namespace metgraph {

enum class TauMethod { pinv_form1, pinv_form2, circuit };

inline const char* tau_method_name(TauMethod m) {
    switch (m) {
        case TauMethod::pinv_form1: return "pinv-form-1";
        case TauMethod::pinv_form2: return "pinv-form-2";
        case TauMethod::circuit: return "circuit";
    }
    return "?";
}

template <class S>
struct TauReport {
    S tau{};
    TauMethod method = TauMethod::pinv_form1;
    S lower_bound{};    // tr(L+)/v
    S total_length{};
};

/// Per-vertex Dirac coefficients 1 - valence/2 plus a uniform density on
/// each edge. The density of e_i is 1/(L_i + R_i); bridges get exactly 0.
/// Total mass is 1.
template <class S>
struct CanonicalMeasure {
    std::vector<S> vertex_coefficients;  // by vertex index
    std::vector<S> edge_densities;       // by edge index
    S mass{};
    Field<S> field;
};

namespace detail {

/// Sum over all ordered vertex pairs (q,s), diagonal included, of
/// l_qs * f(q, s).
template <class S, class F>
S ordered_pair_sum(const Matrix<S>& lap, F&& f) {
    S sum(0);
    for (std::size_t q = 0; q < lap.order(); ++q)
        for (std::size_t s = 0; s < lap.order(); ++s) {
            const S& weight = lap(q, s);
            if (!(weight == S(0))) sum += S(weight * f(q, s));
        }
    return sum;
}

template <class S>
S trace_over_order(const LaplacianPair<S>& pair) {
    return S(pair.pinv.trace() * scalar_ratio<S>(1, static_cast<unsigned long>(pair.order())));
}

}  // namespace detail

/// The tau constant from L and L+ alone. Both printed forms of the
/// pseudo-inverse formula are evaluated and must agree:
///
///   tau = -1/12 sum_i l_uv (1/l_uv + r_i)^2 + 1/4 sum_{q,s} l_qs l+_qq l+_ss + tr(L+)/v
///   tau = -1/12 sum_i l_uv (1/l_uv + r_i)^2 - 1/4 sum_i  l_uv (l+_uu - l+_vv)^2 + tr(L+)/v
///
/// with r_i = l+_uu - 2 l+_uv + l+_vv and the pair sum over all ordered
/// vertex pairs, diagonal included. No bridge special case is needed: a
/// bridge's first-sum term vanishes because r_i equals the edge length.
template <class S>
TauReport<S> tau_pinv(const MetrizedGraph& graph, const LaplacianPair<S>& pair) {
    if (!graph.optimal()) throw Error("tau_pinv requires an optimal vertex set");
    if (graph.vertex_count() != pair.order()) throw Error("pair does not match graph");

    const Matrix<S>& lap = pair.lap;
    const Matrix<S>& pinv = pair.pinv;

    S edge_sum(0);        // sum_i l_uv (1/l_uv + r_i)^2
    S gap_sum(0);         // sum_i l_uv (l+_uu - l+_vv)^2
    for (const Edge& e : graph.edges()) {
        const S& weight = lap(e.u, e.v);  // -1/L_i
        S r = S(pinv(e.u, e.u) - S(2) * pinv(e.u, e.v) + pinv(e.v, e.v));
        S first = S(S(1) / weight + r);
        edge_sum += S(weight * S(first * first));
        S gap = S(pinv(e.u, e.u) - pinv(e.v, e.v));
        gap_sum += S(weight * S(gap * gap));
    }
    S pair_sum = detail::ordered_pair_sum(lap, [&](std::size_t q, std::size_t s) {
        return S(pinv(q, q) * pinv(s, s));
    });

    S shared = S(scalar_ratio<S>(-1, 12) * edge_sum + detail::trace_over_order(pair));
    S form1 = S(shared + scalar_ratio<S>(1, 4) * pair_sum);
    S form2 = S(shared - scalar_ratio<S>(1, 4) * gap_sum);
    if (!pair.field.equal(form1, form2))
        throw Error("the two pseudo-inverse tau forms disagree; implementation error");

    TauReport<S> report;
    report.tau = form1;
    report.method = TauMethod::pinv_form1;
    report.lower_bound = detail::trace_over_order(pair);
    report.total_length = ScalarOps<S>::from_rational(graph.total_length());
    return report;
}

namespace detail {

/// Circuit-reduction summand of one edge: (L^3 + 3L (R_a - R_b)^2)/(L+R)^2,
/// or its limit 3L when the edge is a bridge.
template <class S>
S circuit_summand(const EdgeComplementData<S>& data) {
    if (data.complement_resistance.infinite) return S(S(3) * data.length);
    const S& length = data.length;
    S diff = S(data.arm_a.value - data.arm_b.value);
    S denom = S(length + data.complement_resistance.value);
    S numer = S(S(length * S(length * length)) + S(S(3) * length) * S(diff * diff));
    return S(numer / S(denom * denom));
}

}  // namespace detail

/// The tau constant by circuit reduction of each edge's complement:
/// tau = 1/12 sum_i (L_i^3 + 3 L_i (R_a - R_b)^2)/(L_i + R_i)^2, a bridge
/// contributing its limit 3 L_i. The value is independent of the base
/// vertex. This route never looks at the full-graph pseudo-inverse except
/// to fill in the report's lower bound, so it serves as an independent
/// cross-check of tau_pinv.
template <class S>
TauReport<S> tau_circuit(const MetrizedGraph& graph, std::size_t base_vertex = 0,
                         Field<S> field = {}) {
    if (!graph.optimal()) throw Error("tau_circuit requires an optimal vertex set");
    if (base_vertex >= graph.vertex_count()) throw Error("unknown base vertex");

    S sum(0);
    for (std::size_t i = 0; i < graph.edge_count(); ++i)
        sum += detail::circuit_summand(two_point_reduction<S>(graph, i, base_vertex, field));

    TauReport<S> report;
    report.tau = S(scalar_ratio<S>(1, 12) * sum);
    report.method = TauMethod::circuit;
    report.lower_bound = detail::trace_over_order(build_pair<S>(graph, field));
    report.total_length = ScalarOps<S>::from_rational(graph.total_length());
    return report;
}

/// tau by circuit reduction for every choice of base vertex, sharing the
/// per-edge complement factorizations across bases.
template <class S>
std::vector<S> tau_circuit_all_bases(const MetrizedGraph& graph, Field<S> field = {}) {
    if (!graph.optimal()) throw Error("tau_circuit requires an optimal vertex set");
    std::vector<EdgeReduction<S>> reductions;
    reductions.reserve(graph.edge_count());
    for (std::size_t i = 0; i < graph.edge_count(); ++i)
        reductions.push_back(reduce_edge<S>(graph, i, field));

    std::vector<S> taus(graph.vertex_count(), S(0));
    for (std::size_t p = 0; p < graph.vertex_count(); ++p) {
        S sum(0);
        for (const EdgeReduction<S>& reduction : reductions)
            sum += detail::circuit_summand(arms_for_base(graph, reduction, p));
        taus[p] = S(scalar_ratio<S>(1, 12) * sum);
    }
    return taus;
}

/// Canonical measure from L and L+: coefficient 1 - valence(p)/2 at each
/// vertex, density -(l_uv + l_uv^2 r_i) on each edge. The density form is
/// algebraically 1/(L_i + R_i) and evaluates to exactly 0 on bridges.
template <class S>
CanonicalMeasure<S> canonical_measure(const MetrizedGraph& graph, const LaplacianPair<S>& pair) {
    if (!graph.optimal()) throw Error("canonical_measure requires an optimal vertex set");
    if (graph.vertex_count() != pair.order()) throw Error("pair does not match graph");

    CanonicalMeasure<S> measure;
    measure.field = pair.field;
    measure.vertex_coefficients.reserve(graph.vertex_count());
    for (std::size_t p = 0; p < graph.vertex_count(); ++p) {
        long v = static_cast<long>(graph.valence(p));
        measure.vertex_coefficients.push_back(S(S(1) + scalar_ratio<S>(-v, 2)));
    }
    measure.edge_densities.reserve(graph.edge_count());
    S mass(0);
    for (const S& coeff : measure.vertex_coefficients) mass += coeff;
    for (const Edge& e : graph.edges()) {
        const S& weight = pair.lap(e.u, e.v);
        S r = S(pair.pinv(e.u, e.u) - S(2) * pair.pinv(e.u, e.v) + pair.pinv(e.v, e.v));
        S density = S(-(weight + S(S(weight * weight) * r)));
        measure.edge_densities.push_back(density);
        mass += S(density * ScalarOps<S>::from_rational(e.length));
    }
    measure.mass = mass;
    return measure;
}

/// Transports a measure computed on a subdivided graph back to the graph
/// it came from. Added valence-2 vertices carry coefficient 0 and are
/// dropped; the pieces of one original edge carry equal densities, which
/// collapse to a single density. Disagreeing piece densities signal an
/// implementation error.
template <class S>
CanonicalMeasure<S> measure_pullback(const CanonicalMeasure<S>& measure,
                                     const SubdivisionMap& map) {
    for (std::size_t added : map.added_vertices)
        if (!measure.field.equal(measure.vertex_coefficients[added], S(0)))
            throw Error("added vertex carries a nonzero measure coefficient");
    if (measure.edge_densities.size() != map.piece_to_original.size())
        throw Error("measure does not match the subdivision map");

    CanonicalMeasure<S> pulled;
    pulled.field = measure.field;
    pulled.vertex_coefficients.assign(measure.vertex_coefficients.begin(),
                                      measure.vertex_coefficients.begin() +
                                          static_cast<std::ptrdiff_t>(map.original_vertex_count));
    pulled.edge_densities.assign(map.original_edge_count, S(0));
    std::vector<char> filled(map.original_edge_count, 0);
    for (std::size_t piece = 0; piece < map.piece_to_original.size(); ++piece) {
        std::size_t original = map.piece_to_original[piece];
        if (!filled[original]) {
            pulled.edge_densities[original] = measure.edge_densities[piece];
            filled[original] = 1;
        } else if (!measure.field.equal(pulled.edge_densities[original],
                                        measure.edge_densities[piece])) {
            throw Error("pieces of one edge disagree in density");
        }
    }
    pulled.mass = measure.mass;
    return pulled;
}

/// Scalar identities tying the circuit quantities L_i, R_i, R_a, R_b to
/// the entries of L and L+. The circuit side of each identity comes from
/// per-edge complement factorizations, never from the pair under test, so
/// every item is a genuine cross-route comparison. Items that involve R_i
/// are checked only on bridgeless graphs, where every term is finite; they
/// are reported as skipped otherwise.
template <class S>
CheckReport identity_suite(const MetrizedGraph& graph, const LaplacianPair<S>& pair) {
    if (!graph.optimal()) throw Error("identity_suite requires an optimal vertex set");
    const Matrix<S>& lap = pair.lap;
    const Matrix<S>& pinv = pair.pinv;
    const Field<S>& field = pair.field;
    const std::size_t n = graph.vertex_count();

    CheckReport report;
    auto add = [&report](std::string name, bool pass) {
        report.items.push_back(CheckItem{std::move(name), pass, false, ""});
    };
    auto skip = [&report](std::string name) {
        report.items.push_back(CheckItem{std::move(name), true, true, "skipped: graph has bridges"});
    };

    // Complement resistances and Y-arms from per-edge factorizations.
    std::vector<EdgeComplementData<S>> edge_data;
    edge_data.reserve(graph.edge_count());
    bool has_bridge = false;
    for (std::size_t i = 0; i < graph.edge_count(); ++i) {
        edge_data.push_back(two_point_reduction<S>(graph, i, 0, field));
        has_bridge = has_bridge || edge_data.back().complement_resistance.infinite;
    }
    S trace_term = detail::trace_over_order(pair);

    // Diagonal-difference identity: three expressions for the same sum,
    // no complement resistance involved, so it runs on every graph.
    {
        S via_pairs = detail::ordered_pair_sum(lap, [&](std::size_t q, std::size_t s) {
            return S(pinv(q, q) * pinv(s, s));
        });
        S via_squares = detail::ordered_pair_sum(lap, [&](std::size_t q, std::size_t s) {
            S gap = S(pinv(q, q) - pinv(s, s));
            return S(gap * gap);
        });
        via_squares = S(scalar_ratio<S>(-1, 2) * via_squares);
        S via_edges(0);
        for (const Edge& e : graph.edges()) {
            S gap = S(pinv(e.u, e.u) - pinv(e.v, e.v));
            via_edges += S(S(gap * gap) / ScalarOps<S>::from_rational(e.length));
        }
        bool pass = field.equal(via_pairs, via_squares) && field.equal(via_pairs, via_edges) &&
                    field.less_equal(S(0), via_edges);
        add("sum l_qs l+_qq l+_ss: pair form = square form = edge form >= 0", pass);
    }

    auto complement_ratio = [&](std::size_t i, bool use_length) {
        // L_i/(L_i+R_i) or R_i/(L_i+R_i), finite edges only.
        const S& length = edge_data[i].length;
        const S& complement = edge_data[i].complement_resistance.value;
        S denom = S(length + complement);
        return S((use_length ? length : complement) / denom);
    };

    if (has_bridge) {
        skip("sum L R^2/(L+R)^2 vs trace and entry sums");
        skip("l+_pp reconstruction, R/(L+R) weights");
        skip("l+_pp reconstruction, L/(L+R) weights and valences");
        skip("sum L (R_b - R_a)^2/(L+R)^2 vs trace");
        skip("sum L^3/(L+R)^2 vs per-edge squares");
        return report;
    }

    // sum_i L R^2/(L+R)^2 = 4(v-1)/v tr(L+) - sum l_pq l+_pp l+_qq - 2 sum l_pq (l+_pq)^2.
    {
        S lhs(0);
        for (std::size_t i = 0; i < graph.edge_count(); ++i) {
            S ratio = complement_ratio(i, false);  // R/(L+R)
            lhs += S(edge_data[i].length * S(ratio * ratio));
        }
        S diag_products = detail::ordered_pair_sum(lap, [&](std::size_t q, std::size_t s) {
            return S(pinv(q, q) * pinv(s, s));
        });
        S entry_squares = detail::ordered_pair_sum(lap, [&](std::size_t q, std::size_t s) {
            return S(pinv(q, s) * pinv(q, s));
        });
        S rhs = S(S(S(4) * scalar_ratio<S>(static_cast<long>(n) - 1, static_cast<unsigned long>(n)) *
                    pair.pinv.trace()) -
                  diag_products - S(S(2) * entry_squares));
        add("sum L R^2/(L+R)^2 vs trace and entry sums", field.equal(lhs, rhs));
    }

    // Two reconstructions of each diagonal entry l+_pp.
    {
        bool r_form = true, l_form = true;
        std::vector<std::size_t> valences(n);
        for (std::size_t q = 0; q < n; ++q) valences[q] = graph.valence(q);
        for (std::size_t p = 0; p < n && (r_form || l_form); ++p) {
            S r_sum(0), l_sum(0);
            for (std::size_t i = 0; i < graph.edge_count(); ++i) {
                const Edge& e = graph.edge(i);
                S ends = S(pinv(p, e.u) + pinv(p, e.v));
                r_sum += S(complement_ratio(i, false) * ends);
                l_sum += S(complement_ratio(i, true) * ends);
            }
            S valence_sum(0);
            for (std::size_t q = 0; q < n; ++q)
                valence_sum += S(scalar_ratio<S>(static_cast<long>(valences[q]), 1) * pinv(p, q));
            r_form = r_form && field.equal(pinv(p, p), S(trace_term - r_sum));
            l_form = l_form && field.equal(pinv(p, p), S(S(trace_term + l_sum) - valence_sum));
        }
        add("l+_pp reconstruction, R/(L+R) weights", r_form);
        add("l+_pp reconstruction, L/(L+R) weights and valences", l_form);
    }

    // sum_i L (R_b - R_a)^2/(L+R)^2 = 4/v tr(L+) - 1/2 sum l_qs (l+_qq - l+_ss)^2.
    {
        S lhs(0);
        for (const EdgeComplementData<S>& data : edge_data) {
            S diff = S(data.arm_b.value - data.arm_a.value);
            S denom = S(data.length + data.complement_resistance.value);
            lhs += S(S(data.length * S(diff * diff)) / S(denom * denom));
        }
        S square_sum = detail::ordered_pair_sum(lap, [&](std::size_t q, std::size_t s) {
            S gap = S(pinv(q, q) - pinv(s, s));
            return S(gap * gap);
        });
        S rhs = S(S(S(4) * trace_term) - scalar_ratio<S>(1, 2) * square_sum);
        add("sum L (R_b - R_a)^2/(L+R)^2 vs trace", field.equal(lhs, rhs));
    }

    // sum_i L^3/(L+R)^2 = sum_i (1/L)(L - l+_uu + 2 l+_uv - l+_vv)^2.
    {
        S lhs(0), rhs(0);
        for (std::size_t i = 0; i < graph.edge_count(); ++i) {
            const Edge& e = graph.edge(i);
            const S& length = edge_data[i].length;
            S ratio = complement_ratio(i, true);  // L/(L+R)
            lhs += S(length * S(ratio * ratio));
            S inner = S(S(length - pinv(e.u, e.u)) + S(S(2) * pinv(e.u, e.v)) - pinv(e.v, e.v));
            rhs += S(S(inner * inner) / length);
        }
        add("sum L^3/(L+R)^2 vs per-edge squares", field.equal(lhs, rhs));
    }

    return report;
}

}  // namespace metgraph
