#pragma once

#include <string>
#include <vector>

#include "metgraph/error.hpp"
#include "metgraph/graph.hpp"
#include "metgraph/matrix.hpp"

namespace metgraph {

/// Outcome of one named verification. Skipped items carry a note saying
/// why and do not count as failures.
struct CheckItem {
    std::string name;
    bool pass = false;
    bool skipped = false;
    std::string note;
};

struct CheckReport {
    std::vector<CheckItem> items;

    bool all_pass() const {
        for (const CheckItem& item : items)
            if (!item.skipped && !item.pass) return false;
        return true;
    }
};

/// The graph Laplacian L together with its Moore-Penrose pseudo-inverse,
/// over one scalar backend. Indexing follows the graph's vertex order.
template <class S>
struct LaplacianPair {
    Matrix<S> lap;
    Matrix<S> pinv;
    Field<S> field;

    std::size_t order() const { return lap.order(); }
};

/// L = D - A with adjacency weights 1/L_k. Requires an optimal vertex set
/// (no self-loops, no parallel edges); callers optimalize first. The
/// diagonal is formed as the negated off-diagonal row sum, so the result
/// depends only on the vertex ordering, never on edge input order.
template <class S>
Matrix<S> build_laplacian(const MetrizedGraph& graph) {
    if (!graph.optimal())
        throw Error("graph does not have an optimal vertex set; optimalize it first");
    const std::size_t n = graph.vertex_count();
    Matrix<S> lap(n);
    for (const Edge& e : graph.edges()) {
        S weight = S(S(1) / ScalarOps<S>::from_rational(e.length));
        lap(e.u, e.v) = S(-weight);
        lap(e.v, e.u) = S(-weight);
    }
    for (std::size_t p = 0; p < n; ++p) {
        S diag(0);
        for (std::size_t s = 0; s < n; ++s)
            if (s != p) diag -= lap(p, s);
        lap(p, p) = diag;
    }
    return lap;
}

/// Moore-Penrose pseudo-inverse of a connected graph's Laplacian via
/// L+ = (L - J/v)^-1 + J/v. A singular shift signals a disconnected or
/// malformed input.
template <class S>
Matrix<S> pseudo_inverse(const Matrix<S>& lap) {
    const std::size_t n = lap.order();
    if (n == 0) throw Error("empty matrix");
    S inv_n = scalar_ratio<S>(1, static_cast<unsigned long>(n));
    Matrix<S> shifted = lap - Matrix<S>::constant(n, inv_n);
    Matrix<S> inverse;
    try {
        inverse = solve_inverse(shifted);
    } catch (const Error&) {
        throw Error("L - J/v is singular: graph is disconnected or the matrix is not a Laplacian");
    }
    return inverse + Matrix<S>::constant(n, inv_n);
}

template <class S>
LaplacianPair<S> build_pair(const MetrizedGraph& graph, Field<S> field = {}) {
    Matrix<S> lap = build_laplacian<S>(graph);
    Matrix<S> pinv = pseudo_inverse(lap);
    return LaplacianPair<S>{std::move(lap), std::move(pinv), field};
}

namespace detail {

template <class S>
bool is_symmetric(const Matrix<S>& m, const Field<S>& field) {
    for (std::size_t i = 0; i < m.order(); ++i)
        for (std::size_t j = i + 1; j < m.order(); ++j)
            if (!field.equal(m(i, j), m(j, i))) return false;
    return true;
}

template <class S>
bool is_doubly_centered(const Matrix<S>& m, const Field<S>& field) {
    const S zero(0);
    for (std::size_t i = 0; i < m.order(); ++i) {
        S row(0), col(0);
        for (std::size_t j = 0; j < m.order(); ++j) {
            row += m(i, j);
            col += m(j, i);
        }
        if (!field.equal(row, zero) || !field.equal(col, zero)) return false;
    }
    return true;
}

}  // namespace detail

/// Structural verification of a Laplacian pair: symmetry, double
/// centering, L L+ = L+ L = I - J/v, the per-entry product identity
/// (off-diagonal -1/v, diagonal (v-1)/v), and l+_pp >= l+_pq.
template <class S>
CheckReport matrix_checks(const LaplacianPair<S>& pair) {
    const std::size_t n = pair.order();
    const Field<S>& field = pair.field;
    CheckReport report;
    auto add = [&report](std::string name, bool pass) {
        report.items.push_back(CheckItem{std::move(name), pass, false, ""});
    };

    add("L symmetric", detail::is_symmetric(pair.lap, field));
    add("L+ symmetric", detail::is_symmetric(pair.pinv, field));
    add("L doubly centered", detail::is_doubly_centered(pair.lap, field));
    add("L+ doubly centered", detail::is_doubly_centered(pair.pinv, field));

    S inv_n = scalar_ratio<S>(1, static_cast<unsigned long>(n));
    Matrix<S> centering = Matrix<S>::identity(n) - Matrix<S>::constant(n, inv_n);
    add("L L+ = I - J/v", matrices_equal(pair.lap * pair.pinv, centering, field));
    add("L+ L = I - J/v", matrices_equal(pair.pinv * pair.lap, centering, field));

    bool entry_identity = true;
    for (std::size_t p = 0; p < n && entry_identity; ++p)
        for (std::size_t q = 0; q < n && entry_identity; ++q) {
            S sum(0);
            for (std::size_t s = 0; s < n; ++s) sum += S(pair.pinv(p, s) * pair.lap(s, q));
            S expected = p == q ? S(S(1) - inv_n) : S(-inv_n);
            entry_identity = field.equal(sum, expected);
        }
    add("sum_s l+_ps l_sq = { (v-1)/v on, -1/v off } diagonal", entry_identity);

    bool dominance = true;
    for (std::size_t p = 0; p < n && dominance; ++p)
        for (std::size_t q = 0; q < n && dominance; ++q)
            dominance = field.less_equal(pair.pinv(p, q), pair.pinv(p, p));
    add("l+_pp >= l+_pq", dominance);

    return report;
}

}  // namespace metgraph
