#include <doctest.h>

#include <random>

#include "metgraph/circuit.hpp"
#include "metgraph/error.hpp"
#include "random_graphs.hpp"

using namespace metgraph;

namespace {

MetrizedGraph complete_k5() {
    MetrizedGraph g;
    for (int i = 1; i <= 5; ++i) g.add_vertex(std::to_string(i));
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j) g.add_edge(i, j, Rational(1, 10));
    return g;
}

MetrizedGraph triangle(const Rational& side) {
    MetrizedGraph g;
    g.add_vertex("1");
    g.add_vertex("2");
    g.add_vertex("3");
    g.add_edge(0, 1, side);
    g.add_edge(1, 2, side);
    g.add_edge(0, 2, side);
    return g;
}

}  // namespace

TEST_CASE("resistance on K5") {
    // Closed form for a complete graph on n vertices with edge resistance
    // rho: r = 2 rho / n = 2 (1/10) / 5 = 1/25. The entry formula gives
    // 2/125 - 2(-1/250) + 2/125 = 1/25 as well.
    MetrizedGraph k5 = complete_k5();
    LaplacianPair<Rational> pair = build_pair<Rational>(k5);
    for (std::size_t p = 0; p < 5; ++p)
        for (std::size_t q = 0; q < 5; ++q) {
            if (p == q)
                CHECK(resistance(pair, p, q) == 0);
            else
                CHECK(resistance(pair, p, q) == Rational(1, 25));
        }
}

TEST_CASE("resistance of a single edge is its length") {
    MetrizedGraph seg;
    seg.add_vertex("a");
    seg.add_vertex("b");
    seg.add_edge(0, 1, Rational(7, 2));
    LaplacianPair<Rational> pair = build_pair<Rational>(seg);
    CHECK(resistance(pair, 0, 1) == Rational(7, 2));
    CHECK_THROWS_AS(resistance(pair, 0, 9), Error);
}

TEST_CASE("resistance is a metric on random graphs") {
    std::mt19937 rng(211);
    testutil::GraphShape shape;
    shape.max_vertices = 8;
    shape.max_extra_edges = 5;
    for (int trial = 0; trial < 15; ++trial) {
        auto [g, map] = optimalize(testutil::random_connected_graph(rng, shape));
        LaplacianPair<Rational> pair = build_pair<Rational>(g);
        const std::size_t n = g.vertex_count();
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) {
                Rational r = resistance(pair, p, q);
                CHECK(r == resistance(pair, q, p));
                CHECK(r >= 0);
                CHECK((r == 0) == (p == q));
                for (std::size_t s = 0; s < n; ++s)
                    CHECK(r <= resistance(pair, p, s) + resistance(pair, s, q));
            }
    }
}

TEST_CASE("voltage on K5") {
    // j_1(2,3) = l+_11 - l+_12 - l+_13 + l+_23 = 2/125 + 1/250 + 1/250 - 1/250 = 1/50.
    MetrizedGraph k5 = complete_k5();
    LaplacianPair<Rational> pair = build_pair<Rational>(k5);
    CHECK(voltage(pair, 0, 1, 2) == Rational(1, 50));
}

TEST_CASE("voltage properties on random graphs") {
    std::mt19937 rng(223);
    testutil::GraphShape shape;
    shape.max_vertices = 7;
    shape.max_extra_edges = 4;
    for (int trial = 0; trial < 15; ++trial) {
        auto [g, map] = optimalize(testutil::random_connected_graph(rng, shape));
        LaplacianPair<Rational> pair = build_pair<Rational>(g);
        const std::size_t n = g.vertex_count();
        for (std::size_t z = 0; z < n; ++z)
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y) {
                    Rational j = voltage(pair, z, x, y);
                    CHECK(j >= 0);
                    CHECK(j == voltage(pair, z, y, x));
                    if (x == z) CHECK(j == 0);
                    if (x == y) CHECK(j == resistance(pair, z, x));
                }
    }
}

TEST_CASE("complement resistance on K5, with an independent oracle") {
    MetrizedGraph k5 = complete_k5();
    LaplacianPair<Rational> pair = build_pair<Rational>(k5);
    for (std::size_t i = 0; i < k5.edge_count(); ++i) {
        // Route 1: invert r = L R/(L+R) using the full-graph pair.
        ResistanceValue<Rational> from_inversion = edge_complement_resistance(k5, pair, i);
        REQUIRE_FALSE(from_inversion.infinite);
        CHECK(from_inversion.value == Rational(1, 15));

        // Route 2 (oracle): resistance between the endpoints computed on
        // the cut graph's own pseudo-inverse.
        EdgeComplementData<Rational> reduction = two_point_reduction<Rational>(k5, i, 0);
        REQUIRE_FALSE(reduction.complement_resistance.infinite);
        CHECK(reduction.complement_resistance.value == from_inversion.value);
    }
}

TEST_CASE("complement resistance of a triangle edge is the other two sides in series") {
    Rational side(5, 3);
    MetrizedGraph tri = triangle(side);
    LaplacianPair<Rational> pair = build_pair<Rational>(tri);
    for (std::size_t i = 0; i < 3; ++i) {
        ResistanceValue<Rational> r = edge_complement_resistance(tri, pair, i);
        REQUIRE_FALSE(r.infinite);
        CHECK(r.value == 2 * side);
    }
}

TEST_CASE("a bridge has infinite complement resistance") {
    MetrizedGraph seg;
    seg.add_vertex("a");
    seg.add_vertex("b");
    seg.add_edge(0, 1, Rational(4));
    LaplacianPair<Rational> pair = build_pair<Rational>(seg);
    CHECK(edge_complement_resistance(seg, pair, 0).infinite);
}

TEST_CASE("corrupted matrix data is detected") {
    MetrizedGraph seg;
    seg.add_vertex("a");
    seg.add_vertex("b");
    seg.add_edge(0, 1, Rational(4));
    LaplacianPair<Rational> pair = build_pair<Rational>(seg);
    pair.pinv(0, 0) += 3;  // drives r(a,b) above the edge length
    CHECK_THROWS_AS(edge_complement_resistance(seg, pair, 0), Error);
}

TEST_CASE("two-point reduction of an equilateral triangle") {
    // Cut graph of edge (2,3) is the path 2-1-3: r'(2,3) = 2a and
    // r'(2,1) = r'(3,1) = a, so R_a = R_b = a and R_c = 0.
    Rational a(5);
    MetrizedGraph tri = triangle(a);
    EdgeComplementData<Rational> opposite = two_point_reduction<Rational>(tri, 1, 0);
    CHECK(opposite.arm_a.value == a);
    CHECK(opposite.arm_b.value == a);
    CHECK(opposite.arm_c == 0);
    CHECK(opposite.complement_resistance.value == 2 * a);

    // Base vertex coincides with an endpoint of the cut edge (1,2):
    // R_a = 0 and R_b carries the whole complement resistance 2a.
    EdgeComplementData<Rational> incident = two_point_reduction<Rational>(tri, 0, 0);
    CHECK(incident.arm_a.value == 0);
    CHECK(incident.arm_b.value == 2 * a);
    CHECK(incident.arm_c == 0);
}

TEST_CASE("two-point reduction applies the bridge convention") {
    MetrizedGraph seg;
    seg.add_vertex("a");
    seg.add_vertex("b");
    seg.add_edge(0, 1, Rational(1));

    EdgeComplementData<Rational> at_first = two_point_reduction<Rational>(seg, 0, 0);
    CHECK(at_first.complement_resistance.infinite);
    CHECK(at_first.arm_a.value == 0);
    CHECK_FALSE(at_first.arm_a.infinite);
    CHECK(at_first.arm_b.infinite);

    EdgeComplementData<Rational> at_second = two_point_reduction<Rational>(seg, 0, 1);
    CHECK(at_second.arm_a.infinite);
    CHECK(at_second.arm_b.value == 0);
    CHECK_FALSE(at_second.arm_b.infinite);
}

TEST_CASE("series-parallel consistency identities on random graphs") {
    // For every non-bridge edge and base vertex:
    //   r(p_i,p) = (L+R_b) R_a/(L+R) + R_c,   r(q_i,p) = (L+R_a) R_b/(L+R) + R_c,
    // and the difference identity
    //   L (R_a-R_b)^2/(L+R)^2 = (r(p_i,p) - r(q_i,p))^2 / L.
    std::mt19937 rng(227);
    testutil::GraphShape shape;
    shape.max_vertices = 7;
    shape.max_extra_edges = 5;
    for (int trial = 0; trial < 12; ++trial) {
        auto [g, map] = optimalize(testutil::random_connected_graph(rng, shape));
        LaplacianPair<Rational> pair = build_pair<Rational>(g);
        for (std::size_t i = 0; i < g.edge_count(); ++i) {
            const Edge& e = g.edge(i);
            Rational length = e.length;
            for (std::size_t p = 0; p < g.vertex_count(); ++p) {
                EdgeComplementData<Rational> data = two_point_reduction<Rational>(g, i, p);
                if (data.complement_resistance.infinite) continue;
                Rational ra = data.arm_a.value, rb = data.arm_b.value, rc = data.arm_c;
                Rational total = length + data.complement_resistance.value;
                CHECK(ra + rb == data.complement_resistance.value);
                CHECK(ra >= 0);
                CHECK(rb >= 0);
                CHECK(rc >= 0);

                Rational rp = resistance(pair, e.u, p);
                Rational rq = resistance(pair, e.v, p);
                CHECK(rp == (length + rb) * ra / total + rc);
                CHECK(rq == (length + ra) * rb / total + rc);
                CHECK(length * (ra - rb) * (ra - rb) / (total * total) ==
                      (rp - rq) * (rp - rq) / length);
            }
        }
    }
}

TEST_CASE("arm difference sum is independent of the base vertex") {
    // sum_i L (R_a - R_b)^2/(L+R)^2, bridge summands contributing their
    // limit L, takes one value for every base vertex.
    std::mt19937 rng(229);
    testutil::GraphShape shape;
    shape.max_vertices = 7;
    shape.max_extra_edges = 4;
    for (int trial = 0; trial < 10; ++trial) {
        auto [g, map] = optimalize(testutil::random_connected_graph(rng, shape));
        std::vector<EdgeReduction<Rational>> reductions;
        for (std::size_t i = 0; i < g.edge_count(); ++i)
            reductions.push_back(reduce_edge<Rational>(g, i));

        Rational reference;
        for (std::size_t p = 0; p < g.vertex_count(); ++p) {
            Rational sum(0);
            for (const EdgeReduction<Rational>& reduction : reductions) {
                EdgeComplementData<Rational> data = arms_for_base(g, reduction, p);
                if (data.complement_resistance.infinite) {
                    sum += data.length;
                    continue;
                }
                Rational diff = data.arm_a.value - data.arm_b.value;
                Rational total = data.length + data.complement_resistance.value;
                sum += data.length * diff * diff / (total * total);
            }
            if (p == 0)
                reference = sum;
            else
                CHECK(sum == reference);
        }
    }
}

TEST_CASE("cycle-rank identity counts independent cycles") {
    std::mt19937 rng(233);
    for (int trial = 0; trial < 20; ++trial) {
        auto [g, map] = optimalize(testutil::random_connected_graph(rng));
        LaplacianPair<Rational> pair = build_pair<Rational>(g);
        long rank = static_cast<long>(g.edge_count()) - static_cast<long>(g.vertex_count()) + 1;
        CHECK(cycle_rank_sum(g, pair) == Rational(rank));
    }
}

TEST_CASE("edge table reports the raw graph's edges") {
    // Two parallel 2/9 strands between 1 and 2, unit-length spokes to 3,
    // and a self-loop: every edge of this graph has density 3.
    MetrizedGraph g;
    g.add_vertex("1");
    g.add_vertex("2");
    g.add_vertex("3");
    g.add_edge(0, 2, Rational(1, 9));
    g.add_edge(1, 2, Rational(1, 9));
    g.add_edge(0, 1, Rational(2, 9));
    g.add_edge(0, 1, Rational(2, 9));
    g.add_edge(2, 2, Rational(1, 3));
    auto rows = edge_table<Rational>(g);
    REQUIRE(rows.size() == 5);
    for (const auto& row : rows) CHECK(row.density == 3);
    CHECK(rows[0].complement_resistance.value == Rational(2, 9));   // 1-3: around via 2
    CHECK(rows[2].complement_resistance.value == Rational(1, 9));   // 1-2: parallel || spokes
    CHECK(rows[4].complement_resistance.value == 0);                // loop endpoints coincide

    MetrizedGraph seg;
    seg.add_vertex("a");
    seg.add_vertex("b");
    seg.add_edge(0, 1, Rational(4));
    auto seg_rows = edge_table<Rational>(seg);
    CHECK(seg_rows[0].complement_resistance.infinite);
    CHECK(seg_rows[0].density == 0);
}
