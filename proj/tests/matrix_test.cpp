#include <doctest.h>

#include <random>

#include "metgraph/error.hpp"
#include "metgraph/matrix.hpp"

using namespace metgraph;

TEST_CASE("inverse of identity is identity") {
    auto id = Matrix<Rational>::identity(3);
    CHECK(solve_inverse(id) == id);
}

TEST_CASE("inverse of a diagonal matrix") {
    Matrix<Rational> m(2);
    m(0, 0) = 2;
    m(1, 1) = 4;
    Matrix<Rational> inv = solve_inverse(m);
    CHECK(inv(0, 0) == Rational(1, 2));
    CHECK(inv(1, 1) == Rational(1, 4));
    CHECK(inv(0, 1) == 0);
    CHECK(inv(1, 0) == 0);
}

TEST_CASE("singular matrices are rejected") {
    Matrix<Rational> m(2);
    m(0, 0) = 1;
    m(0, 1) = 2;
    m(1, 0) = 2;
    m(1, 1) = 4;
    CHECK_THROWS_AS(solve_inverse(m), Error);

    Matrix<double> f(2);
    f(0, 0) = 1.0;
    f(0, 1) = 2.0;
    f(1, 0) = 2.0;
    f(1, 1) = 4.0;
    CHECK_THROWS_AS(solve_inverse(f), Error);
}

TEST_CASE("exact inverse times input gives the identity on random matrices") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 1 + rng() % 8;
        Matrix<Rational> m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Rational q(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 9));
                q.canonicalize();
                m(i, j) = q;
            }
        Matrix<Rational> inv;
        try {
            inv = solve_inverse(m);
        } catch (const Error&) {
            continue;  // singular draw
        }
        CHECK(m * inv == Matrix<Rational>::identity(n));
        CHECK(inv * m == Matrix<Rational>::identity(n));
    }
}

TEST_CASE("float inverse matches within tolerance") {
    std::mt19937 rng(11);
    Field<double> field;
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 1 + rng() % 8;
        Matrix<double> m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) = static_cast<double>(rng() % 2001) / 100.0 - 10.0;
        for (std::size_t i = 0; i < n; ++i) m(i, i) += 25.0;  // keep it comfortably regular
        Matrix<double> inv = solve_inverse(m);
        CHECK(matrices_equal(m * inv, Matrix<double>::identity(n), field));
    }
}

TEST_CASE("row pivoting handles a zero leading entry") {
    Matrix<Rational> m(2);
    m(0, 1) = 1;
    m(1, 0) = 1;
    Matrix<Rational> inv = solve_inverse(m);
    CHECK(m * inv == Matrix<Rational>::identity(2));
}
