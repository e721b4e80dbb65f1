#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "metgraph/error.hpp"
#include "metgraph/scalar.hpp"

namespace metgraph {

/// Dense square matrix over a scalar backend. Row-major storage; the
/// row/column index is the graph's vertex ordering wherever a matrix is
/// derived from a graph.
template <class S>
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t order) : n_(order), a_(order * order, S(0)) {}

    static Matrix identity(std::size_t order) {
        Matrix m(order);
        for (std::size_t i = 0; i < order; ++i) m(i, i) = S(1);
        return m;
    }

    static Matrix constant(std::size_t order, const S& value) {
        Matrix m(order);
        for (auto& x : m.a_) x = value;
        return m;
    }

    std::size_t order() const { return n_; }

    S& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    Matrix operator+(const Matrix& o) const {
        Matrix r(n_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = S(a_[k] + o.a_[k]);
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        Matrix r(n_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = S(a_[k] - o.a_[k]);
        return r;
    }

    Matrix operator*(const Matrix& o) const {
        Matrix r(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t k = 0; k < n_; ++k) {
                const S& aik = (*this)(i, k);
                for (std::size_t j = 0; j < n_; ++j) r(i, j) += S(aik * o(k, j));
            }
        return r;
    }

    Matrix scaled(const S& factor) const {
        Matrix r(n_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = S(a_[k] * factor);
        return r;
    }

    S trace() const {
        S t(0);
        for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    bool operator==(const Matrix& o) const { return n_ == o.n_ && a_ == o.a_; }

private:
    std::size_t n_ = 0;
    std::vector<S> a_;
};

template <class S>
bool matrices_equal(const Matrix<S>& a, const Matrix<S>& b, const Field<S>& field) {
    if (a.order() != b.order()) return false;
    for (std::size_t i = 0; i < a.order(); ++i)
        for (std::size_t j = 0; j < a.order(); ++j)
            if (!field.equal(a(i, j), b(i, j))) return false;
    return true;
}

namespace detail {

/// Fraction-free (Bareiss) elimination. The input is cleared of
/// denominators first so every intermediate value is an integer minor;
/// the only rational divisions happen when the final entries are formed.
inline Matrix<Rational> inverse_bareiss(const Matrix<Rational>& m) {
    const std::size_t n = m.order();
    if (n == 0) return Matrix<Rational>(0);

    Integer den_lcm(1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), m(i, j).get_den_mpz_t());

    // Augmented [den_lcm * m | I] over the integers.
    const std::size_t w = 2 * n;
    std::vector<Integer> aug(n * w);
    auto at = [&](std::size_t i, std::size_t j) -> Integer& { return aug[i * w + j]; };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            at(i, j) = m(i, j).get_num() * Integer(den_lcm / m(i, j).get_den());
        at(i, n + i) = 1;
    }

    Integer prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pivot_row = k;
        while (pivot_row < n && at(pivot_row, k) == 0) ++pivot_row;
        if (pivot_row == n) throw Error("matrix is singular");
        if (pivot_row != k)
            for (std::size_t j = 0; j < w; ++j) std::swap(at(k, j), at(pivot_row, j));

        const Integer pivot = at(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < w; ++j) {
                Integer t = at(i, j) * pivot - at(i, k) * at(k, j);
                mpz_divexact(at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            at(i, k) = 0;
        }
        prev = pivot;
    }
    const Integer det = at(n - 1, n - 1);  // up to the sign of the row swaps
    if (det == 0) throw Error("matrix is singular");

    // Back substitution, kept integral: z = det * solution is integer-valued
    // (Cramer), so each division below is exact.
    Matrix<Rational> inv(n);
    std::vector<Integer> z(n);
    for (std::size_t c = 0; c < n; ++c) {
        z[n - 1] = at(n - 1, n + c);
        for (std::size_t ii = n - 1; ii-- > 0;) {
            Integer acc = det * at(ii, n + c);
            for (std::size_t j = ii + 1; j < n; ++j) acc -= at(ii, j) * z[j];
            mpz_divexact(z[ii].get_mpz_t(), acc.get_mpz_t(), at(ii, ii).get_mpz_t());
        }
        for (std::size_t i = 0; i < n; ++i) {
            Rational entry(Integer(den_lcm * z[i]), det);
            entry.canonicalize();
            inv(i, c) = entry;
        }
    }
    return inv;
}

/// Partially pivoted LU factorization with per-column solves.
inline Matrix<double> inverse_lu(const Matrix<double>& m) {
    const std::size_t n = m.order();
    if (n == 0) return Matrix<double>(0);

    Matrix<double> lu = m;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot_row = k;
        double best = std::fabs(lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            double cand = std::fabs(lu(i, k));
            if (cand > best) {
                best = cand;
                pivot_row = i;
            }
        }
        if (best == 0.0) throw Error("matrix is singular");
        if (pivot_row != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(pivot_row, j));
            std::swap(perm[k], perm[pivot_row]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            lu(i, k) /= lu(k, k);
            const double f = lu(i, k);
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
        }
    }

    Matrix<double> inv(n);
    std::vector<double> x(n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t i = 0; i < n; ++i) x[i] = perm[i] == c ? 1.0 : 0.0;
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) x[i] -= lu(i, j) * x[j];
        for (std::size_t ii = n; ii-- > 0;) {
            for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= lu(ii, j) * x[j];
            x[ii] /= lu(ii, ii);
        }
        for (std::size_t i = 0; i < n; ++i) inv(i, c) = x[i];
    }
    return inv;
}

}  // namespace detail

/// Dense inverse. Exact backend: fraction-free elimination; float backend:
/// partially pivoted LU. Throws Error on a singular input.
inline Matrix<Rational> solve_inverse(const Matrix<Rational>& m) {
    return detail::inverse_bareiss(m);
}

inline Matrix<double> solve_inverse(const Matrix<double>& m) {
    return detail::inverse_lu(m);
}

}  // namespace metgraph
