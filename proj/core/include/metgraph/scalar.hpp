#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "metgraph/rational.hpp"

namespace metgraph {

/// Backend traits. The library's numeric code is templated on the scalar
/// type; the two supported instantiations are exact rationals and doubles.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
    static constexpr bool exact = true;
    static Rational from_rational(const Rational& r) { return r; }
    static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
    static double to_double(const Rational& x) { return x.get_d(); }
    static std::string str(const Rational& x) { return to_fraction_string(x); }
};

template <>
struct ScalarOps<double> {
    static constexpr bool exact = false;
    static double from_rational(const Rational& r) { return r.get_d(); }
    static double abs(double x) { return std::fabs(x); }
    static double to_double(double x) { return x; }
    static std::string str(double x) { return std::to_string(x); }
};

/// num/den in the backend's arithmetic (exact where the backend is).
template <class S>
S scalar_ratio(long num, unsigned long den) {
    if constexpr (ScalarOps<S>::exact) {
        Rational q(num, den);
        q.canonicalize();
        return q;
    } else {
        return static_cast<double>(num) / static_cast<double>(den);
    }
}

/// Comparison policy for a scalar backend. Exact fields compare with ==
/// (tolerance 0); the float field uses a relative threshold with an
/// absolute floor of `tolerance` so that comparisons against 0 make sense.
template <class S>
struct Field {
    S tolerance = ScalarOps<S>::exact ? S(0) : S(1e-9);

    bool equal(const S& a, const S& b) const {
        if constexpr (ScalarOps<S>::exact) {
            return a == b;
        } else {
            S scale = std::max<S>({S(1), ScalarOps<S>::abs(a), ScalarOps<S>::abs(b)});
            return ScalarOps<S>::abs(a - b) <= tolerance * scale;
        }
    }

    bool less_equal(const S& a, const S& b) const {
        if constexpr (ScalarOps<S>::exact) {
            return a <= b;
        } else {
            return a <= b || equal(a, b);
        }
    }
};

}  // namespace metgraph
