#pragma once

#include <algorithm>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mutinv {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline int sign_of(const Int& x) { return x.sign(); }

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

// Remainder normalized into [0, m), m > 0.
inline Int mod_floor(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

// Exact integer square root. Returns true and sets root iff x is a perfect square.
inline bool try_isqrt(const Int& x, Int& root) {
    if (x < 0) return false;
    if (x == 0) { root = 0; return true; }
    Int rem;
    root = sqrt(x, rem);
    return rem == 0;
}

inline Int pow10(unsigned e) {
    Int v = 1;
    for (unsigned i = 0; i < e; ++i) v *= 10;
    return v;
}

// Keeps `values` sorted and duplicate-free.
inline void insert_sorted_unique(std::vector<Int>& values, const Int& v) {
    auto it = std::lower_bound(values.begin(), values.end(), v);
    if (it == values.end() || *it != v) values.insert(it, v);
}

}  // namespace mutinv
