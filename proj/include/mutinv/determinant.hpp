#pragma once

#include <cstddef>
#include <utility>

#include "mutinv/matrix.hpp"

namespace mutinv {

/*
 * Exact determinant via Bareiss fraction-free elimination.
 *
 * Each sweep k rewrites the trailing block as
 *     a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev_pivot
 * where prev_pivot is the pivot of the previous sweep (1 initially). The
 * division is exact over the integers, intermediate values stay polynomial in
 * the input size, and after the last sweep the bottom-right entry is det(A)
 * up to the sign collected from row swaps. A column with no pivot available
 * means det(A) = 0.
 */
inline Int det_exact(IntMatrix a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    int sign = 1;
    Int prev_pivot = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && a(r, k) == 0) ++r;
            if (r == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(r, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev_pivot;
            a(i, k) = 0;
        }
        prev_pivot = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

}  // namespace mutinv
