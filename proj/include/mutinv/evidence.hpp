#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mutinv/invariants.hpp"

namespace mutinv {

namespace detail {

// Unbiased draw from [0, bound) via rejection; bound >= 1.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return r % bound;
}

}  // namespace detail

// Random matrix certified by d: pick a skew-symmetric integer matrix C with
// c_ij a multiple of lcm(d_i, d_j) and |c_ij| <= entry_bound * d_i * d_j, then
// b_ij = c_ij / d_i. Every matrix with symmetrizer d and entries within the
// bound arises this way, and d certifies the result by construction.
inline ExchangeMatrix sample_compatible_matrix(std::size_t n, const Symmetrizer& d,
                                               std::int64_t entry_bound, std::mt19937_64& rng) {
    if (d.size() != n) throw std::invalid_argument("symmetrizer length does not match n");
    if (entry_bound < 1) throw std::invalid_argument("entry bound must be at least 1");

    IntMatrix b(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Int step = lcm(d[i], d[j]);
            Int k_max = entry_bound * gcd(d[i], d[j]);  // = entry_bound * d_i * d_j / step
            if (k_max > Int(INT64_MAX / 4))
                throw std::invalid_argument("entry bound too large to sample");
            const std::uint64_t span = 2 * static_cast<std::uint64_t>(k_max.convert_to<std::int64_t>()) + 1;
            const std::int64_t t =
                static_cast<std::int64_t>(detail::uniform_below(rng, span)) -
                k_max.convert_to<std::int64_t>();
            Int c = t * step;
            b(i, j) = c / d[i];
            b(j, i) = -c / d[j];
        }
    return ExchangeMatrix::validate(std::move(b));
}

// Draws `samples` certified matrices and collects the distinct delta residues
// seen. Deterministic for a fixed seed.
inline std::vector<Int> binary_evidence(std::size_t n, const Symmetrizer& d, std::size_t samples,
                                        std::int64_t entry_bound, std::uint64_t rng_seed) {
    if (samples == 0) throw std::invalid_argument("sample count must be positive");
    std::mt19937_64 rng(rng_seed);
    std::vector<Int> values;
    for (std::size_t s = 0; s < samples; ++s) {
        ExchangeMatrix b = sample_compatible_matrix(n, d, entry_bound, rng);
        insert_sorted_unique(values, delta(b).residue);
    }
    return values;
}

}  // namespace mutinv
