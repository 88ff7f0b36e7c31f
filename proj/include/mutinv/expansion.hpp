#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "mutinv/errors.hpp"
#include "mutinv/symmetrization.hpp"

namespace mutinv {

inline constexpr std::size_t kExpansionCap = 10;

namespace detail {

// One summand of a symbolic entry: coeff * sqrt(radicand), radicand >= 0.
// Plain symmetrized matrices have at most one term per entry; the perturbation
// check appends a second.
struct SymTerm {
    Int coeff;
    Int radicand;
};

using TermTable = std::vector<std::vector<SymTerm>>;  // n*n slots, empty = zero entry

/*
 * Leibniz expansion of det over symbolic entries. For each permutation the
 * product of entry values factors through the permutation's cycles, and on a
 * matrix arising from a symmetrization every cycle's radicand product is a
 * perfect square, so each summand collapses to an integer. The engine takes
 * exact square roots cycle by cycle and refuses (NotPerfectSquare) if a cycle
 * fails, which on valid inputs would mean a construction bug upstream.
 *
 * Entries may hold several terms; the per-permutation product is expanded by
 * an odometer over the slots, and the cycle-wise square root is applied to
 * each expanded combination separately.
 */
inline Int symbolic_det(std::size_t n, const TermTable& terms, std::size_t cap) {
    if (cap > kExpansionCap) cap = kExpansionCap;  // hard ceiling, factorial blowup beyond it
    if (n > cap) throw DimensionTooLargeError(n, cap);
    if (n == 0) return 1;

    std::vector<std::size_t> tau(n);
    std::iota(tau.begin(), tau.end(), std::size_t{0});

    Int total = 0;
    std::vector<std::vector<std::size_t>> cycles;
    std::vector<char> seen(n);
    std::vector<std::size_t> pick(n);
    std::vector<const SymTerm*> slot_first(n);

    do {
        bool dead = false;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& cell = terms[i * n + tau[i]];
            if (cell.empty()) { dead = true; break; }
            slot_first[i] = cell.data();
        }
        if (dead) continue;

        cycles.clear();
        std::fill(seen.begin(), seen.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (seen[i]) continue;
            auto& cyc = cycles.emplace_back();
            for (std::size_t j = i; !seen[j]; j = tau[j]) {
                seen[j] = 1;
                cyc.push_back(j);
            }
        }
        const int parity = ((n - cycles.size()) % 2 == 0) ? 1 : -1;

        std::fill(pick.begin(), pick.end(), std::size_t{0});
        for (;;) {
            Int coeff_product = parity;
            for (std::size_t i = 0; i < n && coeff_product != 0; ++i)
                coeff_product *= slot_first[i][pick[i]].coeff;

            if (coeff_product != 0) {
                Int magnitude = 1;
                for (const auto& cyc : cycles) {
                    Int rad_product = 1;
                    for (std::size_t i : cyc) rad_product *= slot_first[i][pick[i]].radicand;
                    Int root;
                    if (!try_isqrt(rad_product, root))
                        throw NotPerfectSquareError(std::vector<std::size_t>(tau.begin(), tau.end()));
                    magnitude *= root;
                }
                total += coeff_product * magnitude;
            }

            std::size_t s = 0;
            while (s < n && ++pick[s] >= terms[s * n + tau[s]].size()) pick[s++] = 0;
            if (s == n) break;
        }
    } while (std::next_permutation(tau.begin(), tau.end()));

    return total;
}

inline TermTable term_table(const SymmetrizedMatrix& s) {
    const std::size_t n = s.n();
    TermTable t(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const SymEntry& e = s.entry(i, j);
            if (e.sign != 0) t[i * n + j].push_back({Int(e.sign), e.radicand});
        }
    return t;
}

}  // namespace detail

// Integer value of det of a symmetrized matrix by direct symbolic expansion.
// Factorial time; capped (default 10) because it exists to cross-check the
// fast path, not to be one.
inline Int sym_det_expansion(const SymmetrizedMatrix& s, std::size_t cap) {
    return detail::symbolic_det(s.n(), detail::term_table(s), cap);
}

inline Int sym_det_expansion(const SymmetrizedMatrix& s) {
    return sym_det_expansion(s, kExpansionCap);
}

}  // namespace mutinv
