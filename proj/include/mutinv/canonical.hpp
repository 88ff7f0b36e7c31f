#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

#include "mutinv/config.hpp"
#include "mutinv/mutation.hpp"

namespace mutinv {

// Lexicographically least relabeling of B (row-major entry order) plus a
// witness: representative == apply_permutation(input, witness).
struct CanonicalForm {
    ExchangeMatrix representative;
    Permutation witness;
};

namespace detail {

// Backtracking over placements pi, where pi[p] is the original index shown at
// position p. Extending a prefix of length d determines row-major cells only
// inside the leading d x d block, so the search prunes on the determined part
// of row 0 against the incumbent and compares fully at the leaves. First
// incumbent is B itself under the identity, so ties keep the identity witness.
class CanonicalSearch {
public:
    explicit CanonicalSearch(const IntMatrix& b)
        : b_(b), n_(b.size()), best_(b), best_pi_(n_), pi_(n_), used_(n_, 0) {
        std::iota(best_pi_.begin(), best_pi_.end(), std::size_t{0});
    }

    void run() { extend(0); }

    const IntMatrix& best() const { return best_; }

    // pi maps position -> original, so the relabeling original -> position is
    // its inverse.
    Permutation witness() const {
        std::vector<std::size_t> im(n_);
        for (std::size_t p = 0; p < n_; ++p) im[best_pi_[p]] = p;
        return Permutation(std::move(im));
    }

private:
    const Int& candidate_at(std::size_t p, std::size_t q) const {
        return b_(pi_[p], pi_[q]);
    }

    void extend(std::size_t depth) {
        if (depth == n_) {
            bool less = false;
            for (std::size_t p = 0; p < n_ && !less; ++p)
                for (std::size_t q = 0; q < n_; ++q) {
                    int c = candidate_at(p, q).compare(best_(p, q));
                    if (c > 0) return;
                    if (c < 0) { less = true; break; }
                }
            if (less) {
                for (std::size_t p = 0; p < n_; ++p)
                    for (std::size_t q = 0; q < n_; ++q) best_(p, q) = candidate_at(p, q);
                best_pi_ = pi_;
            }
            return;
        }
        for (std::size_t orig = 0; orig < n_; ++orig) {
            if (used_[orig]) continue;
            pi_[depth] = orig;
            if (row0_prefix_viable(depth + 1)) {
                used_[orig] = 1;
                extend(depth + 1);
                used_[orig] = 0;
            }
        }
    }

    // Compares the determined part of row 0 (columns < d) against the current
    // incumbent; only a strictly greater prefix can be discarded, because the
    // incumbent may still improve before this branch reaches a leaf.
    bool row0_prefix_viable(std::size_t d) const {
        for (std::size_t q = 0; q < d; ++q) {
            int c = candidate_at(0, q).compare(best_(0, q));
            if (c != 0) return c < 0;
        }
        return true;
    }

    const IntMatrix& b_;
    std::size_t n_;
    IntMatrix best_;
    std::vector<std::size_t> best_pi_;
    std::vector<std::size_t> pi_;
    std::vector<char> used_;
};

}  // namespace detail

inline CanonicalForm canonical_form(const ExchangeMatrix& b, std::size_t cap) {
    if (b.n() > cap) throw DimensionTooLargeError(b.n(), cap);
    detail::CanonicalSearch search(b.matrix());
    search.run();
    Permutation sigma = search.witness();
    ExchangeMatrix rep = apply_permutation(b, sigma);
    if (!(rep.matrix() == search.best()))
        throw InternalDisagreementError("canonical witness fails to reproduce the representative");
    return {std::move(rep), std::move(sigma)};
}

inline CanonicalForm canonical_form(const ExchangeMatrix& b) {
    return canonical_form(b, config::canonical_cap());
}

}  // namespace mutinv
