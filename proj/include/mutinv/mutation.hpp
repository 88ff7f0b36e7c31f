#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mutinv/config.hpp"
#include "mutinv/exchange.hpp"

namespace mutinv {

// Left/right factors realizing one mutation as a matrix product: mutate(B, k)
// equals left * B * right.
struct MutationFactors {
    IntMatrix left;   // identity with column k replaced: -1 at (k,k), max(0, -b_ik) at (i,k)
    IntMatrix right;  // identity with row k replaced: -1 at (k,k), max(0, b_kj) at (k,j)
};

inline MutationFactors build_mutation_factors(const ExchangeMatrix& b, std::size_t k) {
    const std::size_t n = b.n();
    if (k >= n) throw IndexOutOfRangeError(k, n);
    MutationFactors f{IntMatrix::identity(n), IntMatrix::identity(n)};
    f.left(k, k) = -1;
    f.right(k, k) = -1;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == k) continue;
        if (b.entry(i, k) < 0) f.left(i, k) = -b.entry(i, k);
        if (b.entry(k, i) > 0) f.right(k, i) = b.entry(k, i);
    }
    return f;
}

namespace detail {

inline IntMatrix mutate_entrywise(const IntMatrix& b, std::size_t k) {
    const std::size_t n = b.size();
    IntMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == k || j == k) {
                out(i, j) = -b(i, j);
            } else {
                Int v = b(i, j);
                if (b(i, k) < 0) v += -b(i, k) * b(k, j);
                if (b(k, j) > 0) v += b(i, k) * b(k, j);
                out(i, j) = v;
            }
        }
    return out;
}

}  // namespace detail

// Mutation in direction k. Computed entrywise; under oracle checks the result
// is compared against the factor-product route, and the argument's symmetrizer
// must still certify the result in every mode.
inline ExchangeMatrix mutate(const ExchangeMatrix& b, std::size_t k) {
    if (k >= b.n()) throw IndexOutOfRangeError(k, b.n());
    IntMatrix out = detail::mutate_entrywise(b.matrix(), k);

    if (config::oracle_checks()) {
        MutationFactors f = build_mutation_factors(b, k);
        if (!(f.left * b.matrix() * f.right == out))
            throw InternalDisagreementError("entrywise mutation disagrees with factor product");
    }

    ExchangeMatrix result = ExchangeMatrix::validate(std::move(out));
    if (!b.symmetrizer().certifies(result.matrix()))
        throw InternalDisagreementError("symmetrizer lost under mutation");
    if (config::oracle_checks() && !(result.symmetrizer() == b.symmetrizer()))
        throw InternalDisagreementError("minimal symmetrizer changed under mutation");
    return result;
}

using MutationSequence = std::vector<std::size_t>;

inline ExchangeMatrix mutate_sequence(const ExchangeMatrix& b, std::span<const std::size_t> seq) {
    ExchangeMatrix cur = b;
    for (std::size_t k : seq) cur = mutate(cur, k);
    return cur;
}

inline ExchangeMatrix mutate_sequence(const ExchangeMatrix& b, const MutationSequence& seq) {
    return mutate_sequence(b, std::span<const std::size_t>(seq));
}

// Simultaneous relabeling: result(sigma(i), sigma(j)) = b(i, j). The minimal
// symmetrizer follows the relabeling, which revalidation re-derives.
inline ExchangeMatrix apply_permutation(const ExchangeMatrix& b, const Permutation& sigma) {
    const std::size_t n = b.n();
    if (sigma.size() != n)
        throw InvalidPermutationError("permutation size does not match matrix dimension");
    IntMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(sigma(i), sigma(j)) = b.entry(i, j);
    ExchangeMatrix result = ExchangeMatrix::validate(std::move(out));
    if (!(result.symmetrizer() == b.symmetrizer().permuted(sigma)))
        throw InternalDisagreementError("minimal symmetrizer did not follow the relabeling");
    return result;
}

}  // namespace mutinv
