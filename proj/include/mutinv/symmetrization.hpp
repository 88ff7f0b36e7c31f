#pragma once

#include <cstddef>
#include <vector>

#include "mutinv/exchange.hpp"

namespace mutinv {

// One entry of a symmetrized matrix: sign * sqrt(radicand), with sign in
// {-1, 0, +1}. Zero is canonically (0, 0). Radicands are kept unreduced; the
// entry at (i, j) off the diagonal is sgn(b_ij) * sqrt(|b_ij * b_ji|).
struct SymEntry {
    int sign = 0;
    Int radicand = 0;

    bool operator==(const SymEntry& o) const = default;
};

// Symmetric matrix of SymEntry values, remembering which symmetrizer produced
// it (the minimal one for symmetrize, the supplied one for alt_symmetrize).
class SymmetrizedMatrix {
public:
    static SymmetrizedMatrix from_entries(std::size_t n, std::vector<SymEntry> entries,
                                          Symmetrizer d) {
        if (entries.size() != n * n || d.size() != n)
            throw std::invalid_argument("entry or symmetrizer count does not match dimension");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const SymEntry& e = entries[i * n + j];
                if (e.sign < -1 || e.sign > 1 || e.radicand < 0 ||
                    (e.sign == 0) != (e.radicand == 0))
                    throw std::invalid_argument("malformed symbolic entry");
                if (!(e == entries[j * n + i]))
                    throw std::invalid_argument("symbolic matrix is not symmetric");
            }
        return SymmetrizedMatrix(n, std::move(entries), std::move(d));
    }

    std::size_t n() const { return n_; }
    const SymEntry& entry(std::size_t i, std::size_t j) const { return s_[i * n_ + j]; }
    const Symmetrizer& symmetrizer() const { return d_; }

    SymmetrizedMatrix permuted(const Permutation& sigma) const {
        std::vector<SymEntry> out(n_ * n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                out[sigma(i) * n_ + sigma(j)] = s_[i * n_ + j];
        return SymmetrizedMatrix(n_, std::move(out), d_.permuted(sigma));
    }

    bool operator==(const SymmetrizedMatrix& o) const { return n_ == o.n_ && s_ == o.s_; }

private:
    SymmetrizedMatrix(std::size_t n, std::vector<SymEntry> s, Symmetrizer d)
        : n_(n), s_(std::move(s)), d_(std::move(d)) {}

    std::size_t n_;
    std::vector<SymEntry> s_;
    Symmetrizer d_;
};

namespace detail {

inline SymEntry off_diagonal_entry(const IntMatrix& b, std::size_t i, std::size_t j) {
    if (b(i, j) == 0) return {};
    Int rad = abs_int(b(i, j) * b(j, i));
    return {sign_of(b(i, j)), std::move(rad)};
}

}  // namespace detail

// Symmetrization with constant diagonal 2 (stored as +sqrt(4)).
inline SymmetrizedMatrix symmetrize(const ExchangeMatrix& b) {
    const std::size_t n = b.n();
    std::vector<SymEntry> s(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        s[i * n + i] = {1, 4};
        for (std::size_t j = i + 1; j < n; ++j) {
            SymEntry e = detail::off_diagonal_entry(b.matrix(), i, j);
            s[i * n + j] = e;
            s[j * n + i] = e;
        }
    }
    return SymmetrizedMatrix::from_entries(n, std::move(s), b.symmetrizer());
}

// Symmetrization with diagonal 2*d_i for a caller-supplied pairwise coprime
// symmetrizer; off-diagonal entries coincide with symmetrize().
inline SymmetrizedMatrix alt_symmetrize(const ExchangeMatrix& b, const Symmetrizer& d) {
    const std::size_t n = b.n();
    if (d.size() != n)
        throw SymmetrizerMismatchError("symmetrizer length does not match matrix dimension");
    if (auto bad = d.coprimality_defect())
        throw NotPairwiseCoprimeError(bad->first, bad->second);
    if (!d.certifies(b.matrix()))
        throw SymmetrizerMismatchError("supplied symmetrizer does not certify the matrix");

    std::vector<SymEntry> s(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        s[i * n + i] = {1, 4 * d[i] * d[i]};
        for (std::size_t j = i + 1; j < n; ++j) {
            SymEntry e = detail::off_diagonal_entry(b.matrix(), i, j);
            s[i * n + j] = e;
            s[j * n + i] = e;
        }
    }
    return SymmetrizedMatrix::from_entries(n, std::move(s), d);
}

}  // namespace mutinv
