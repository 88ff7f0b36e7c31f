#pragma once

#include <cstddef>
#include <vector>

#include "mutinv/config.hpp"
#include "mutinv/determinant.hpp"
#include "mutinv/expansion.hpp"
#include "mutinv/symmetrization.hpp"

namespace mutinv {

// Residue of the symmetrized determinant: residue = raw_det mod modulus,
// normalized into [0, modulus).
struct DeltaValue {
    Int residue;
    Int modulus;
    Int raw_det;

    bool operator==(const DeltaValue& o) const = default;
};

namespace detail {

/*
 * Integer companion of a symmetrized matrix. Conjugating the symmetrization by
 * diag(sqrt(d_i)) rescales each off-diagonal pair so that both entries become
 * integers carrying the sign of the upper entry of B:
 *     G_ij = -b_ji,  G_ji = b_ij   (i < j),
 * while the diagonal (2, or 2 d_i for the alternative form) is untouched.
 * Similar matrices share a determinant, so det of the symbolic matrix equals
 * det_exact of this integer one. Note G_ij * G_ji = |b_ij b_ji|, matching the
 * radicands of the symbolic entries.
 */
inline IntMatrix symmetrization_companion(const IntMatrix& b, const std::vector<Int>& diagonal) {
    const std::size_t n = b.size();
    IntMatrix g(n);
    for (std::size_t i = 0; i < n; ++i) {
        g(i, i) = diagonal[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            g(i, j) = -b(j, i);
            g(j, i) = b(i, j);
        }
    }
    return g;
}

inline void check_against_expansion(const Int& det, const SymmetrizedMatrix& s) {
    if (s.n() <= 8 && config::oracle_checks()) {
        Int oracle = sym_det_expansion(s);
        if (oracle != det)
            throw InternalDisagreementError("companion determinant " + det.str() +
                                            " disagrees with symbolic expansion " + oracle.str());
    }
}

}  // namespace detail

// Residue mod 4 of det of the symmetrization with diagonal 2.
inline DeltaValue delta(const ExchangeMatrix& b) {
    std::vector<Int> diagonal(b.n(), Int(2));
    Int det = det_exact(detail::symmetrization_companion(b.matrix(), diagonal));
    detail::check_against_expansion(det, symmetrize(b));
    return {mod_floor(det, 4), 4, det};
}

// Residue mod 4 * prod(d_i) of det of the alternative symmetrization for a
// pairwise coprime certifying d. The raw determinant is always a multiple of
// prod(d_i); that divisibility is asserted on every call.
inline DeltaValue delta_prime(const ExchangeMatrix& b, const Symmetrizer& d) {
    SymmetrizedMatrix s = alt_symmetrize(b, d);  // validates d
    std::vector<Int> diagonal(b.n());
    for (std::size_t i = 0; i < b.n(); ++i) diagonal[i] = 2 * d[i];
    Int det = det_exact(detail::symmetrization_companion(b.matrix(), diagonal));
    detail::check_against_expansion(det, s);
    Int prod = d.product();
    if (det % prod != 0)
        throw InternalDisagreementError("determinant " + det.str() +
                                        " is not divisible by the symmetrizer product " + prod.str());
    return {mod_floor(det, 4 * prod), 4 * prod, det};
}

inline DeltaValue delta_prime(const ExchangeMatrix& b) {
    return delta_prime(b, b.symmetrizer());
}

// Subtracts 2a * (E_ij + E_ji) with a = eps * sqrt(|b_ij * b_ji|) from the
// symmetrized matrix and checks det stays congruent mod 4. The perturbed
// (i, j) entry gains a second symbolic term, so this exercises the multi-term
// expansion route. Precondition: d_i b_ij = -d_j b_ji for the symmetrizer
// carried by s; without that relation the cycle products need not stay square.
inline bool perturbation_congruence_check(const SymmetrizedMatrix& s, std::size_t i, std::size_t j,
                                          const Int& eps, const Int& b_ij, const Int& b_ji,
                                          std::size_t cap = kExpansionCap) {
    const std::size_t n = s.n();
    if (i >= n) throw IndexOutOfRangeError(i, n);
    if (j >= n) throw IndexOutOfRangeError(j, n);
    if (i == j) throw PreconditionViolatedError("perturbation requires two distinct positions");
    const Symmetrizer& d = s.symmetrizer();
    if (d[i] * b_ij + d[j] * b_ji != 0)
        throw PreconditionViolatedError(
            "perturbation at (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
            ") breaks the symmetrizer relation d_i b_ij = -d_j b_ji");

    detail::TermTable base = detail::term_table(s);
    Int det_plain = detail::symbolic_det(n, base, cap);

    Int radicand = abs_int(b_ij * b_ji);
    if (!eps.is_zero() && !radicand.is_zero()) {
        Int coeff = Int(-2) * eps;
        base[i * n + j].push_back({coeff, radicand});
        base[j * n + i].push_back({coeff, radicand});
    }
    Int det_perturbed = detail::symbolic_det(n, base, cap);

    return mod_floor(det_plain, 4) == mod_floor(det_perturbed, 4);
}

}  // namespace mutinv
