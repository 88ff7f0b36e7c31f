#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mutinv/explore.hpp"

namespace mutinv {

enum class VerdictKind { SameClass, ProvablyDifferent, Unknown };

// Proof that two matrices share a mutation class:
// apply_permutation(mutate_sequence(first, sequence), relabeling) == second.
struct ClassWitness {
    MutationSequence sequence;
    Permutation relabeling;
};

struct Verdict {
    VerdictKind kind;
    std::string statistic;  // which statistic separated them (ProvablyDifferent only)
    std::string detail;
    std::optional<ClassWitness> witness;  // SameClass only
};

namespace detail {

// One side of the bidirectional search: BFS over canonical representatives,
// remembering for each node the direction taken in its parent's coordinates
// and the relabeling that canonicalized the freshly mutated matrix. That is
// enough to rebuild, for any node, a sequence/relabeling pair mapping the
// original input matrix onto the node's representative.
class SideSearch {
public:
    explicit SideSearch(const ExchangeMatrix& origin) : origin_(origin) {
        CanonicalForm cf = canonical_form(origin);
        nodes_.push_back(Node{std::move(cf.representative), SIZE_MAX, 0, std::move(cf.witness), 0});
        index_.emplace(nodes_[0].canonical.matrix().key(), 0);
    }

    std::size_t size() const { return nodes_.size(); }
    const ExchangeMatrix& matrix_of(std::size_t idx) const { return nodes_[idx].canonical; }
    std::string key_of(std::size_t idx) const { return nodes_[idx].canonical.matrix().key(); }

    bool frontier_exhausted() const { return next_ == nodes_.size(); }
    std::size_t frontier_depth() const { return nodes_[next_].depth; }
    bool can_expand(std::size_t max_depth) const {
        return !frontier_exhausted() && frontier_depth() < max_depth;
    }

    std::optional<std::size_t> lookup(const std::string& key) const {
        auto it = index_.find(key);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    // Expands the oldest unexpanded node; returns indices of newly added nodes.
    std::vector<std::size_t> expand_next() {
        const std::size_t at = next_++;
        const std::size_t n = nodes_[at].canonical.n();
        std::vector<std::size_t> added;
        for (std::size_t k = 0; k < n; ++k) {
            ExchangeMatrix child = mutate(nodes_[at].canonical, k);
            CanonicalForm cf = canonical_form(child);
            std::string key = cf.representative.matrix().key();
            if (index_.contains(key)) continue;
            index_.emplace(std::move(key), nodes_.size());
            added.push_back(nodes_.size());
            nodes_.push_back(Node{std::move(cf.representative), at, k, std::move(cf.witness),
                                  nodes_[at].depth + 1});
        }
        return added;
    }

    // Sequence in origin coordinates plus relabeling rho such that the node's
    // representative equals apply_permutation(mutate_sequence(origin, seq), rho).
    std::pair<MutationSequence, Permutation> reconstruct(std::size_t idx) const {
        std::vector<std::size_t> chain;
        for (std::size_t x = idx; x != SIZE_MAX; x = nodes_[x].parent) chain.push_back(x);
        std::reverse(chain.begin(), chain.end());

        Permutation rho = nodes_[chain.front()].tau;
        MutationSequence seq;
        for (std::size_t c = 1; c < chain.size(); ++c) {
            const Node& node = nodes_[chain[c]];
            seq.push_back(rho.inverse()(node.direction));
            rho = rho.then(node.tau);
        }
        return {std::move(seq), std::move(rho)};
    }

    const ExchangeMatrix& origin() const { return origin_; }

private:
    struct Node {
        ExchangeMatrix canonical;
        std::size_t parent;
        std::size_t direction;  // k applied to the parent's representative
        Permutation tau;        // relabeling that canonicalized the mutated matrix
        std::size_t depth;
    };

    ExchangeMatrix origin_;
    std::vector<Node> nodes_;
    std::map<std::string, std::size_t> index_;
    std::size_t next_ = 0;
};

// Joins the two half-paths at a common representative. The backward half is
// replayed in reverse (mutation is an involution), with its directions carried
// through the accumulated relabeling.
inline Verdict meet_verdict(const SideSearch& forward, std::size_t f_idx, const SideSearch& backward,
                            std::size_t b_idx) {
    auto [sf, rho_f] = forward.reconstruct(f_idx);
    auto [sb, rho_b] = backward.reconstruct(b_idx);
    Permutation rho = rho_f.then(rho_b.inverse());
    Permutation rho_inv = rho.inverse();

    MutationSequence seq = std::move(sf);
    for (auto it = sb.rbegin(); it != sb.rend(); ++it) seq.push_back(rho_inv(*it));

    if (!(apply_permutation(mutate_sequence(forward.origin(), seq), rho) == backward.origin()))
        throw InternalDisagreementError("reconstructed witness fails to replay");
    return {VerdictKind::SameClass, "", "", ClassWitness{std::move(seq), std::move(rho)}};
}

inline std::string join_ints(const std::vector<Int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
    }
    return s;
}

}  // namespace detail

// Decides whether two matrices are mutation-permutation equivalent. Cheap
// separating statistics run first (dimension, minimal symmetrizer multiset,
// delta, then delta-prime when the symmetrizer allows it); only then does the
// bidirectional canonical search run under the supplied budgets. max_nodes is
// the combined node allowance across both sides.
inline Verdict distinguish(const ExchangeMatrix& b1, const ExchangeMatrix& b2,
                           const ExploreOptions& budgets = {}) {
    if (budgets.max_depth == 0 || budgets.max_nodes == 0)
        throw std::invalid_argument("search budgets must be positive");

    if (b1.n() != b2.n())
        return {VerdictKind::ProvablyDifferent, "dimension",
                std::to_string(b1.n()) + " != " + std::to_string(b2.n()), std::nullopt};

    if (b1.symmetrizer().sorted_multiset() != b2.symmetrizer().sorted_multiset())
        return {VerdictKind::ProvablyDifferent, "symmetrizer",
                "{" + detail::join_ints(b1.symmetrizer().sorted_multiset()) + "} != {" +
                    detail::join_ints(b2.symmetrizer().sorted_multiset()) + "}",
                std::nullopt};

    DeltaValue d1 = delta(b1);
    DeltaValue d2 = delta(b2);
    if (d1.residue != d2.residue)
        return {VerdictKind::ProvablyDifferent, "delta",
                d1.residue.str() + " != " + d2.residue.str() + " (mod 4)", std::nullopt};

    if (!b1.symmetrizer().coprimality_defect()) {
        DeltaValue p1 = delta_prime(b1);
        DeltaValue p2 = delta_prime(b2);
        if (p1.residue != p2.residue)
            return {VerdictKind::ProvablyDifferent, "delta_prime",
                    p1.residue.str() + " != " + p2.residue.str() + " (mod " + p1.modulus.str() + ")",
                    std::nullopt};
    }

    if (b1 == b2)
        return {VerdictKind::SameClass, "", "",
                ClassWitness{{}, Permutation::identity(b1.n())}};

    detail::SideSearch side1(b1);
    detail::SideSearch side2(b2);

    if (auto hit = side2.lookup(side1.key_of(0))) return detail::meet_verdict(side1, 0, side2, *hit);

    std::size_t total_nodes = side1.size() + side2.size();
    bool node_budget_hit = false;
    while (!node_budget_hit) {
        const bool c1 = side1.can_expand(budgets.max_depth);
        const bool c2 = side2.can_expand(budgets.max_depth);
        if (!c1 && !c2) break;

        bool pick1 = c1;
        if (c1 && c2) {
            if (side1.frontier_depth() != side2.frontier_depth())
                pick1 = side1.frontier_depth() < side2.frontier_depth();
            else
                pick1 = side1.size() <= side2.size();
        }
        detail::SideSearch& mine = pick1 ? side1 : side2;
        detail::SideSearch& other = pick1 ? side2 : side1;

        std::vector<std::size_t> added = mine.expand_next();
        total_nodes += added.size();
        for (std::size_t idx : added) {
            if (auto hit = other.lookup(mine.key_of(idx))) {
                if (pick1) return detail::meet_verdict(side1, idx, side2, *hit);
                return detail::meet_verdict(side1, *hit, side2, idx);
            }
        }
        if (total_nodes > budgets.max_nodes) node_budget_hit = true;
    }

    // A side whose frontier drained has its whole class enumerated; no meet
    // then means the other matrix's representative is provably not in it.
    if (!node_budget_hit && (side1.frontier_exhausted() || side2.frontier_exhausted()))
        return {VerdictKind::ProvablyDifferent, "class enumeration",
                "one mutation class was fully enumerated (" +
                    std::to_string(side1.size() + side2.size()) +
                    " canonical forms) without meeting the other matrix",
                std::nullopt};

    return {VerdictKind::Unknown, "",
            "no separating statistic and no meeting within depth " +
                std::to_string(budgets.max_depth) + " per side, " +
                std::to_string(budgets.max_nodes) + " nodes total",
            std::nullopt};
}

}  // namespace mutinv
