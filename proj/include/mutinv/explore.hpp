#pragma once

#include <cstddef>
#include <exception>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "mutinv/canonical.hpp"
#include "mutinv/invariants.hpp"

namespace mutinv {

struct ExploreOptions {
    std::size_t max_depth = 6;
    std::size_t max_nodes = 100000;
    unsigned jobs = 1;
    Int magnitude_limit = config::default_magnitude_limit();
};

// One canonical representative in a mutation class.
struct ClassMember {
    ExchangeMatrix canonical;
    std::size_t depth;
    Int delta_residue;
    std::optional<Int> delta_prime_residue;
};

struct MutationClassReport {
    std::size_t member_count = 0;
    std::vector<Int> delta_values;        // sorted distinct; singleton unless something is broken
    std::vector<Int> delta_prime_values;  // empty when the minimal symmetrizer is not pairwise coprime
    bool complete = false;
    std::size_t depth_reached = 0;
    Int max_entry_seen = 0;
    std::size_t magnitude_pruned = 0;
    std::size_t expanded = 0;
};

struct ExploreResult {
    ExchangeMatrix seed;
    std::vector<ClassMember> members;  // discovery (BFS) order
    std::size_t expanded = 0;          // members[0..expanded) have had all directions applied
    MutationClassReport report;
};

namespace detail {

struct ExpansionSlot {
    bool pruned = false;
    std::optional<ExchangeMatrix> canonical;
    Int max_abs;
};

// Expands members[from, to) in parallel, one slot per (node, direction), so
// the merge can run in a fixed order no matter how many threads ran.
inline std::vector<ExpansionSlot> expand_batch(const std::vector<ClassMember>& members,
                                               std::size_t from, std::size_t to,
                                               const ExploreOptions& opts) {
    const std::size_t n = members[from].canonical.n();
    std::vector<ExpansionSlot> slots((to - from) * n);

    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t idx = lo; idx < hi; ++idx) {
            const ExchangeMatrix& parent = members[from + idx / n].canonical;
            const std::size_t k = idx % n;
            ExchangeMatrix child = mutate(parent, k);
            ExpansionSlot& slot = slots[idx];
            slot.max_abs = child.matrix().max_abs_entry();
            if (slot.max_abs > opts.magnitude_limit) {
                slot.pruned = true;
                continue;
            }
            slot.canonical = canonical_form(child).representative;
        }
    };

    const std::size_t total = slots.size();
    const unsigned jobs = std::max(1u, opts.jobs);
    if (jobs == 1 || total < 2) {
        work(0, total);
        return slots;
    }

    const std::size_t chunk = (total + jobs - 1) / jobs;
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(jobs);
    for (unsigned t = 0; t < jobs; ++t) {
        const std::size_t lo = std::min(total, t * chunk);
        const std::size_t hi = std::min(total, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, t, lo, hi] {
            try {
                work(lo, hi);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return slots;
}

class ClassExplorer {
public:
    ClassExplorer(ExchangeMatrix seed, const ExploreOptions& opts)
        : opts_(opts), result_{std::move(seed), {}, 0, {}} {
        if (opts.max_depth == 0 || opts.max_nodes == 0)
            throw std::invalid_argument("exploration budgets must be positive");
    }

    // Fresh exploration: the class map starts from the canonical seed.
    ExploreResult run() {
        CanonicalForm cf = canonical_form(result_.seed);
        add_root(std::move(cf.representative));
        return finish();
    }

    // Continuation from a previously dumped state. Members must be in BFS
    // order with the first `expanded` of them fully expanded; every matrix is
    // revalidated and its stored residues rechecked.
    ExploreResult resume(std::vector<ClassMember> members, std::size_t expanded) {
        if (members.empty()) return run();
        if (expanded > members.size())
            throw ParseError("dump claims more expanded nodes than members");
        track_delta_prime_ = !members[0].canonical.symmetrizer().coprimality_defect().has_value();
        for (std::size_t i = 0; i < members.size(); ++i) {
            const ClassMember& m = members[i];
            if (i > 0 && m.depth < members[i - 1].depth)
                throw ParseError("dump members are not in breadth-first order");
            if (config::oracle_checks() &&
                !(canonical_form(m.canonical).representative == m.canonical))
                throw ParseError("dump member " + std::to_string(i + 1) + " is not canonical");
            if (delta(m.canonical).residue != m.delta_residue)
                throw ParseError("dump member " + std::to_string(i + 1) +
                                 " fails its recorded delta residue");
            if (track_delta_prime_ != m.delta_prime_residue.has_value() ||
                (m.delta_prime_residue &&
                 delta_prime(m.canonical).residue != *m.delta_prime_residue))
                throw ParseError("dump member " + std::to_string(i + 1) +
                                 " fails its recorded delta-prime residue");
            if (!index_.emplace(m.canonical.matrix().key(), i).second)
                throw ParseError("dump contains a duplicate member");
            insert_sorted_unique(result_.report.delta_values, m.delta_residue);
            if (m.delta_prime_residue) insert_sorted_unique(result_.report.delta_prime_values, *m.delta_prime_residue);
            if (m.canonical.matrix().max_abs_entry() > result_.report.max_entry_seen)
                result_.report.max_entry_seen = m.canonical.matrix().max_abs_entry();
        }
        result_.members = std::move(members);
        result_.expanded = expanded;
        return finish();
    }

private:
    void add_root(ExchangeMatrix canonical) {
        track_delta_prime_ = !canonical.symmetrizer().coprimality_defect().has_value();
        ClassMember root{std::move(canonical), 0, 0, std::nullopt};
        root.delta_residue = delta(root.canonical).residue;
        if (track_delta_prime_) root.delta_prime_residue = delta_prime(root.canonical).residue;
        insert_sorted_unique(result_.report.delta_values, root.delta_residue);
        if (root.delta_prime_residue)
            insert_sorted_unique(result_.report.delta_prime_values, *root.delta_prime_residue);
        result_.report.max_entry_seen = root.canonical.matrix().max_abs_entry();
        index_.emplace(root.canonical.matrix().key(), 0);
        result_.members.push_back(std::move(root));
    }

    ExploreResult finish() {
        auto& members = result_.members;
        bool budget_refused = false;

        while (result_.expanded < members.size() && !budget_refused) {
            const std::size_t start = result_.expanded;
            const std::size_t depth = members[start].depth;
            if (depth >= opts_.max_depth) break;
            std::size_t level_end = start;
            while (level_end < members.size() && members[level_end].depth == depth) ++level_end;

            const std::size_t n = members[start].canonical.n();
            std::vector<detail::ExpansionSlot> slots =
                detail::expand_batch(members, start, level_end, opts_);

            for (std::size_t node = start; node < level_end && !budget_refused; ++node) {
                for (std::size_t k = 0; k < n; ++k) {
                    detail::ExpansionSlot& slot = slots[(node - start) * n + k];
                    if (slot.max_abs > result_.report.max_entry_seen)
                        result_.report.max_entry_seen = slot.max_abs;
                    if (slot.pruned) {
                        ++result_.report.magnitude_pruned;
                        continue;
                    }
                    std::string key = slot.canonical->matrix().key();
                    if (index_.contains(key)) continue;
                    if (members.size() >= opts_.max_nodes) {
                        budget_refused = true;
                        break;
                    }
                    ClassMember child{std::move(*slot.canonical), depth + 1, 0, std::nullopt};
                    child.delta_residue = delta(child.canonical).residue;
                    if (child.delta_residue != members[0].delta_residue)
                        throw InvariantViolationError(members[node].canonical.matrix().to_text(), k,
                                                      "delta residue " + child.delta_residue.str() +
                                                          " differs from " +
                                                          members[0].delta_residue.str());
                    if (track_delta_prime_) {
                        child.delta_prime_residue = delta_prime(child.canonical).residue;
                        if (*child.delta_prime_residue != *members[0].delta_prime_residue)
                            throw InvariantViolationError(
                                members[node].canonical.matrix().to_text(), k,
                                "delta-prime residue " + child.delta_prime_residue->str() +
                                    " differs from " + members[0].delta_prime_residue->str());
                    }
                    insert_sorted_unique(result_.report.delta_values, child.delta_residue);
                    if (child.delta_prime_residue)
                        insert_sorted_unique(result_.report.delta_prime_values, *child.delta_prime_residue);
                    index_.emplace(std::move(key), members.size());
                    members.push_back(std::move(child));
                }
                if (!budget_refused) result_.expanded = node + 1;
            }
        }

        auto& rep = result_.report;
        rep.member_count = members.size();
        rep.expanded = result_.expanded;
        rep.depth_reached = members.back().depth;
        rep.complete =
            !budget_refused && rep.magnitude_pruned == 0 && result_.expanded == members.size();
        return std::move(result_);
    }

    ExploreOptions opts_;
    ExploreResult result_;
    std::map<std::string, std::size_t> index_;
    bool track_delta_prime_ = false;
};

}  // namespace detail

// Breadth-first enumeration of the mutation class of `seed` up to canonical
// relabeling, bounded by depth, node count, and entry magnitude. Every
// accepted member has its invariants compared against the seed's; a mismatch
// throws InvariantViolationError rather than producing a report.
inline ExploreResult explore(const ExchangeMatrix& seed, const ExploreOptions& opts = {}) {
    return detail::ClassExplorer(seed, opts).run();
}

// Continues an exploration from dumped members; `expanded` says how many of
// them (prefix in BFS order) were already fully expanded.
inline ExploreResult explore_resume(const ExchangeMatrix& seed, std::vector<ClassMember> members,
                                    std::size_t expanded, const ExploreOptions& opts = {}) {
    return detail::ClassExplorer(seed, opts).resume(std::move(members), expanded);
}

}  // namespace mutinv
