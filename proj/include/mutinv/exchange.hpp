#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "mutinv/errors.hpp"
#include "mutinv/int_types.hpp"
#include "mutinv/matrix.hpp"
#include "mutinv/permutation.hpp"

namespace mutinv {

// Positive integer diagonal d with d_i * b_ij = -d_j * b_ji for a certified matrix.
class Symmetrizer {
public:
    explicit Symmetrizer(std::vector<Int> d) : d_(std::move(d)) {
        for (const Int& v : d_)
            if (v <= 0) throw std::invalid_argument("symmetrizer entries must be positive");
    }

    std::size_t size() const { return d_.size(); }
    const Int& operator[](std::size_t i) const { return d_[i]; }
    const std::vector<Int>& values() const { return d_; }

    Int product() const {
        Int p = 1;
        for (const Int& v : d_) p *= v;
        return p;
    }

    bool certifies(const IntMatrix& b) const {
        if (b.size() != d_.size()) return false;
        for (std::size_t i = 0; i < d_.size(); ++i)
            for (std::size_t j = 0; j < d_.size(); ++j)
                if (d_[i] * b(i, j) + d_[j] * b(j, i) != 0) return false;
        return true;
    }

    // First pair sharing a factor, or nullopt when pairwise coprime.
    std::optional<std::pair<std::size_t, std::size_t>> coprimality_defect() const {
        for (std::size_t i = 0; i < d_.size(); ++i)
            for (std::size_t j = i + 1; j < d_.size(); ++j) {
                Int g = gcd(d_[i], d_[j]);
                if (g != 1) return std::make_pair(i, j);
            }
        return std::nullopt;
    }

    // Relabel by sigma: entry i moves to position sigma(i).
    Symmetrizer permuted(const Permutation& sigma) const {
        std::vector<Int> out(d_.size());
        for (std::size_t i = 0; i < d_.size(); ++i) out[sigma(i)] = d_[i];
        return Symmetrizer(std::move(out));
    }

    std::vector<Int> sorted_multiset() const {
        std::vector<Int> v = d_;
        std::sort(v.begin(), v.end());
        return v;
    }

    bool operator==(const Symmetrizer& o) const { return d_ == o.d_; }

private:
    std::vector<Int> d_;
};

// Validated skew-symmetrizable matrix together with its minimal symmetrizer.
// Construction goes through validate(); the invariant d_i b_ij = -d_j b_ji
// holds for every instance.
class ExchangeMatrix {
public:
    static ExchangeMatrix validate(const std::vector<std::vector<Int>>& raw) {
        return validate(IntMatrix::from_rows(raw));
    }

    static ExchangeMatrix validate(IntMatrix b) {
        const std::size_t n = b.size();

        for (std::size_t i = 0; i < n; ++i)
            if (b(i, i) != 0) throw NonzeroDiagonalError(i);

        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const Int& u = b(i, j);
                const Int& v = b(j, i);
                if (u == 0 && v == 0) continue;
                if (sign_of(u) * sign_of(v) >= 0) throw SignIncoherentError(i, j);
            }

        Symmetrizer d = minimal_symmetrizer(b, n);
        return ExchangeMatrix(std::move(b), std::move(d));
    }

    std::size_t n() const { return b_.size(); }
    const Int& entry(std::size_t i, std::size_t j) const { return b_(i, j); }
    const IntMatrix& matrix() const { return b_; }
    const Symmetrizer& symmetrizer() const { return d_; }

    bool operator==(const ExchangeMatrix& o) const { return b_ == o.b_; }

private:
    ExchangeMatrix(IntMatrix b, Symmetrizer d) : b_(std::move(b)), d_(std::move(d)) {}

    // Spanning-tree propagation of the forced ratios d_j / d_i = |b_ij| / |b_ji|
    // over each connected component of the nonzero pattern, then the unique
    // scaling to coprime positive integers. Minimality is per component: the
    // ratios pin the vector up to one rational factor, and dividing by the gcd
    // after clearing denominators picks the least positive representative.
    static Symmetrizer minimal_symmetrizer(const IntMatrix& b, std::size_t n) {
        std::vector<Rational> ratio(n);
        std::vector<char> visited(n, 0);
        std::vector<std::size_t> parent(n, SIZE_MAX);
        std::vector<Int> d(n);

        for (std::size_t root = 0; root < n; ++root) {
            if (visited[root]) continue;
            std::vector<std::size_t> component;
            std::deque<std::size_t> queue;
            visited[root] = 1;
            ratio[root] = 1;
            queue.push_back(root);
            while (!queue.empty()) {
                std::size_t u = queue.front();
                queue.pop_front();
                component.push_back(u);
                for (std::size_t v = 0; v < n; ++v) {
                    if (b(u, v) == 0) continue;
                    Rational forced = ratio[u] * Rational(abs_int(b(u, v)), abs_int(b(v, u)));
                    if (!visited[v]) {
                        visited[v] = 1;
                        ratio[v] = forced;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if (v != parent[u] && ratio[v] != forced) {
                        throw InconsistentRatiosError(conflict_cycle(parent, u, v));
                    }
                }
            }

            Int scale = 1;
            for (std::size_t u : component) scale = lcm(scale, Int(denominator(ratio[u])));
            Int g = 0;
            for (std::size_t u : component) {
                d[u] = Int(numerator(ratio[u])) * (scale / Int(denominator(ratio[u])));
                g = gcd(g, d[u]);
            }
            for (std::size_t u : component) d[u] /= g;
        }

        Symmetrizer result{std::move(d)};
        if (!result.certifies(b))
            throw InternalDisagreementError("computed symmetrizer fails to certify its matrix");
        return result;
    }

    // Cycle through the conflicting non-tree edge (u, v): up from u to the
    // lowest common ancestor, down to v, closed by the edge back to u.
    static std::vector<std::size_t> conflict_cycle(const std::vector<std::size_t>& parent,
                                                   std::size_t u, std::size_t v) {
        std::vector<std::size_t> up;
        for (std::size_t x = u; x != SIZE_MAX; x = parent[x]) up.push_back(x);
        std::vector<std::size_t> down;
        std::size_t meet = SIZE_MAX;
        for (std::size_t x = v; x != SIZE_MAX; x = parent[x]) {
            auto it = std::find(up.begin(), up.end(), x);
            if (it != up.end()) {
                meet = x;
                up.erase(it + 1, up.end());
                break;
            }
            down.push_back(x);
        }
        if (meet == SIZE_MAX) up.clear();  // disconnected parents cannot happen
        for (auto it = down.rbegin(); it != down.rend(); ++it) up.push_back(*it);
        return up;
    }

    IntMatrix b_;
    Symmetrizer d_;
};

}  // namespace mutinv
