#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mutinv/errors.hpp"
#include "mutinv/int_types.hpp"

namespace mutinv {

// Dense square matrix over arbitrary-precision integers. Row-major, 0-based.
class IntMatrix {
public:
    explicit IntMatrix(std::size_t n) : n_(n), a_(n * n) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    // Builds from nested rows, rejecting ragged or non-square input.
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows) {
        const std::size_t n = rows.size();
        IntMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (rows[i].size() != n)
                throw NotSquareError("row " + std::to_string(i + 1) + " has " +
                                     std::to_string(rows[i].size()) + " entries, expected " +
                                     std::to_string(n));
            for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t size() const { return n_; }

    Int& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    bool operator==(const IntMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }

    IntMatrix operator*(const IntMatrix& o) const {
        IntMatrix r(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t k = 0; k < n_; ++k) {
                const Int& aik = (*this)(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < n_; ++j) r(i, j) += aik * o(k, j);
            }
        return r;
    }

    // Row-major lexicographic comparison; matrices must have equal size.
    int compare(const IntMatrix& o) const {
        for (std::size_t t = 0; t < a_.size(); ++t) {
            if (a_[t] < o.a_[t]) return -1;
            if (a_[t] > o.a_[t]) return 1;
        }
        return 0;
    }

    Int max_abs_entry() const {
        Int m = 0;
        for (const Int& v : a_)
            if (abs_int(v) > m) m = abs_int(v);
        return m;
    }

    // Plain text form: dimension line, then one line per row.
    std::string to_text() const {
        std::string s = std::to_string(n_) + "\n";
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                if (j) s += ' ';
                s += (*this)(i, j).str();
            }
            s += '\n';
        }
        return s;
    }

    // Compact unambiguous key for hashing/dedup.
    std::string key() const {
        std::string s = std::to_string(n_) + ":";
        for (const Int& v : a_) {
            s += v.str();
            s += ',';
        }
        return s;
    }

private:
    std::size_t n_;
    std::vector<Int> a_;
};

}  // namespace mutinv
