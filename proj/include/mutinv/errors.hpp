#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

// Error taxonomy. Library APIs index rows/columns from 0; messages render
// positions 1-based because they end up in front of users.

namespace mutinv {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input is not an n x n array.
class NotSquareError : public Error {
public:
    using Error::Error;
};

// b_ii != 0.
class NonzeroDiagonalError : public Error {
public:
    explicit NonzeroDiagonalError(std::size_t i)
        : Error("diagonal entry at position " + std::to_string(i + 1) + " is nonzero"), index(i) {}
    std::size_t index;
};

// Some pair b_ij, b_ji violates the opposite-sign rule.
class SignIncoherentError : public Error {
public:
    SignIncoherentError(std::size_t i, std::size_t j)
        : Error("entries (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                ") and (" + std::to_string(j + 1) + "," + std::to_string(i + 1) +
                ") are not sign-coherent"),
          row(i), col(j) {}
    std::size_t row, col;
};

// The ratio graph forces contradictory diagonal values around a cycle.
class InconsistentRatiosError : public Error {
public:
    explicit InconsistentRatiosError(std::vector<std::size_t> cycle_vertices)
        : Error(describe(cycle_vertices)), cycle(std::move(cycle_vertices)) {}
    std::vector<std::size_t> cycle;  // 0-based, in cycle order

private:
    static std::string describe(const std::vector<std::size_t>& cyc) {
        std::string s = "no positive symmetrizer exists; contradictory cycle:";
        for (std::size_t v : cyc) s += " " + std::to_string(v + 1);
        return s;
    }
};

class IndexOutOfRangeError : public Error {
public:
    IndexOutOfRangeError(std::size_t idx, std::size_t n)
        : Error("index " + std::to_string(idx + 1) + " out of range for size " + std::to_string(n)),
          index(idx), size(n) {}
    std::size_t index, size;
};

class InvalidPermutationError : public Error {
public:
    using Error::Error;
};

class DimensionTooLargeError : public Error {
public:
    DimensionTooLargeError(std::size_t n, std::size_t cap)
        : Error("dimension " + std::to_string(n) + " exceeds cap " + std::to_string(cap)),
          dimension(n), limit(cap) {}
    std::size_t dimension, limit;
};

class NotPairwiseCoprimeError : public Error {
public:
    NotPairwiseCoprimeError(std::size_t i, std::size_t j)
        : Error("symmetrizer entries at positions " + std::to_string(i + 1) + " and " +
                std::to_string(j + 1) + " share a common factor"),
          a(i), b(j) {}
    std::size_t a, b;
};

// A supplied symmetrizer does not certify the matrix.
class SymmetrizerMismatchError : public Error {
public:
    using Error::Error;
};

// Symbolic determinant expansion hit a cycle whose radicand product is not a
// perfect square; carries the offending permutation (0-based images).
class NotPerfectSquareError : public Error {
public:
    explicit NotPerfectSquareError(std::vector<std::size_t> images)
        : Error(describe(images)), permutation(std::move(images)) {}
    std::vector<std::size_t> permutation;

private:
    static std::string describe(const std::vector<std::size_t>& im) {
        std::string s = "radicand product is not a perfect square for permutation:";
        for (std::size_t v : im) s += " " + std::to_string(v + 1);
        return s;
    }
};

// Two supposedly equivalent computations disagreed; always a bug.
class InternalDisagreementError : public Error {
public:
    using Error::Error;
};

// An invariant changed under mutation; carries the offending step.
class InvariantViolationError : public Error {
public:
    InvariantViolationError(std::string matrix_text, std::size_t direction, std::string what_failed)
        : Error("invariant changed under mutation in direction " + std::to_string(direction + 1) +
                ": " + what_failed + "\nat matrix:\n" + matrix_text),
          matrix(std::move(matrix_text)), k(direction) {}
    std::string matrix;
    std::size_t k;
};

class PreconditionViolatedError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace mutinv
