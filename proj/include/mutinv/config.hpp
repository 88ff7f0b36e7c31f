#pragma once

#include <cstddef>

#include "mutinv/int_types.hpp"

namespace mutinv::config {

// Cross-checking of redundant computation routes (mutation factor product,
// symbolic expansion vs the integer fast path). On by default in debug
// builds; flip at runtime for benchmarking or long explorations.
inline bool& oracle_checks() {
#ifdef NDEBUG
    static bool enabled = false;
#else
    static bool enabled = true;
#endif
    return enabled;
}

// Dimension cap for the factorial-time canonical form search.
inline std::size_t& canonical_cap() {
    static std::size_t cap = 8;
    return cap;
}

// Entry magnitude beyond which the explorer prunes a branch.
inline Int default_magnitude_limit() { return pow10(60); }

}  // namespace mutinv::config
