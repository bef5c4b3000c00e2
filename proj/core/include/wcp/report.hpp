#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "wcp/symbols.hpp"

namespace wcp {

/// Wildcard values under which a reported period verified, one per
/// wildcard position.
struct PeriodWitness {
    std::size_t period = 0;
    std::vector<std::pair<std::size_t, Symbol>> assignment;
};

/// Space and work counters reported by the period engines.
struct SpaceStats {
    std::size_t fingerprints_stored = 0;
    std::size_t assignment_entries = 0;
    std::size_t buckets_nonempty = 0;
    std::size_t kmismatch_space_words = 0;
    std::size_t candidates_checked = 0;
    /// Buckets whose block chain outgrew 128 k^2 ceil(log n) + 1 runs.
    std::size_t cap_overflows = 0;
    /// Largest per-bucket assignment entry count, and how many buckets
    /// exceeded 256 k^2 ceil(log n) + k entries.
    std::size_t max_bucket_assignment_entries = 0;
    std::size_t assignment_bound_violations = 0;
};

struct PeriodReport {
    std::size_t n = 0;
    std::size_t k_found = 0;
    std::vector<std::size_t> periods;  // sorted, within [1, n-1]
    std::optional<std::size_t> smallest;
    SpaceStats stats;
    /// Filled only when the engine is asked to record witnesses.
    std::vector<PeriodWitness> witnesses;
};

} // namespace wcp
