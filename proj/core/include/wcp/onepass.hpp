#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "wcp/mismatch.hpp"
#include "wcp/report.hpp"
#include "wcp/source.hpp"
#include "wcp/symbols.hpp"
#include "wcp/twopass.hpp"

namespace wcp {

struct OnePassConfig {
    std::size_t k = 0;
    Subroutine subroutine = Subroutine::Reference;
    std::uint64_t seed = kDefaultSeed;
    /// Hamming threshold of the candidate filter; defaults to 2k.
    std::optional<std::size_t> threshold;
    bool record_witnesses = false;
};

/// Candidate window of one mid-regime level: shifts I_m = [lo, hi] matched
/// on their first 2^m symbols.
struct MidLevel {
    std::size_t m = 0;
    std::size_t lo = 0;
    std::size_t hi = 0;
    std::size_t pattern_length = 0;
    std::size_t candidates = 0;  // |T_m|
};

struct OnePassReport {
    PeriodReport report;  // periods p < n/2 whose promise holds
    /// Verified p whose promise fails; the guarantee does not cover them.
    std::vector<std::size_t> promise_violations;
    /// Set when n is even and p = n/2 verified (promise holding).
    bool half_period = false;
    std::vector<MidLevel> mid_levels;
    std::size_t small_candidates = 0;
    std::size_t symbols_read = 0;
};

/// True iff no wildcard lies in the last p symbols.
bool check_promise(const WildcardString& input, std::size_t p);
bool check_promise(const std::vector<std::size_t>& wildcards, std::size_t n, std::size_t p) noexcept;

/// Geometry of the mid-regime levels for a stream of length n.
std::vector<MidLevel> mid_levels(std::size_t n);

/// Single forward scan; the source is wrapped in a SingleScanGuard.
/// Throws TooManyWildcards once |W| exceeds k.
OnePassReport onepass_periods(SymbolSource& source, const OnePassConfig& config);
OnePassReport onepass_periods(const WildcardString& input, const OnePassConfig& config);

} // namespace wcp
