#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "wcp/candidates.hpp"
#include "wcp/mismatch.hpp"
#include "wcp/report.hpp"
#include "wcp/source.hpp"
#include "wcp/symbols.hpp"

namespace wcp {

/// What to do with a bucket whose block chain exceeds 128 k^2 ceil(log n) + 1
/// distinct runs: drop its candidates, or keep storing and verify anyway.
enum class CapPolicy { Reject, Keep };

inline constexpr std::uint64_t kDefaultSeed = 0x5eedf00dULL;

struct TwoPassConfig {
    std::size_t k = 0;
    Subroutine subroutine = Subroutine::Reference;
    std::uint64_t seed = kDefaultSeed;
    CapPolicy cap_policy = CapPolicy::Keep;
    bool record_witnesses = false;
};

/// Everything pass one leaves for pass two: the wildcard positions, the
/// alphabet and one compressed candidate set per level.
struct PassOneState {
    std::size_t n = 0;
    std::size_t k = 0;
    Alphabet alphabet;
    std::vector<std::size_t> wildcards;
    std::vector<CandidateBuckets> levels;
    std::size_t kmismatch_space_words = 0;
};

/// Pass one for periods p <= n/2 (level 0 only). Throws TooManyWildcards.
PassOneState pass_one_small(SymbolSource& source, const TwoPassConfig& config);
/// Pass one for periods p > n/2 (levels >= 1).
PassOneState pass_one_large(SymbolSource& source, const TwoPassConfig& config);
/// Both in one scan.
PassOneState pass_one(SymbolSource& source, const TwoPassConfig& config);

struct PassTwoResult {
    std::vector<std::size_t> periods;
    SpaceStats stats;
    std::vector<PeriodWitness> witnesses;
};

/// Verifies every recoverable candidate of the levels selected by the
/// functions below; the source is rewound first.
PassTwoResult pass_two(SymbolSource& source, const PassOneState& state, const TwoPassConfig& config);
PassTwoResult pass_two_small(SymbolSource& source, const PassOneState& state, const TwoPassConfig& config);
PassTwoResult pass_two_large(SymbolSource& source, const PassOneState& state, const TwoPassConfig& config);

/// Both passes over a replayable source.
PeriodReport find_wildcard_periods(SymbolSource& source, const TwoPassConfig& config);
PeriodReport find_wildcard_periods(const WildcardString& input, const TwoPassConfig& config);

/// Snapshot between passes:
/// {"schema":1,"n","k","alphabet":[bytes],"wildcards":[..],"levels":[<candidate json>..]}
std::string to_json(const PassOneState& state);
PassOneState pass_one_from_json(const std::string& text);

} // namespace wcp
