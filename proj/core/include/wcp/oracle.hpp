#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wcp/symbols.hpp"

namespace wcp {

/// Brute-force test: every residue chain mod p holds at most one distinct
/// non-wildcard symbol. O(n) per p.
bool oracle_wildcard_period(const WildcardString& s, std::size_t p);

/// HAM(S[1, n-p], S[p+1, n]) <= k with plain symbol comparison.
bool oracle_k_period(std::span<const Symbol> s, std::size_t p, std::size_t k);

/// All p in [1, n-1] passing oracle_wildcard_period, ascending.
std::vector<std::size_t> oracle_all_periods(const WildcardString& s);

/// y x x x over {0, 1} with the first k/2 positions where y and x differ
/// replaced by wildcards.
struct HardInstance {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t gap = 0;
    std::string nu;
    std::string x;
    std::string y;
    WildcardString s;
};

/// Prefix of 1 0 11 00 111 000 ... of the given length.
std::string hard_instance_prefix(std::size_t length);

/// Requires 4 | n, even k, k/2 <= n/4 and gap in {k/2, k/2 + 1}; throws
/// InvalidParams otherwise.
HardInstance gen_hard_instance(std::size_t n, std::size_t k, std::size_t gap, std::uint64_t seed);

} // namespace wcp
