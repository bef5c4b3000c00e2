#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "wcp/source.hpp"
#include "wcp/symbols.hpp"

namespace wcp {

/// The stream as a p-row matrix M[i][j] = S[(j-1)p + i]. When p does not
/// divide n the last column is short, so row i is the residue chain
/// i, i+p, i+2p, ... truncated at n.
class PeriodMatrixView {
public:
    PeriodMatrixView(std::size_t n, std::size_t p);

    std::size_t rows() const noexcept { return p_; }
    std::size_t columns() const noexcept { return (n_ + p_ - 1) / p_; }
    std::size_t row_length(std::size_t i) const;
    /// 1-based (i, j) of stream position pos.
    std::size_t row_of(std::size_t pos) const noexcept { return (pos - 1) % p_ + 1; }
    std::size_t column_of(std::size_t pos) const noexcept { return (pos - 1) / p_ + 1; }
    std::size_t position(std::size_t i, std::size_t j) const noexcept { return (j - 1) * p_ + i; }

private:
    std::size_t n_;
    std::size_t p_;
};

/// Misra-Gries summary with a fixed number of counters.
class HeavyHitters {
public:
    explicit HeavyHitters(std::size_t counters);

    void add(std::uint8_t byte);
    std::size_t largest() const noexcept;
    std::size_t total() const noexcept { return total_; }
    std::size_t counters() const noexcept { return capacity_; }

private:
    std::size_t capacity_;
    std::size_t total_ = 0;
    std::unordered_map<std::uint8_t, std::size_t> counts_;
};

/// K-minimum-values distinct-elements sketch over seeded 64-bit hashes.
class DistinctSketch {
public:
    DistinctSketch(std::size_t k, std::uint64_t seed);

    void add(std::uint8_t byte);
    double estimate() const noexcept;
    std::size_t capacity() const noexcept { return k_; }

private:
    std::size_t k_;
    std::uint64_t seed_;
    std::vector<std::uint64_t> smallest_;  // sorted, distinct
};

/// Per-row statistics; wildcards are counted but feed no estimator.
struct RowSketch {
    std::size_t symbols = 0;
    std::size_t wildcards = 0;
};

/// Sum over rows of (non-wildcard count - largest symbol frequency).
/// Throws OutOfRange unless 1 <= p <= n.
std::size_t delta_exact(const WildcardString& s, std::size_t p);

/// Deterministic estimate in [delta_p, (1 + epsilon) delta_p] using
/// ceil(1/epsilon) counters per row. Requires 0 < epsilon <= 1.
std::size_t delta_hh(SymbolSource& stream, std::size_t p, double epsilon);
std::size_t delta_hh(const WildcardString& s, std::size_t p, double epsilon);

/// Randomized estimate in [delta_p, 2 delta_p] with probability at least
/// 1 - delta. A distinct-elements sketch per row detects single-valued rows;
/// every other row contributes its length minus a majority-vote counter.
/// Requires 0 < epsilon <= 1 and 0 < delta < 1.
std::size_t delta_de(SymbolSource& stream, std::size_t p, double epsilon, double delta, std::uint64_t seed);
std::size_t delta_de(const WildcardString& s, std::size_t p, double epsilon, double delta, std::uint64_t seed);

} // namespace wcp
