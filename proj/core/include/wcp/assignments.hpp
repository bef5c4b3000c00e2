#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "wcp/source.hpp"
#include "wcp/symbols.hpp"

namespace wcp {

/// Value forced on a wildcard by a candidate period: a concrete symbol, or
/// Free when the wildcard's whole residue chain consists of wildcards.
struct Assignment {
    Symbol symbol{};
    bool free = false;

    static Assignment make_free() noexcept { return {Symbol{}, true}; }
    friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// The candidates of one bucket: t, t+pi, ..., t+a*pi.
struct BucketRef {
    std::size_t level = 0;
    std::size_t bucket = 0;
    std::size_t anchor = 0;
    std::size_t step = 1;   // pi, or 1 for a singleton bucket
    std::size_t steps = 0;  // a, so the largest candidate is anchor + a*step

    std::size_t last() const noexcept { return anchor + steps * step; }
    bool contains(std::size_t r) const noexcept {
        return r >= anchor && (r - anchor) % step == 0 && (r - anchor) / step <= steps;
    }
};

/// Symbols sampled along an arithmetic progression of positions, stored as
/// runs of equal values. Wildcard samples are not stored; a run may span
/// them, since lookups never target wildcard positions.
class RecordedChain {
public:
    RecordedChain() = default;
    RecordedChain(std::size_t first, std::size_t step, std::size_t count)
        : first_(first), step_(step), count_(count) {}

    std::size_t first() const noexcept { return first_; }
    std::size_t step() const noexcept { return step_; }
    std::size_t count() const noexcept { return count_; }
    std::size_t runs() const noexcept { return runs_.size(); }

    /// Positions must be recorded in increasing order.
    void record(std::size_t position, Symbol s);
    std::optional<Symbol> lookup(std::size_t position) const;

private:
    struct Run {
        std::size_t first_index;
        std::size_t last_index;
        Symbol value;
    };

    std::size_t first_ = 0;
    std::size_t step_ = 1;
    std::size_t count_ = 0;
    std::vector<Run> runs_;
};

/// Per-bucket record of the symbols at w - r and w + r for every wildcard w
/// and every candidate r of the bucket (one left and one right chain per w),
/// plus the few farther samples w -/+ m*r needed when w -/+ r is itself a
/// wildcard. Filled by one left-to-right scan.
class AssignmentTable {
public:
    AssignmentTable(std::size_t n, std::vector<std::size_t> wildcards);

    std::size_t n() const noexcept { return n_; }
    const std::vector<std::size_t>& wildcards() const noexcept { return wildcards_; }

    /// Registers a bucket before the scan; returns its handle.
    std::size_t add_bucket(const BucketRef& bucket);

    /// Feeds the symbol at `position`; positions must arrive as 1, 2, ..., n.
    void observe(std::size_t position, Symbol s);

    /// Throws NotAWildcard if w is not in W and OutOfRange if r is not a
    /// candidate of the bucket. Nearest non-wildcard wins; ties go left.
    Assignment resolve(std::size_t handle, std::size_t w, std::size_t r) const;

    /// Stored entries (chain runs plus single samples) of one bucket / overall.
    std::size_t entries(std::size_t handle) const;
    std::size_t entries() const;

    std::size_t bucket_count() const noexcept { return buckets_.size(); }
    const BucketRef& bucket(std::size_t handle) const { return buckets_.at(handle).ref; }

private:
    struct Sample {
        std::size_t position;
        std::optional<Symbol> value;
    };
    struct PerBucket {
        BucketRef ref;
        std::vector<RecordedChain> left;   // indexed like wildcards_
        std::vector<RecordedChain> right;
        std::vector<Sample> extra;         // sorted by position
    };
    struct Cursor {
        std::size_t next;
        std::size_t bucket;
        std::uint32_t slot;  // wildcard index, or extra-sample index
        std::uint8_t kind;   // 0 left chain, 1 right chain, 2 extra sample
        std::size_t remaining;
        std::size_t step;
        bool operator>(const Cursor& o) const noexcept { return next > o.next; }
    };

    bool is_wildcard_position(std::size_t pos) const noexcept;
    std::optional<std::size_t> walk(std::size_t w, std::size_t r, bool leftward) const;
    std::optional<Symbol> sampled(const PerBucket& b, std::size_t w_index, std::size_t pos, std::size_t r,
                                  bool leftward) const;
    void schedule(std::size_t handle);

    std::size_t n_;
    std::vector<std::size_t> wildcards_;
    std::vector<PerBucket> buckets_;
    std::priority_queue<Cursor, std::vector<Cursor>, std::greater<>> cursors_;
    std::size_t last_position_ = 0;
};

/// Runs the table's sampling scan over a whole source.
void record_context(AssignmentTable& table, SymbolSource& source);

} // namespace wcp
