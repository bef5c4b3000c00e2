#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wcp {

/// ceil(log2(n)) for n >= 1, with ceil_log2(1) == 0.
std::size_t ceil_log2(std::size_t n) noexcept;

/// Shift range and bucket width for one candidate level. Level 0 holds the
/// shifts 1..floor(n/2) with window x = floor(n/2). Level r >= 1 uses the
/// window x_r = max(1, floor(n/2^(r+1))) and holds the shifts p > floor(n/2)
/// for which x_r is the longest window of the sequence with x_r <= n - p.
struct LevelGeometry {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t level = 0;
    std::size_t pattern_length = 0;  // x for this level
    std::size_t lo = 1;              // first shift, inclusive
    std::size_t hi = 0;              // last shift, inclusive; hi < lo means empty
    std::size_t width = 1;           // bucket width, >= 1

    bool empty() const noexcept { return hi < lo; }
    bool contains(std::size_t i) const noexcept { return i >= lo && i <= hi; }
    std::size_t bucket_of(std::size_t i) const noexcept { return (i - lo) / width; }
    std::size_t bucket_count() const noexcept { return empty() ? 0 : (hi - lo) / width + 1; }
    std::size_t bucket_lo(std::size_t j) const noexcept { return lo + j * width; }
    std::size_t bucket_hi(std::size_t j) const noexcept;
};

LevelGeometry level_geometry(std::size_t n, std::size_t k, std::size_t level);

/// Geometries of every non-degenerate level (0, 1, ...) for a stream of length n.
std::vector<LevelGeometry> all_levels(std::size_t n, std::size_t k);

/// One compressed bucket: the anchor t (smallest inserted index) and the gcd
/// of the differences to it, or nullopt while only the anchor was inserted.
struct Bucket {
    std::size_t anchor = 0;
    std::optional<std::size_t> pi;
    std::size_t members_hint = 0;

    /// Signed view matching the -1 sentinel convention.
    std::int64_t pi_or_sentinel() const noexcept { return pi ? static_cast<std::int64_t>(*pi) : -1; }
};

/// Lazy view of {anchor + a*pi} restricted to the bucket's interval.
class BucketExpansion {
public:
    BucketExpansion(std::size_t first, std::size_t step, std::size_t count)
        : first_(first), step_(step), count_(count) {}

    std::size_t size() const noexcept { return count_; }
    std::size_t operator[](std::size_t a) const noexcept { return first_ + a * step_; }
    std::size_t front() const noexcept { return first_; }
    std::size_t back() const noexcept { return first_ + (count_ - 1) * step_; }
    std::size_t step() const noexcept { return step_; }
    bool contains(std::size_t i) const noexcept {
        return i >= first_ && (i - first_) % step_ == 0 && (i - first_) / step_ < count_;
    }

    class iterator {
    public:
        using value_type = std::size_t;
        using difference_type = std::ptrdiff_t;
        iterator() = default;
        iterator(const BucketExpansion* e, std::size_t a) : e_(e), a_(a) {}
        std::size_t operator*() const noexcept { return (*e_)[a_]; }
        iterator& operator++() noexcept { ++a_; return *this; }
        iterator operator++(int) noexcept { auto t = *this; ++a_; return t; }
        bool operator==(const iterator& o) const noexcept { return a_ == o.a_; }
    private:
        const BucketExpansion* e_ = nullptr;
        std::size_t a_ = 0;
    };

    iterator begin() const noexcept { return {this, 0}; }
    iterator end() const noexcept { return {this, count_}; }

private:
    std::size_t first_;
    std::size_t step_;
    std::size_t count_;
};

/// Compressed candidate set of one level: sparse map bucket id -> Bucket.
class CandidateBuckets {
public:
    explicit CandidateBuckets(LevelGeometry geometry) : geometry_(geometry) {}

    const LevelGeometry& geometry() const noexcept { return geometry_; }
    const std::map<std::size_t, Bucket>& buckets() const noexcept { return buckets_; }

    /// Throws OutOfRange if i is outside the level.
    void insert(std::size_t i);

    /// Throws EmptyBucket.
    BucketExpansion expand(std::size_t j) const;

    /// Restores a bucket from a snapshot.
    void restore(std::size_t j, Bucket bucket);

    /// Counts how often an update replaced pi with a value that does not
    /// divide the previous one; always 0 unless the gcd logic is broken.
    std::size_t monotonicity_violations() const noexcept { return monotone_violations_; }

private:
    LevelGeometry geometry_;
    std::map<std::size_t, Bucket> buckets_;
    std::size_t monotone_violations_ = 0;
};

/// JSON form: {"n":..,"k":..,"r":..,"buckets":[{"j":..,"anchor":..,"pi":..},..]}
/// with pi = -1 for singleton buckets.
std::string to_json(const CandidateBuckets& b);
CandidateBuckets candidates_from_json(const std::string& text);

} // namespace wcp
