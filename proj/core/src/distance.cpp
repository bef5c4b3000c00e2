#include "wcp/distance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "wcp/error.hpp"

namespace wcp {

namespace {

void require_period(std::size_t n, std::size_t p) {
    if (p < 1 || p > n)
        throw Error(ErrorCode::OutOfRange, "p=" + std::to_string(p) + " outside [1, " + std::to_string(n) + "]");
}

void require_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw Error(ErrorCode::InvalidParams, "epsilon must lie in (0, 1]");
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Boyer-Moore majority vote: L - counter lies in [f_{-1}, 2 f_{-1}].
struct MajorityVote {
    std::uint8_t candidate = 0;
    std::size_t counter = 0;

    void add(std::uint8_t byte) noexcept {
        if (counter == 0) {
            candidate = byte;
            counter = 1;
        } else if (byte == candidate) {
            ++counter;
        } else {
            --counter;
        }
    }
};

} // namespace

PeriodMatrixView::PeriodMatrixView(std::size_t n, std::size_t p) : n_(n), p_(p) { require_period(n, p); }

std::size_t PeriodMatrixView::row_length(std::size_t i) const {
    if (i < 1 || i > p_) throw Error(ErrorCode::OutOfRange, "row " + std::to_string(i));
    return (n_ - i) / p_ + 1;
}

HeavyHitters::HeavyHitters(std::size_t counters) : capacity_(std::max<std::size_t>(1, counters)) {}

void HeavyHitters::add(std::uint8_t byte) {
    ++total_;
    if (auto it = counts_.find(byte); it != counts_.end()) {
        ++it->second;
        return;
    }
    if (counts_.size() < capacity_) {
        counts_.emplace(byte, 1);
        return;
    }
    for (auto it = counts_.begin(); it != counts_.end();) {
        if (--it->second == 0) it = counts_.erase(it);
        else ++it;
    }
}

std::size_t HeavyHitters::largest() const noexcept {
    std::size_t best = 0;
    for (const auto& [byte, count] : counts_) best = std::max(best, count);
    return best;
}

DistinctSketch::DistinctSketch(std::size_t k, std::uint64_t seed) : k_(std::max<std::size_t>(2, k)), seed_(seed) {}

void DistinctSketch::add(std::uint8_t byte) {
    const std::uint64_t h = splitmix64(seed_ ^ splitmix64(byte));
    auto it = std::lower_bound(smallest_.begin(), smallest_.end(), h);
    if (it != smallest_.end() && *it == h) return;
    if (smallest_.size() == k_) {
        if (it == smallest_.end()) return;
        smallest_.pop_back();
    }
    smallest_.insert(it, h);
}

double DistinctSketch::estimate() const noexcept {
    if (smallest_.size() < k_) return static_cast<double>(smallest_.size());
    const double kth = static_cast<double>(smallest_.back()) / static_cast<double>(std::numeric_limits<std::uint64_t>::max());
    return static_cast<double>(k_ - 1) / kth;
}

std::size_t delta_exact(const WildcardString& s, std::size_t p) {
    const std::size_t n = s.size();
    require_period(n, p);
    std::size_t total = 0;
    std::array<std::size_t, 256> freq{};
    for (std::size_t i = 1; i <= p; ++i) {
        freq.fill(0);
        std::size_t symbols = 0;
        for (std::size_t pos = i; pos <= n; pos += p) {
            const Symbol c = s.data()[pos - 1];
            if (c.is_wildcard()) continue;
            ++freq[c.byte()];
            ++symbols;
        }
        total += symbols - *std::max_element(freq.begin(), freq.end());
    }
    return total;
}

std::size_t delta_hh(SymbolSource& stream, std::size_t p, double epsilon) {
    require_epsilon(epsilon);
    const std::size_t n = stream.length();
    const PeriodMatrixView view(n, p);
    const auto counters = static_cast<std::size_t>(std::ceil(1.0 / epsilon));
    std::vector<HeavyHitters> rows(p, HeavyHitters(counters));
    stream.rewind();
    for (std::size_t pos = 1; pos <= n; ++pos) {
        auto c = stream.next();
        if (!c) throw Error(ErrorCode::StreamTooShort, "stream ended at " + std::to_string(pos - 1));
        if (!c->is_wildcard()) rows[view.row_of(pos) - 1].add(c->byte());
    }
    std::size_t total = 0;
    for (const HeavyHitters& row : rows) total += row.total() - std::min(row.total(), row.largest());
    return total;
}

std::size_t delta_hh(const WildcardString& s, std::size_t p, double epsilon) {
    MemorySource source(s);
    return delta_hh(source, p, epsilon);
}

std::size_t delta_de(SymbolSource& stream, std::size_t p, double epsilon, double delta, std::uint64_t seed) {
    require_epsilon(epsilon);
    if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::InvalidParams, "delta must lie in (0, 1)");
    const std::size_t n = stream.length();
    const PeriodMatrixView view(n, p);
    // Relative error epsilon/8; failure probability only enters through hash
    // collisions, since the sketch is exact below its capacity.
    const auto capacity = static_cast<std::size_t>(std::ceil((8.0 / epsilon) * (8.0 / epsilon)));
    std::vector<DistinctSketch> distinct;
    distinct.reserve(p);
    for (std::size_t i = 0; i < p; ++i) distinct.emplace_back(capacity, splitmix64(seed + i));
    std::vector<MajorityVote> votes(p);
    std::vector<RowSketch> rows(p);
    stream.rewind();
    for (std::size_t pos = 1; pos <= n; ++pos) {
        auto c = stream.next();
        if (!c) throw Error(ErrorCode::StreamTooShort, "stream ended at " + std::to_string(pos - 1));
        RowSketch& row = rows[view.row_of(pos) - 1];
        if (c->is_wildcard()) {
            ++row.wildcards;
            continue;
        }
        ++row.symbols;
        distinct[view.row_of(pos) - 1].add(c->byte());
        votes[view.row_of(pos) - 1].add(c->byte());
    }
    std::size_t total = 0;
    for (std::size_t i = 0; i < p; ++i) {
        if (distinct[i].estimate() < 1.5) continue;
        total += rows[i].symbols - votes[i].counter;
    }
    return total;
}

std::size_t delta_de(const WildcardString& s, std::size_t p, double epsilon, double delta, std::uint64_t seed) {
    MemorySource source(s);
    return delta_de(source, p, epsilon, delta, seed);
}

} // namespace wcp
