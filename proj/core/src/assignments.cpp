#include "wcp/assignments.hpp"

#include <algorithm>

#include "wcp/error.hpp"

namespace wcp {

void RecordedChain::record(std::size_t position, Symbol s) {
    if (s.is_wildcard()) return;
    const std::size_t index = (position - first_) / step_;
    if (!runs_.empty() && runs_.back().value == s) {
        runs_.back().last_index = index;
        return;
    }
    runs_.push_back({index, index, s});
}

std::optional<Symbol> RecordedChain::lookup(std::size_t position) const {
    if (position < first_ || (position - first_) % step_ != 0) return std::nullopt;
    const std::size_t index = (position - first_) / step_;
    if (index >= count_) return std::nullopt;
    // Last run starting at or before index.
    auto it = std::upper_bound(runs_.begin(), runs_.end(), index,
                               [](std::size_t i, const Run& r) { return i < r.first_index; });
    if (it == runs_.begin()) return std::nullopt;
    --it;
    // Indices between runs were wildcards.
    if (index <= it->last_index) return it->value;
    return std::nullopt;
}

// ---------------------------------------------------------------------------

AssignmentTable::AssignmentTable(std::size_t n, std::vector<std::size_t> wildcards)
    : n_(n), wildcards_(std::move(wildcards)) {
    std::sort(wildcards_.begin(), wildcards_.end());
}

bool AssignmentTable::is_wildcard_position(std::size_t pos) const noexcept {
    return std::binary_search(wildcards_.begin(), wildcards_.end(), pos);
}

std::optional<std::size_t> AssignmentTable::walk(std::size_t w, std::size_t r, bool leftward) const {
    // Returns the multiplier m of the nearest non-wildcard position w -/+ m*r.
    for (std::size_t m = 1;; ++m) {
        if (leftward) {
            if (m * r >= w) return std::nullopt;
            if (!is_wildcard_position(w - m * r)) return m;
        } else {
            if (w + m * r > n_) return std::nullopt;
            if (!is_wildcard_position(w + m * r)) return m;
        }
    }
}

std::size_t AssignmentTable::add_bucket(const BucketRef& ref) {
    if (ref.step == 0 || ref.anchor == 0) throw Error(ErrorCode::InvalidParams, "bucket needs anchor >= 1 and step >= 1");
    PerBucket b;
    b.ref = ref;
    const std::size_t t = ref.anchor;
    const std::size_t z = ref.last();
    const std::size_t pi = ref.step;

    for (std::size_t w : wildcards_) {
        // Left chain: w - r for r = z, z-pi, ..., t with w - r >= 1.
        if (w > t) {
            const std::size_t r_max = std::min(z, w - 1);
            const std::size_t top = t + ((r_max - t) / pi) * pi;
            b.left.emplace_back(w - top, pi, (top - t) / pi + 1);
        } else {
            b.left.emplace_back(1, pi, 0);
        }
        // Right chain: w + r for r = t, t+pi, ..., z with w + r <= n.
        if (w + t <= n_) {
            const std::size_t r_max = std::min(z, n_ - w);
            const std::size_t top = t + ((r_max - t) / pi) * pi;
            b.right.emplace_back(w + t, pi, (top - t) / pi + 1);
        } else {
            b.right.emplace_back(1, pi, 0);
        }
    }

    // Farther samples: only candidates r with w -/+ r in W need them, and
    // those are r = |w - w'| for another wildcard w'.
    std::vector<std::size_t> extra;
    for (std::size_t w : wildcards_) {
        for (std::size_t w2 : wildcards_) {
            if (w2 == w) continue;
            const bool leftward = w2 < w;
            const std::size_t r = leftward ? w - w2 : w2 - w;
            if (!ref.contains(r)) continue;
            if (auto m = walk(w, r, leftward); m && *m >= 2) extra.push_back(leftward ? w - *m * r : w + *m * r);
        }
    }
    std::sort(extra.begin(), extra.end());
    extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
    for (std::size_t pos : extra) b.extra.push_back({pos, std::nullopt});

    buckets_.push_back(std::move(b));
    const std::size_t handle = buckets_.size() - 1;
    schedule(handle);
    return handle;
}

void AssignmentTable::schedule(std::size_t handle) {
    const PerBucket& b = buckets_[handle];
    for (std::size_t wi = 0; wi < wildcards_.size(); ++wi) {
        if (b.left[wi].count() > 0)
            cursors_.push({b.left[wi].first(), handle, static_cast<std::uint32_t>(wi), 0, b.left[wi].count(),
                           b.left[wi].step()});
        if (b.right[wi].count() > 0)
            cursors_.push({b.right[wi].first(), handle, static_cast<std::uint32_t>(wi), 1, b.right[wi].count(),
                           b.right[wi].step()});
    }
    for (std::size_t ei = 0; ei < b.extra.size(); ++ei)
        cursors_.push({b.extra[ei].position, handle, static_cast<std::uint32_t>(ei), 2, 1, 1});
}

void AssignmentTable::observe(std::size_t position, Symbol s) {
    if (position != last_position_ + 1)
        throw Error(ErrorCode::InvalidParams, "positions must be observed in order");
    last_position_ = position;
    while (!cursors_.empty() && cursors_.top().next <= position) {
        Cursor c = cursors_.top();
        cursors_.pop();
        if (c.next == position) {
            PerBucket& b = buckets_[c.bucket];
            if (c.kind == 0) b.left[c.slot].record(position, s);
            else if (c.kind == 1) b.right[c.slot].record(position, s);
            else b.extra[c.slot].value = s;
        }
        if (--c.remaining > 0) {
            c.next += c.step;
            cursors_.push(c);
        }
    }
}

std::optional<Symbol> AssignmentTable::sampled(const PerBucket& b, std::size_t w_index, std::size_t pos,
                                               std::size_t r, bool leftward) const {
    const std::size_t w = wildcards_[w_index];
    const std::size_t m = leftward ? (w - pos) / r : (pos - w) / r;
    if (m == 1) return leftward ? b.left[w_index].lookup(pos) : b.right[w_index].lookup(pos);
    auto it = std::lower_bound(b.extra.begin(), b.extra.end(), pos,
                               [](const Sample& s, std::size_t p) { return s.position < p; });
    if (it == b.extra.end() || it->position != pos) return std::nullopt;
    return it->value;
}

Assignment AssignmentTable::resolve(std::size_t handle, std::size_t w, std::size_t r) const {
    const PerBucket& b = buckets_.at(handle);
    auto wit = std::lower_bound(wildcards_.begin(), wildcards_.end(), w);
    if (wit == wildcards_.end() || *wit != w) throw Error(ErrorCode::NotAWildcard, "position " + std::to_string(w));
    if (!b.ref.contains(r)) throw Error(ErrorCode::OutOfRange, "candidate " + std::to_string(r) + " not in bucket");
    const std::size_t wi = static_cast<std::size_t>(wit - wildcards_.begin());

    const auto left = walk(w, r, true);
    const auto right = walk(w, r, false);
    if (!left && !right) return Assignment::make_free();

    const bool go_left = left && (!right || *left <= *right);
    const std::size_t pos = go_left ? w - *left * r : w + *right * r;
    auto value = sampled(b, wi, pos, r, go_left);
    if (!value) throw Error(ErrorCode::InvalidParams, "position " + std::to_string(pos) + " was not sampled");
    return {*value, false};
}

std::size_t AssignmentTable::entries(std::size_t handle) const {
    const PerBucket& b = buckets_.at(handle);
    std::size_t e = b.extra.size();
    for (const auto& c : b.left) e += c.runs();
    for (const auto& c : b.right) e += c.runs();
    return e;
}

std::size_t AssignmentTable::entries() const {
    std::size_t e = 0;
    for (std::size_t h = 0; h < buckets_.size(); ++h) e += entries(h);
    return e;
}

void record_context(AssignmentTable& table, SymbolSource& source) {
    source.rewind();
    for (std::size_t pos = 1; pos <= source.length(); ++pos) {
        auto s = source.next();
        if (!s) throw Error(ErrorCode::StreamTooShort, "source ended at " + std::to_string(pos - 1));
        table.observe(pos, *s);
    }
}

} // namespace wcp
