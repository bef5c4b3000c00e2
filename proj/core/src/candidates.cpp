#include "wcp/candidates.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

#include "wcp/error.hpp"

namespace wcp {

std::size_t ceil_log2(std::size_t n) noexcept {
    std::size_t r = 0;
    while ((std::size_t{1} << r) < n) ++r;
    return r;
}

std::size_t LevelGeometry::bucket_hi(std::size_t j) const noexcept {
    return std::min(hi, lo + (j + 1) * width - 1);
}

namespace {

/// Window length used at `level`: floor(n/2) for level 0 and
/// max(1, floor(n / 2^(level+1))) above it.
std::size_t window_length(std::size_t n, std::size_t level) {
    if (level == 0) return n / 2;
    return level + 1 >= 64 ? 1 : std::max<std::size_t>(1, n >> (level + 1));
}

} // namespace

LevelGeometry level_geometry(std::size_t n, std::size_t k, std::size_t level) {
    LevelGeometry g;
    g.n = n;
    g.k = k;
    g.level = level;
    g.pattern_length = window_length(n, level);
    const std::size_t spread = 2 * k * ceil_log2(n) + 1;

    if (level == 0) {
        g.lo = 1;
        g.hi = n / 2;
        g.width = std::max<std::size_t>(1, n / (4 * spread));
        return g;
    }

    const std::size_t x = g.pattern_length;
    g.lo = level == 1 ? n / 2 + 1 : n - window_length(n, level - 1) + 1;
    g.hi = n - x;
    const std::size_t scale = level + 1 >= 40 ? 0 : (std::size_t{1} << (level + 1)) * spread;
    g.width = scale == 0 ? 1 : std::max<std::size_t>(1, n / scale);
    return g;
}

std::vector<LevelGeometry> all_levels(std::size_t n, std::size_t k) {
    std::vector<LevelGeometry> out;
    if (n < 2) return out;
    for (std::size_t level = 0;; ++level) {
        LevelGeometry g = level_geometry(n, k, level);
        if (!g.empty()) out.push_back(g);
        if (level > 0 && g.pattern_length <= 1) break;
    }
    return out;
}

void CandidateBuckets::insert(std::size_t i) {
    if (!geometry_.contains(i))
        throw Error(ErrorCode::OutOfRange, "candidate " + std::to_string(i) + " outside level " +
                                               std::to_string(geometry_.level));
    const std::size_t j = geometry_.bucket_of(i);
    auto [it, fresh] = buckets_.try_emplace(j);
    Bucket& b = it->second;
    ++b.members_hint;
    if (fresh) {
        b.anchor = i;
        return;
    }
    if (i == b.anchor) return;
    if (i < b.anchor) {
        // Streams insert in increasing order; an earlier index becomes the
        // new anchor and the old anchor's offset folds into pi.
        const std::size_t d = b.anchor - i;
        const std::size_t old = b.pi.value_or(0);
        b.pi = b.pi ? std::gcd(*b.pi, d) : d;
        if (old && old % *b.pi != 0) ++monotone_violations_;
        b.anchor = i;
        return;
    }
    const std::size_t d = i - b.anchor;
    if (!b.pi) {
        b.pi = d;
    } else {
        const std::size_t old = *b.pi;
        b.pi = std::gcd(old, d);
        if (old % *b.pi != 0) ++monotone_violations_;
    }
}

BucketExpansion CandidateBuckets::expand(std::size_t j) const {
    auto it = buckets_.find(j);
    if (it == buckets_.end()) throw Error(ErrorCode::EmptyBucket, "bucket " + std::to_string(j));
    const Bucket& b = it->second;
    if (!b.pi) return BucketExpansion(b.anchor, 1, 1);
    const std::size_t last = geometry_.bucket_hi(j);
    return BucketExpansion(b.anchor, *b.pi, (last - b.anchor) / *b.pi + 1);
}

void CandidateBuckets::restore(std::size_t j, Bucket bucket) {
    if (j >= geometry_.bucket_count() || !geometry_.contains(bucket.anchor) ||
        geometry_.bucket_of(bucket.anchor) != j || (bucket.pi && *bucket.pi == 0))
        throw Error(ErrorCode::InvalidParams, "inconsistent bucket " + std::to_string(j));
    buckets_[j] = bucket;
}

std::string to_json(const CandidateBuckets& b) {
    nlohmann::json j;
    j["n"] = b.geometry().n;
    j["k"] = b.geometry().k;
    j["r"] = b.geometry().level;
    auto arr = nlohmann::json::array();
    for (const auto& [id, bucket] : b.buckets())
        arr.push_back({{"j", id}, {"anchor", bucket.anchor}, {"pi", bucket.pi_or_sentinel()}});
    j["buckets"] = std::move(arr);
    return j.dump();
}

CandidateBuckets candidates_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        CandidateBuckets out(level_geometry(j.at("n").get<std::size_t>(), j.at("k").get<std::size_t>(),
                                            j.at("r").get<std::size_t>()));
        for (const auto& e : j.at("buckets")) {
            Bucket b;
            b.anchor = e.at("anchor").get<std::size_t>();
            const auto pi = e.at("pi").get<std::int64_t>();
            if (pi > 0) b.pi = static_cast<std::size_t>(pi);
            else if (pi != -1) throw Error(ErrorCode::InvalidParams, "pi must be -1 or positive");
            b.members_hint = b.pi ? 2 : 1;
            out.restore(e.at("j").get<std::size_t>(), b);
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidParams, std::string("candidate snapshot: ") + e.what());
    }
}

} // namespace wcp
