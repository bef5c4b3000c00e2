#include "wcp/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>

#include "wcp/error.hpp"

namespace wcp {

bool oracle_wildcard_period(const WildcardString& s, std::size_t p) {
    const std::size_t n = s.size();
    if (p < 1 || p >= n) return false;
    const auto data = s.data();
    for (std::size_t r = 0; r < p; ++r) {
        std::optional<Symbol> seen;
        for (std::size_t pos = r; pos < n; pos += p) {
            const Symbol c = data[pos];
            if (c.is_wildcard()) continue;
            if (!seen) seen = c;
            else if (*seen != c) return false;
        }
    }
    return true;
}

bool oracle_k_period(std::span<const Symbol> s, std::size_t p, std::size_t k) {
    const std::size_t n = s.size();
    if (p < 1 || p >= n) return false;
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i + p < n; ++i)
        if (s[i] != s[i + p] && ++mismatches > k) return false;
    return true;
}

std::vector<std::size_t> oracle_all_periods(const WildcardString& s) {
    std::vector<std::size_t> out;
    for (std::size_t p = 1; p < s.size(); ++p)
        if (oracle_wildcard_period(s, p)) out.push_back(p);
    return out;
}

std::string hard_instance_prefix(std::size_t length) {
    std::string out;
    out.reserve(length);
    for (std::size_t run = 1; out.size() < length; ++run) {
        out.append(std::min(run, length - out.size()), '1');
        out.append(std::min(run, length - out.size()), '0');
    }
    return out;
}

namespace {

// Flips `count` distinct positions of `base` chosen uniformly.
std::vector<std::size_t> flip_random(std::string& base, std::size_t count, std::mt19937_64& rng) {
    std::vector<std::size_t> idx(base.size());
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < count; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    idx.resize(count);
    for (std::size_t i : idx) base[i] = base[i] == '1' ? '0' : '1';
    std::sort(idx.begin(), idx.end());
    return idx;
}

} // namespace

HardInstance gen_hard_instance(std::size_t n, std::size_t k, std::size_t gap, std::uint64_t seed) {
    if (n == 0 || n % 4 != 0) throw Error(ErrorCode::InvalidParams, "n must be a positive multiple of 4");
    if (k % 2 != 0) throw Error(ErrorCode::InvalidParams, "k must be even");
    const std::size_t quarter = n / 4;
    const std::size_t half_k = k / 2;
    if (half_k > quarter) throw Error(ErrorCode::InvalidParams, "k/2 exceeds n/4");
    if (gap != half_k && gap != half_k + 1) throw Error(ErrorCode::InvalidParams, "gap must be k/2 or k/2+1");
    if (gap > quarter) throw Error(ErrorCode::InvalidParams, "gap exceeds n/4");

    std::mt19937_64 rng(seed);
    HardInstance out;
    out.n = n;
    out.k = k;
    out.gap = gap;
    out.nu = hard_instance_prefix(quarter);
    out.x = out.nu;
    flip_random(out.x, half_k, rng);
    out.y = out.x;
    const std::vector<std::size_t> diff = flip_random(out.y, gap, rng);

    std::string text = out.y + out.x + out.x + out.x;
    for (std::size_t i = 0; i < half_k && i < diff.size(); ++i) text[diff[i]] = '?';
    out.s = parse_stream(text, ParseOptions{'?', false});
    return out;
}

} // namespace wcp
