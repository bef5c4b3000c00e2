#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "wcp/candidates.hpp"
#include "wcp/error.hpp"

using namespace wcp;

namespace {

// A level wide enough that 10..24 fall into one bucket.
LevelGeometry wide_level() {
    LevelGeometry g;
    g.n = 200;
    g.k = 0;
    g.level = 0;
    g.pattern_length = 100;
    g.lo = 1;
    g.hi = 100;
    g.width = 50;
    return g;
}

std::vector<std::size_t> collect(const BucketExpansion& e) { return {e.begin(), e.end()}; }

} // namespace

TEST_CASE("ceil_log2") {
    CHECK(ceil_log2(1) == 0);
    CHECK(ceil_log2(2) == 1);
    CHECK(ceil_log2(3) == 2);
    CHECK(ceil_log2(1024) == 10);
    CHECK(ceil_log2(1025) == 11);
}

TEST_CASE("insert follows the anchor and gcd rules") {
    CandidateBuckets b(wide_level());
    b.insert(10);
    REQUIRE(b.buckets().size() == 1);
    CHECK(b.buckets().at(0).anchor == 10);
    CHECK(b.buckets().at(0).pi_or_sentinel() == -1);
    b.insert(16);
    CHECK(b.buckets().at(0).pi == 6u);
    b.insert(24);
    CHECK(b.buckets().at(0).pi == 2u);
    const auto e = collect(b.expand(0));
    for (std::size_t i : {10, 16, 24}) CHECK(std::find(e.begin(), e.end(), i) != e.end());
    CHECK(b.monotonicity_violations() == 0);
    CHECK_THROWS_AS(b.insert(101), Error);
    CHECK_THROWS_AS(b.insert(0), Error);
}

TEST_CASE("expand") {
    LevelGeometry g = wide_level();
    g.lo = 10;
    g.hi = 21;
    g.width = 12;
    CandidateBuckets b(g);
    b.insert(10);
    CHECK(collect(b.expand(0)) == std::vector<std::size_t>{10});
    b.insert(14);
    CHECK(collect(b.expand(0)) == std::vector<std::size_t>{10, 14, 18});
    CHECK_THROWS_AS(b.expand(1), Error);
}

TEST_CASE("expansion is a superset of random insertions") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 16 + rng() % 4000;
        const std::size_t k = rng() % 5;
        for (const LevelGeometry& g : all_levels(n, k)) {
            CandidateBuckets b(g);
            std::set<std::size_t> inserted;
            const std::size_t count = 1 + rng() % 12;
            for (std::size_t c = 0; c < count; ++c) {
                const std::size_t i = g.lo + rng() % (g.hi - g.lo + 1);
                b.insert(i);
                inserted.insert(i);
            }
            for (std::size_t i : inserted) {
                const std::size_t j = g.bucket_of(i);
                CHECK(b.expand(j).contains(i));
                CHECK(b.expand(j).back() <= g.bucket_hi(j));
            }
            CHECK(b.monotonicity_violations() == 0);
        }
    }
}

TEST_CASE("levels partition [1, n-1] and respect the window") {
    for (std::size_t n = 2; n <= 600; ++n) {
        for (std::size_t k : {0, 1, 3}) {
            std::vector<int> cover(n, 0);
            const auto levels = all_levels(n, k);
            CHECK(levels.size() <= ceil_log2(n) + 2);
            for (const LevelGeometry& g : levels) {
                CHECK(g.width >= 1);
                for (std::size_t i = g.lo; i <= g.hi; ++i) {
                    ++cover[i];
                    CHECK(i + g.pattern_length <= n);
                }
            }
            for (std::size_t i = 1; i < n; ++i) CHECK_MESSAGE(cover[i] == 1, "n=" << n << " i=" << i);
        }
    }
}

TEST_CASE("json round trip") {
    CandidateBuckets b(level_geometry(500, 2, 0));
    for (std::size_t i : {3, 7, 11, 120, 200}) b.insert(i);
    const std::string text = to_json(b);
    const CandidateBuckets back = candidates_from_json(text);
    CHECK(to_json(back) == text);
    CHECK(back.geometry().lo == b.geometry().lo);
    CHECK(back.buckets().size() == b.buckets().size());
    CHECK(text.find("\"pi\":-1") != std::string::npos);
    CHECK_THROWS_AS(candidates_from_json("{\"n\":1}"), Error);
}
