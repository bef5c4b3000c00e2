#include <doctest.h>

#include <random>

#include "brute.hpp"
#include "generators.hpp"
#include "wcp/assignments.hpp"
#include "wcp/error.hpp"

using namespace wcp;
using wcp::testing::ws;

namespace {

AssignmentTable scanned(const WildcardString& s, const std::vector<BucketRef>& buckets) {
    AssignmentTable table(s.size(), s.wildcards());
    for (const BucketRef& b : buckets) table.add_bucket(b);
    MemorySource src(s);
    record_context(table, src);
    return table;
}

// Walks w -/+ m*r for m = 1, 2, ... and returns the first non-wildcard,
// checking the left side first at each distance.
Assignment nearest(const WildcardString& s, std::size_t w, std::size_t r) {
    for (std::size_t m = 1; m * r < s.size(); ++m) {
        if (w > m * r && !s.at(w - m * r).is_wildcard()) return {s.at(w - m * r), false};
        if (w + m * r <= s.size() && !s.at(w + m * r).is_wildcard()) return {s.at(w + m * r), false};
    }
    return Assignment::make_free();
}

} // namespace

TEST_CASE("RecordedChain keeps runs and skips wildcards") {
    RecordedChain c(3, 2, 5);  // positions 3, 5, 7, 9, 11
    c.record(3, Symbol('a'));
    c.record(5, Symbol('a'));
    c.record(7, Symbol::wildcard());
    c.record(9, Symbol('b'));
    c.record(11, Symbol('b'));
    CHECK(c.runs() == 2);
    CHECK(c.lookup(3) == Symbol('a'));
    CHECK(c.lookup(11) == Symbol('b'));
    CHECK_FALSE(c.lookup(4).has_value());
    CHECK_FALSE(c.lookup(13).has_value());
}

TEST_CASE("paper examples resolve to the stated symbols") {
    const auto ex4 = ws("ababa?ab");
    const AssignmentTable t4 = scanned(ex4, {{0, 0, 2, 1, 0}});
    CHECK(t4.resolve(0, 6, 2) == Assignment{Symbol('b'), false});

    const auto ex1 = ws("abcab?a?c?bc");
    const AssignmentTable t1 = scanned(ex1, {{0, 0, 3, 3, 1}});
    CHECK(t1.resolve(0, 6, 3) == Assignment{Symbol('c'), false});
    CHECK(t1.resolve(0, 8, 3) == Assignment{Symbol('b'), false});
    CHECK(t1.resolve(0, 10, 3) == Assignment{Symbol('a'), false});
    CHECK(t1.resolve(0, 6, 6) == nearest(ex1, 6, 6));

    const auto holes = ws("????");
    const AssignmentTable t0 = scanned(holes, {{0, 0, 1, 1, 1}});
    CHECK(t0.resolve(0, 2, 1).free);
}

TEST_CASE("resolve errors") {
    const auto s = ws("ab?ab");
    const AssignmentTable t = scanned(s, {{0, 0, 2, 1, 0}});
    CHECK_THROWS_AS(t.resolve(0, 2, 2), Error);
    CHECK_THROWS_AS(t.resolve(0, 3, 1), Error);
}

TEST_CASE("resolve equals nearest-first brute force on random buckets") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = testing::log_uniform(rng, 4, 600);
        const auto s = ws(testing::random_instance(rng, {n, 2 + rng() % 3, 6, rng() % 2 == 0}));
        if (s.wildcards().empty()) continue;
        std::vector<BucketRef> buckets;
        for (int b = 0; b < 3; ++b) {
            const std::size_t anchor = 1 + rng() % (n - 1);
            const std::size_t step = 1 + rng() % 5;
            const std::size_t steps = (n - 1 - anchor) / step == 0 ? 0 : rng() % ((n - 1 - anchor) / step + 1);
            buckets.push_back({0, static_cast<std::size_t>(b), anchor, step, steps});
        }
        const AssignmentTable table = scanned(s, buckets);
        for (std::size_t h = 0; h < buckets.size(); ++h) {
            for (std::size_t a = 0; a <= buckets[h].steps; ++a) {
                const std::size_t r = buckets[h].anchor + a * buckets[h].step;
                for (std::size_t w : s.wildcards()) {
                    const Assignment got = table.resolve(h, w, r);
                    CHECK_MESSAGE(got == nearest(s, w, r), s.serialize() << " w=" << w << " r=" << r);
                    CHECK(table.resolve(h, w, r) == got);
                }
            }
        }
    }
}

TEST_CASE("entry count stays small on periodic text") {
    std::string text;
    while (text.size() < 4000) text += "abcab";
    text[1000] = '?';
    text[2500] = '?';
    const auto s = ws(text);
    const AssignmentTable table = scanned(s, {{0, 0, 5, 5, 300}});
    CHECK(table.entries(0) <= 16);
}
