// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <unordered_set>

#include "brute.hpp"
#include "generators.hpp"
#include "wcp/distance.hpp"
#include "wcp/fingerprint.hpp"
#include "wcp/mismatch.hpp"
#include "wcp/onepass.hpp"
#include "wcp/oracle.hpp"
#include "wcp/twopass.hpp"

using namespace wcp;
using wcp::testing::ws;

namespace {

// Pinned thresholds and budgets.
constexpr double kSketchAgreementMin = 0.999;
constexpr double kSpaceGrowthSlack = 1.5;
constexpr double kDeSuccessMin = 0.9;  // 1 - delta for delta = 0.1
constexpr std::uint64_t kSeed = 20261015;

struct Outcome {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool in_time = secs < budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("%s [%d] %s: %s (%.1fs, budget %.0fs%s)\n", pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs,
                budget_s, in_time ? "" : ", over budget");
    std::fflush(stdout);
}

std::vector<std::size_t> two_pass(const WildcardString& s, Subroutine which, std::uint64_t seed) {
    TwoPassConfig c;
    c.k = wildcard_count(s);
    c.subroutine = which;
    c.seed = seed;
    return find_wildcard_periods(s, c).periods;
}

Outcome paper_examples() {
    bool ok = true;
    std::string notes;
    auto expect = [&](bool cond, const char* what) {
        if (!cond) {
            ok = false;
            notes += std::string(" failed:") + what;
        }
    };
    for (Subroutine which : {Subroutine::Reference, Subroutine::Sketch}) {
        const auto ex1 = two_pass(ws("abcab?a?c?bc"), which, kSeed);
        expect(std::find(ex1.begin(), ex1.end(), 3) != ex1.end(), "ex1 period 3");
        const auto ex2 = two_pass(ws("aaa?bbb"), which, kSeed);
        expect(std::find(ex2.begin(), ex2.end(), 1) == ex2.end(), "ex2 rejects 1");
        const auto ex3 = two_pass(ws("aaaaabbbbb"), which, kSeed);
        expect(std::find(ex3.begin(), ex3.end(), 1) == ex3.end(), "ex3 rejects 1");
    }
    const auto ex3 = ws("aaaaabbbbb");
    expect(oracle_k_period(ex3.data(), 1, 1), "ex3 1-period");

    TwoPassConfig c;
    c.k = 1;
    c.record_witnesses = true;
    const PeriodReport r4 = find_wildcard_periods(ws("ababa?ab"), c);
    const auto w4 = std::find_if(r4.witnesses.begin(), r4.witnesses.end(), [](const auto& w) { return w.period == 2; });
    expect(w4 != r4.witnesses.end() && w4->assignment.size() == 1 && w4->assignment[0].first == 6 &&
               w4->assignment[0].second == Symbol('b'),
           "ex4 period 2 with b");
    return {ok, ok ? "examples 1-4 reproduced" : notes};
}

Outcome exhaustive() {
    std::size_t strings = 0, engine_bad = 0, oracle_bad = 0;
    for (std::size_t n = 1; n <= 14; ++n) {
        // Every string over {a, b, ?} with at most two '?'.
        for (std::size_t w1 = 0; w1 <= n; ++w1) {
            for (std::size_t w2 = (w1 == n ? n : w1 + 1); w2 <= n; ++w2) {
                const std::size_t free_slots = n - (w1 < n) - (w2 < n);
                for (std::size_t bits = 0; bits < (std::size_t{1} << free_slots); ++bits) {
                    std::string t(n, 'a');
                    std::size_t b = 0;
                    for (std::size_t i = 0; i < n; ++i) {
                        if (i == w1 || i == w2) t[i] = '?';
                        else t[i] = (bits >> b++ & 1) ? 'b' : 'a';
                    }
                    const auto s = ws(t);
                    ++strings;
                    const auto want = oracle_all_periods(s);
                    if (n >= 2 && two_pass(s, Subroutine::Reference, kSeed) != want) ++engine_bad;
                    for (std::size_t p = 1; p < n; ++p)
                        oracle_bad += oracle_wildcard_period(s, p) != testing::enumerate_wildcard_period(s, p);
                }
            }
        }
    }
    return {engine_bad == 0 && oracle_bad == 0, std::to_string(strings) + " strings, engine discrepancies " +
                                                    std::to_string(engine_bad) + ", oracle discrepancies " +
                                                    std::to_string(oracle_bad)};
}

Outcome randomized() {
    constexpr int trials = 10000;
    std::mt19937_64 rng(kSeed);
    int ref_ok = 0, sketch_ok = 0, one_ok = 0;
    for (int t = 0; t < trials; ++t) {
        const std::size_t n = testing::log_uniform(rng, 16, 4096);
        const std::size_t sigma = 2 + rng() % 3;
        const std::size_t k = rng() % 9;
        const auto s = ws(testing::random_instance(rng, {n, sigma, k, rng() % 4 != 0}));
        const std::uint64_t seed = rng();
        const auto want = oracle_all_periods(s);
        ref_ok += two_pass(s, Subroutine::Reference, seed) == want;
        sketch_ok += two_pass(s, Subroutine::Sketch, seed) == want;

        OnePassConfig oc;
        oc.k = wildcard_count(s);
        oc.seed = seed;
        std::vector<std::size_t> promised;
        for (std::size_t p : want)
            if (2 * p < n && check_promise(s, p)) promised.push_back(p);
        one_ok += onepass_periods(s, oc).report.periods == promised;
    }
    const double sketch_rate = static_cast<double>(sketch_ok) / trials;
    const bool pass = ref_ok == trials && one_ok == trials && sketch_rate >= kSketchAgreementMin;
    char buf[200];
    std::snprintf(buf, sizeof buf, "two-pass reference %d/%d, sketch %d/%d (need >= %.3f), one-pass %d/%d", ref_ok,
                  trials, sketch_ok, trials, kSketchAgreementMin, one_ok, trials);
    return {pass, buf};
}

Outcome space_scaling() {
    constexpr std::size_t k = 4;
    constexpr int seeds = 4;
    std::vector<std::size_t> ns{1 << 10, 1 << 12, 1 << 14, 1 << 16};
    std::vector<double> usage;
    for (std::size_t n : ns) {
        std::size_t worst = 0;
        for (int sd = 0; sd < seeds; ++sd) {
            for (std::size_t gap : {k / 2, k / 2 + 1}) {
                const HardInstance h = gen_hard_instance(n, k, gap, kSeed + sd);
                TwoPassConfig c;
                c.k = k;
                c.subroutine = Subroutine::Sketch;
                c.seed = kSeed + sd;
                const PeriodReport r = find_wildcard_periods(h.s, c);
                worst = std::max(worst, r.stats.fingerprints_stored + r.stats.assignment_entries);
            }
        }
        usage.push_back(static_cast<double>(worst));
    }
    bool pass = true;
    std::string detail = "max fingerprints+entries:";
    for (std::size_t i = 0; i < ns.size(); ++i) {
        detail += " n=" + std::to_string(ns[i]) + ":" + std::to_string(static_cast<std::size_t>(usage[i]));
        if (i == 0) continue;
        const double allowed =
            std::pow(std::log2(static_cast<double>(ns[i])) / std::log2(static_cast<double>(ns[i - 1])), 3) *
            kSpaceGrowthSlack;
        const double growth = usage[i] / usage[i - 1];
        char buf[80];
        std::snprintf(buf, sizeof buf, " (x%.2f, allowed x%.2f)", growth, allowed);
        detail += buf;
        pass = pass && growth <= allowed;
    }
    return {pass, detail};
}

Outcome lemma6() {
    std::mt19937_64 rng(kSeed);
    int with_ok = 0, without_ok = 0;
    constexpr int per_gap = 100;
    for (int t = 0; t < per_gap; ++t) {
        const std::size_t n = std::size_t{64} << (rng() % 5);
        const std::size_t k = 4 + 2 * (rng() % 3);
        const HardInstance yes = gen_hard_instance(n, k, k / 2, rng());
        const HardInstance no = gen_hard_instance(n, k, k / 2 + 1, rng());
        const auto py = oracle_all_periods(yes.s);
        const auto pn = oracle_all_periods(no.s);
        with_ok += std::find(py.begin(), py.end(), n / 4) != py.end();
        without_ok += std::find(pn.begin(), pn.end(), n / 4) == pn.end();
    }
    return {with_ok == per_gap && without_ok == per_gap,
            "gap=k/2 has n/4: " + std::to_string(with_ok) + "/100, gap=k/2+1 lacks n/4: " +
                std::to_string(without_ok) + "/100"};
}

Outcome distance_estimators() {
    constexpr int trials = 1000;
    std::mt19937_64 rng(kSeed);
    int hh_ok_01 = 0, hh_ok_05 = 0, de_ok = 0, zero_ok = 0, zero_checks = 0;
    for (int t = 0; t < trials; ++t) {
        const std::size_t n = testing::log_uniform(rng, 16, 4096);
        const auto s = ws(testing::random_instance(rng, {n, 2 + rng() % 4, 4, rng() % 2 == 0}));
        const std::size_t p = 1 + rng() % std::min<std::size_t>(64, n);
        const double exact = static_cast<double>(delta_exact(s, p));
        auto within = [&](double est, double factor) { return est >= exact && est <= factor * exact + 1e-9; };
        hh_ok_01 += within(static_cast<double>(delta_hh(s, p, 0.1)), 1.1);
        hh_ok_05 += within(static_cast<double>(delta_hh(s, p, 0.5)), 1.5);
        const double de = static_cast<double>(delta_de(s, p, 0.5, 0.1, rng()));
        de_ok += de >= exact / 2.5 - 1e-9 && de <= 2.5 * exact + 1e-9;
        for (std::size_t d = 1; d <= std::min<std::size_t>(64, n - 1); ++d) {
            if (n % d != 0) continue;
            ++zero_checks;
            zero_ok += (delta_exact(s, d) == 0) == oracle_wildcard_period(s, d);
        }
    }
    const double de_rate = static_cast<double>(de_ok) / trials;
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "hh eps=0.1 %d/%d, hh eps=0.5 %d/%d, de (2.5x) %d/%d (need >= %.2f), zero-distance %d/%d", hh_ok_01,
                  trials, hh_ok_05, trials, de_ok, trials, kDeSuccessMin, zero_ok, zero_checks);
    return {hh_ok_01 == trials && hh_ok_05 == trials && de_rate >= kDeSuccessMin && zero_ok == zero_checks, buf};
}

Outcome fingerprint_algebra() {
    constexpr int rounds = 1000000;
    std::mt19937_64 rng(kSeed);
    const FingerprintScheme sc(kSeed);
    std::size_t violations = 0;
    for (int t = 0; t < rounds; ++t) {
        const std::size_t la = rng() % 12, lb = rng() % 12;
        std::vector<Symbol> text(la + lb);
        for (Symbol& c : text) c = Symbol(static_cast<std::uint8_t>(rng() % 4));
        const std::span<const Symbol> all(text);
        const Fingerprint a = sc.of(all.subspan(0, la));
        const Fingerprint b = sc.of(all.subspan(la));
        const Fingerprint ab = sc.concat(a, b);
        violations += ab != sc.of(all);
        violations += sc.split(ab, a) != b;
    }
    // Unequal pairs: distinct random strings of equal length.
    std::size_t collisions = 0, pairs = 0;
    for (int t = 0; t < rounds; ++t) {
        const std::size_t len = 8 + rng() % 24;
        std::vector<Symbol> x(len), y(len);
        for (std::size_t i = 0; i < len; ++i) {
            x[i] = Symbol(static_cast<std::uint8_t>(rng()));
            y[i] = Symbol(static_cast<std::uint8_t>(rng()));
        }
        if (x == y) continue;
        ++pairs;
        collisions += sc.of(x) == sc.of(y);
    }
    return {violations == 0 && collisions == 0, std::to_string(rounds) + " round-trips, " +
                                                    std::to_string(violations) + " violations; " +
                                                    std::to_string(pairs) + " unequal pairs, " +
                                                    std::to_string(collisions) + " collisions"};
}

std::size_t smallest_period(std::span<const Symbol> s) {
    for (std::size_t p = 1; p < s.size(); ++p)
        if (oracle_k_period(s, p, 0)) return p;
    return s.size();
}

Outcome obs3_spacing() {
    std::mt19937_64 rng(kSeed);
    const FingerprintScheme sc(kSeed);
    int ok = 0;
    std::size_t emitted = 0;
    constexpr int strings = 100;
    for (int t = 0; t < strings; ++t) {
        const std::size_t n = 256 + rng() % 768;
        const std::size_t block_len = 1 + rng() % 24;
        std::string block(block_len, 'a');
        for (char& c : block) c = static_cast<char>('a' + rng() % 3);
        std::string text(n, 'a');
        for (std::size_t i = 0; i < n; ++i) text[i] = block[i % block_len];
        // Perturb the second half only, so the prefix keeps its period.
        for (int e = 0; e < 3; ++e) text[n / 2 + rng() % (n - n / 2)] = 'z';
        const auto s = ws(text);
        const std::size_t half = n / 2;
        const std::size_t p = smallest_period(s.data().subspan(0, half));
        bool spaced = true;
        for (Subroutine which : {Subroutine::Reference, Subroutine::Sketch}) {
            const auto e = kmismatch_stream(which, {half, 0, 1, half}, s.data(), sc);
            emitted += e.size();
            for (std::size_t i = 1; i < e.size(); ++i) spaced = spaced && e[i].index - e[i - 1].index >= p;
        }
        ok += spaced;
    }
    return {ok == strings, std::to_string(ok) + "/" + std::to_string(strings) + " strings spaced, " +
                               std::to_string(emitted) + " emissions"};
}

} // namespace

int main() {
    std::printf("seed %llu\n", static_cast<unsigned long long>(kSeed));
    report(1, "paper examples", 1, paper_examples);
    report(2, "exhaustive oracle equivalence", 300, exhaustive);
    report(3, "randomized oracle equivalence", 600, randomized);
    report(4, "space scaling", 300, space_scaling);
    report(5, "hard-instance period property", 60, lemma6);
    report(6, "distance estimators", 300, distance_estimators);
    report(7, "fingerprint algebra", 60, fingerprint_algebra);
    report(8, "candidate spacing", 60, obs3_spacing);
    std::printf("%d criteria failed\n", failures);
    return failures;
}
