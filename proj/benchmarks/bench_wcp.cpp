#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "wcp/distance.hpp"
#include "wcp/fingerprint.hpp"
#include "wcp/mismatch.hpp"
#include "wcp/onepass.hpp"
#include "wcp/oracle.hpp"
#include "wcp/twopass.hpp"

namespace {

using namespace wcp;

WildcardString noisy_periodic(std::size_t n, std::size_t period, std::size_t holes, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::string block(period, 'a');
    for (char& c : block) c = static_cast<char>('a' + rng() % 4);
    std::string text(n, 'a');
    for (std::size_t i = 0; i < n; ++i) text[i] = block[i % period];
    for (std::size_t i = 0; i < holes; ++i) text[rng() % n] = '?';
    return parse_stream(text, ParseOptions{'?', false});
}

void report_space(benchmark::State& state, const SpaceStats& s) {
    state.counters["fingerprints"] = static_cast<double>(s.fingerprints_stored);
    state.counters["assign_entries"] = static_cast<double>(s.assignment_entries);
    state.counters["kmm_words"] = static_cast<double>(s.kmismatch_space_words);
}

void BM_TwoPassHard(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto which = static_cast<Subroutine>(state.range(1));
    const HardInstance h = gen_hard_instance(n, 4, 2, 1);
    TwoPassConfig c;
    c.k = 4;
    c.subroutine = which;
    PeriodReport r;
    for (auto _ : state) {
        r = find_wildcard_periods(h.s, c);
        benchmark::DoNotOptimize(r.periods.data());
    }
    report_space(state, r.stats);
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_TwoPassHard)
    ->ArgsProduct({benchmark::CreateRange(1 << 10, 1 << 16, 4), {0, 1}})
    ->Unit(benchmark::kMillisecond);

void BM_TwoPassPeriodic(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const WildcardString s = noisy_periodic(n, 7, 4, 2);
    TwoPassConfig c;
    c.k = 4;
    PeriodReport r;
    for (auto _ : state) {
        r = find_wildcard_periods(s, c);
        benchmark::DoNotOptimize(r.periods.data());
    }
    report_space(state, r.stats);
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_TwoPassPeriodic)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMillisecond);

void BM_OnePass(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const WildcardString s = noisy_periodic(n, 11, 0, 3);
    OnePassConfig c;
    OnePassReport r;
    for (auto _ : state) {
        r = onepass_periods(s, c);
        benchmark::DoNotOptimize(r.report.periods.data());
    }
    report_space(state, r.report.stats);
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_OnePass)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const WildcardString s = noisy_periodic(n, 7, 4, 4);
    for (auto _ : state) benchmark::DoNotOptimize(oracle_all_periods(s));
}
BENCHMARK(BM_Oracle)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Unit(benchmark::kMillisecond);

void BM_KMismatch(benchmark::State& state) {
    const auto which = static_cast<Subroutine>(state.range(0));
    const std::size_t n = 1 << 14;
    const WildcardString s = noisy_periodic(n, 5, 0, 5);
    const FingerprintScheme scheme(1);
    for (auto _ : state) {
        auto e = kmismatch_stream(which, {n / 2, 8, 1, n / 2}, s.data(), scheme);
        benchmark::DoNotOptimize(e.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_KMismatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FingerprintAppend(benchmark::State& state) {
    const FingerprintScheme scheme(1);
    Fingerprint f{};
    std::uint8_t b = 0;
    for (auto _ : state) {
        f = scheme.append(f, Symbol(b++));
        benchmark::DoNotOptimize(f);
    }
}
BENCHMARK(BM_FingerprintAppend);

void BM_DeltaEstimators(benchmark::State& state) {
    const std::size_t n = 1 << 16;
    const WildcardString s = noisy_periodic(n, 64, 8, 6);
    const bool hh = state.range(0) == 0;
    for (auto _ : state) {
        const std::size_t d = hh ? delta_hh(s, 64, 0.1) : delta_de(s, 64, 0.5, 0.1, 7);
        benchmark::DoNotOptimize(d);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_DeltaEstimators)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
