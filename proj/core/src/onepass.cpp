#include "wcp/onepass.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "wcp/error.hpp"
#include "wcp/fingerprint.hpp"

namespace wcp {

bool check_promise(const std::vector<std::size_t>& wildcards, std::size_t n, std::size_t p) noexcept {
    if (wildcards.empty()) return true;
    return p <= n && *std::max_element(wildcards.begin(), wildcards.end()) <= n - p;
}

bool check_promise(const WildcardString& input, std::size_t p) {
    return check_promise(input.wildcards(), input.size(), p);
}

std::vector<MidLevel> mid_levels(std::size_t n) {
    std::vector<MidLevel> out;
    const std::size_t half = n / 2;
    const std::size_t quarter = n / 4;
    if (half <= quarter) return out;
    out.push_back({0, half, half, 1, 0});
    for (std::size_t m = 1; m < 63; ++m) {
        const std::size_t width = std::size_t{1} << m;
        const std::size_t hi = half - width / 2;
        const std::size_t raw_lo = width > half ? 1 : half - width + 1;
        const std::size_t lo = std::max(raw_lo, quarter + 1);
        if (lo <= hi) out.push_back({m, lo, hi, width, 0});
        if (raw_lo <= quarter + 1) break;
    }
    return out;
}

namespace {

struct Live {
    std::size_t shift;
    Fingerprint head;                 // H[i]
    std::optional<Fingerprint> tail;  // H[n-i]
    struct Sample {
        std::size_t residue;
        std::optional<Symbol> value;
    };
    std::vector<Sample> samples;
};

struct Event {
    std::size_t position;
    std::size_t live;
    std::size_t sample;  // npos for the H[n-i] snapshot
    bool operator>(const Event& o) const noexcept { return position > o.position; }
};

constexpr std::size_t kSnapshot = static_cast<std::size_t>(-1);

} // namespace

OnePassReport onepass_periods(SymbolSource& raw_source, const OnePassConfig& config) {
    SingleScanGuard source(raw_source);
    source.rewind();
    OnePassReport out;
    const std::size_t n = source.length();
    out.report.n = n;
    const std::size_t half = n / 2;
    const std::size_t quarter = n / 4;
    const std::size_t threshold = config.threshold.value_or(2 * config.k);

    const FingerprintScheme scheme(config.seed);
    const FingerprintScheme sketch_scheme(config.seed ^ 0x9e3779b97f4a7c15ULL);

    std::vector<std::unique_ptr<KMismatchMatcher>> matchers;
    std::vector<std::size_t> matcher_level;  // npos for the small regime
    if (quarter >= 1) {
        matchers.push_back(make_kmismatch(config.subroutine, {half, threshold, 1, quarter}, sketch_scheme));
        matcher_level.push_back(kSnapshot);
    }
    out.mid_levels = mid_levels(n);
    for (std::size_t l = 0; l < out.mid_levels.size(); ++l) {
        const MidLevel& ml = out.mid_levels[l];
        matchers.push_back(make_kmismatch(config.subroutine, {ml.pattern_length, threshold, ml.lo, ml.hi}, sketch_scheme));
        matcher_level.push_back(l);
    }

    // H[pos - half - 1 .. pos]; every H[i] or H[n-i] a detection needs lies in it.
    std::vector<Fingerprint> ring(half + 2);
    auto ring_at = [&](std::size_t p) -> Fingerprint& { return ring[p % ring.size()]; };

    std::vector<Live> live;
    std::vector<std::size_t> wildcards;
    Alphabet alphabet;
    std::priority_queue<Event, std::vector<Event>, std::greater<>> events;
    std::vector<CandidateEmission> emitted;
    Fingerprint running{};
    std::size_t pos = 0;
    Symbol current{};

    auto add_sample = [&](std::size_t li, std::size_t w) {
        Live& c = live[li];
        const std::size_t i = c.shift;
        const std::size_t residue = w % i;
        for (const auto& s : c.samples)
            if (s.residue == residue) return;
        // Unique q in [n-i+1, n] with q = w (mod i).
        const std::size_t q = n - (n - w) % i;
        c.samples.push_back({residue, std::nullopt});
        if (q == pos) c.samples.back().value = current;
        else if (q < pos) throw Error(ErrorCode::InvalidParams, "wildcard sample position already passed");
        else events.push({q, li, c.samples.size() - 1});
    };

    for (pos = 1; pos <= n; ++pos) {
        auto s = source.next();
        if (!s) throw Error(ErrorCode::StreamTooShort, "stream ended at " + std::to_string(pos - 1));
        current = *s;
        running = scheme.append_base(running, current);
        ring_at(pos) = running;

        if (current.is_wildcard()) {
            wildcards.push_back(pos);
            if (wildcards.size() > config.k)
                throw Error(ErrorCode::TooManyWildcards, "more than k=" + std::to_string(config.k) + " wildcards");
            for (std::size_t li = 0; li < live.size(); ++li) add_sample(li, pos);
        } else {
            alphabet.set(current.byte());
        }

        for (std::size_t m = 0; m < matchers.size(); ++m) {
            matchers[m]->push(current, emitted);
            for (const CandidateEmission& e : emitted) {
                const std::size_t i = e.index;
                if (matcher_level[m] == kSnapshot) ++out.small_candidates;
                else ++out.mid_levels[matcher_level[m]].candidates;
                live.push_back({i, ring_at(i), std::nullopt, {}});
                const std::size_t li = live.size() - 1;
                if (n - i <= pos) live[li].tail = ring_at(n - i);
                else events.push({n - i, li, kSnapshot});
                for (std::size_t w : wildcards) add_sample(li, w);
            }
            emitted.clear();
        }

        while (!events.empty() && events.top().position == pos) {
            const Event e = events.top();
            events.pop();
            if (e.sample == kSnapshot) live[e.live].tail = running;
            else live[e.live].samples[e.sample].value = current;
        }
    }
    out.symbols_read = source.consumed();
    const Fingerprint whole = running;
    const Symbol fill(smallest_symbol(alphabet));

    std::size_t sample_count = 0;
    for (const Live& c : live) {
        sample_count += c.samples.size();
        const std::size_t i = c.shift;
        HoleyFingerprint pre{*c.tail, {}};
        HoleyFingerprint suf{scheme.split(whole, c.head), {}};
        for (std::size_t w : wildcards) {
            if (w <= n - i) pre.holes.push_back({w});
            if (w > i) suf.holes.push_back({w - i});
        }
        auto sigma = [&](std::size_t w) -> std::optional<Symbol> {
            const std::size_t residue = w % i;
            for (const auto& s : c.samples)
                if (s.residue == residue) return (!s.value || s.value->is_wildcard()) ? fill : *s.value;
            return std::nullopt;
        };
        const Fingerprint lhs = scheme.finalize(pre, [&](std::uint64_t off) { return sigma(off); });
        const Fingerprint rhs = scheme.finalize(suf, [&](std::uint64_t off) { return sigma(off + i); });
        ++out.report.stats.candidates_checked;
        if (lhs != rhs) continue;
        if (!check_promise(wildcards, n, i)) out.promise_violations.push_back(i);
        else if (2 * i == n) out.half_period = true;
        else out.report.periods.push_back(i);
        if (config.record_witnesses) {
            PeriodWitness witness{i, {}};
            for (std::size_t w : wildcards) witness.assignment.emplace_back(w, *sigma(w));
            out.report.witnesses.push_back(std::move(witness));
        }
    }

    auto& periods = out.report.periods;
    std::sort(periods.begin(), periods.end());
    periods.erase(std::unique(periods.begin(), periods.end()), periods.end());
    std::sort(out.promise_violations.begin(), out.promise_violations.end());
    out.promise_violations.erase(std::unique(out.promise_violations.begin(), out.promise_violations.end()),
                                 out.promise_violations.end());
    if (!periods.empty()) out.report.smallest = periods.front();
    std::sort(out.report.witnesses.begin(), out.report.witnesses.end(),
              [](const PeriodWitness& a, const PeriodWitness& b) { return a.period < b.period; });
    out.report.k_found = wildcards.size();
    out.report.stats.fingerprints_stored = 2 * live.size() + 1;
    out.report.stats.assignment_entries = sample_count;
    out.report.stats.buckets_nonempty = live.size();
    std::size_t words = ring.size();
    for (const auto& m : matchers) words += m->peak_space_words();
    out.report.stats.kmismatch_space_words = words;
    return out;
}

OnePassReport onepass_periods(const WildcardString& input, const OnePassConfig& config) {
    MemorySource source(input);
    return onepass_periods(source, config);
}

} // namespace wcp
