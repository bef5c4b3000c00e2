#include "wcp/twopass.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include <json.hpp>

#include "wcp/assignments.hpp"
#include "wcp/error.hpp"
#include "wcp/fingerprint.hpp"

namespace wcp {

namespace {

constexpr std::uint64_t kSketchSeedSalt = 0x9e3779b97f4a7c15ULL;

enum class LevelFilter { Small, Large, All };

bool selected(LevelFilter f, std::size_t level) {
    switch (f) {
    case LevelFilter::Small: return level == 0;
    case LevelFilter::Large: return level > 0;
    case LevelFilter::All: return true;
    }
    return false;
}

PassOneState run_pass_one(SymbolSource& source, const TwoPassConfig& config, LevelFilter filter) {
    PassOneState state;
    state.n = source.length();
    state.k = config.k;

    const FingerprintScheme sketch_scheme(config.seed ^ kSketchSeedSalt);
    std::vector<std::unique_ptr<KMismatchMatcher>> matchers;
    for (const LevelGeometry& g : all_levels(state.n, config.k)) {
        if (!selected(filter, g.level)) continue;
        state.levels.emplace_back(g);
        MismatchQuery q{g.pattern_length, 2 * config.k, g.lo, g.hi};
        matchers.push_back(make_kmismatch(config.subroutine, q, sketch_scheme));
    }

    source.rewind();
    std::vector<CandidateEmission> emitted;
    for (std::size_t pos = 1; pos <= state.n; ++pos) {
        auto s = source.next();
        if (!s) throw Error(ErrorCode::StreamTooShort, "stream ended at " + std::to_string(pos - 1));
        if (s->is_wildcard()) {
            state.wildcards.push_back(pos);
            if (state.wildcards.size() > config.k)
                throw Error(ErrorCode::TooManyWildcards, "more than k=" + std::to_string(config.k) + " wildcards");
        } else {
            state.alphabet.set(s->byte());
        }
        for (std::size_t l = 0; l < matchers.size(); ++l) {
            matchers[l]->push(*s, emitted);
            for (const CandidateEmission& e : emitted) state.levels[l].insert(e.index);
            emitted.clear();
        }
    }
    for (const auto& m : matchers) state.kmismatch_space_words += m->peak_space_words();
    return state;
}

/// Block fingerprints of one chain, run-length compressed.
class BlockRuns {
public:
    struct Run {
        Fingerprint fp;
        std::size_t count;
    };

    explicit BlockRuns(std::size_t cap, bool keep_after_cap) : cap_(cap), keep_(keep_after_cap) {}

    void push(Fingerprint fp) {
        if (overflow_ && !keep_) return;
        if (!runs_.empty() && runs_.back().fp == fp) {
            ++runs_.back().count;
            return;
        }
        runs_.push_back({fp, 1});
        if (runs_.size() > cap_) {
            overflow_ = true;
            if (!keep_) runs_.clear();
        }
    }

    bool overflow() const noexcept { return overflow_; }
    const std::vector<Run>& runs() const noexcept { return runs_; }

private:
    std::size_t cap_;
    bool keep_;
    bool overflow_ = false;
    std::vector<Run> runs_;
};

struct BucketPlan {
    BucketRef ref;
    std::size_t handle = 0;
    BlockRuns suffix_blocks;  // blocks of [t+1, z]
    BlockRuns prefix_blocks;  // blocks of [n-z+1, n-t]
    Fingerprint h_z{};        // H[z]
    Fingerprint h_n_minus_z{};
    Fingerprint suffix_last{};
    Fingerprint prefix_last{};
    bool suffix_started = false;
    bool prefix_started = false;
};

struct BlockCursor {
    std::size_t next;
    std::size_t plan;
    bool prefix_side;
    std::size_t remaining;
    std::size_t step;
    bool operator>(const BlockCursor& o) const noexcept { return next > o.next; }
};

/// Walks the runs of a BlockRuns one block at a time, forwards or backwards.
class RunWalker {
public:
    RunWalker(const std::vector<BlockRuns::Run>& runs, bool backwards)
        : runs_(runs), backwards_(backwards), idx_(backwards ? runs.size() : 0) {}

    Fingerprint next() {
        if (left_ == 0) {
            if (backwards_) --idx_;
            else if (started_) ++idx_;
            started_ = true;
            left_ = runs_[idx_].count;
        }
        --left_;
        return runs_[idx_].fp;
    }

private:
    const std::vector<BlockRuns::Run>& runs_;
    bool backwards_;
    std::size_t idx_;
    std::size_t left_ = 0;
    bool started_ = false;
};

PassTwoResult run_pass_two(SymbolSource& source, const PassOneState& state, const TwoPassConfig& config,
                           LevelFilter filter) {
    PassTwoResult result;
    const std::size_t n = state.n;
    if (source.length() != n) throw Error(ErrorCode::InvalidParams, "pass two stream length differs from pass one");
    const std::size_t k = state.k;
    const std::size_t log_n = ceil_log2(n);
    const std::size_t block_cap = 128 * k * k * log_n + 1;
    const std::size_t entry_bound = 256 * k * k * log_n + k;
    const bool keep = config.cap_policy == CapPolicy::Keep;

    const FingerprintScheme scheme(config.seed);
    AssignmentTable table(n, state.wildcards);
    std::vector<BucketPlan> plans;
    std::priority_queue<BlockCursor, std::vector<BlockCursor>, std::greater<>> cursors;

    for (const CandidateBuckets& level : state.levels) {
        if (!selected(filter, level.geometry().level)) continue;
        for (const auto& [j, bucket] : level.buckets()) {
            const BucketExpansion e = level.expand(j);
            BucketRef ref{level.geometry().level, j, e.front(), e.step(), e.size() - 1};
            BucketPlan plan{ref, table.add_bucket(ref), BlockRuns(block_cap, keep), BlockRuns(block_cap, keep)};
            const std::size_t idx = plans.size();
            plans.push_back(std::move(plan));
            cursors.push({ref.anchor, idx, false, ref.steps + 1, ref.step});
            cursors.push({n - ref.last(), idx, true, ref.steps + 1, ref.step});
        }
    }

    source.rewind();
    Fingerprint running{};
    for (std::size_t pos = 1; pos <= n; ++pos) {
        auto s = source.next();
        if (!s) throw Error(ErrorCode::StreamTooShort, "stream ended at " + std::to_string(pos - 1));
        running = scheme.append_base(running, *s);
        table.observe(pos, *s);
        while (!cursors.empty() && cursors.top().next == pos) {
            BlockCursor c = cursors.top();
            cursors.pop();
            BucketPlan& p = plans[c.plan];
            if (c.prefix_side) {
                if (!p.prefix_started) {
                    p.h_n_minus_z = running;
                    p.prefix_started = true;
                } else {
                    p.prefix_blocks.push(scheme.split(running, p.prefix_last));
                }
                p.prefix_last = running;
            } else {
                if (p.suffix_started) p.suffix_blocks.push(scheme.split(running, p.suffix_last));
                p.suffix_started = true;
                p.suffix_last = running;
                p.h_z = running;
            }
            if (--c.remaining > 0) {
                c.next += c.step;
                cursors.push(c);
            }
        }
    }
    const Fingerprint whole = running;

    const Symbol free_fill(smallest_symbol(state.alphabet));
    const auto& W = state.wildcards;
    std::vector<Symbol> sigma(W.size());

    for (const BucketPlan& p : plans) {
        const std::size_t entries = table.entries(p.handle);
        result.stats.max_bucket_assignment_entries = std::max(result.stats.max_bucket_assignment_entries, entries);
        if (entries > entry_bound) ++result.stats.assignment_bound_violations;
        result.stats.fingerprints_stored += p.suffix_blocks.runs().size() + p.prefix_blocks.runs().size() + 2;

        if (p.suffix_blocks.overflow() || p.prefix_blocks.overflow()) {
            ++result.stats.cap_overflows;
            if (!keep) continue;
        }

        RunWalker suffix_walk(p.suffix_blocks.runs(), true);
        RunWalker prefix_walk(p.prefix_blocks.runs(), false);
        Fingerprint suffix = scheme.split(whole, p.h_z);
        Fingerprint prefix = p.h_n_minus_z;
        const std::size_t t = p.ref.anchor;
        const std::size_t step = p.ref.step;

        for (std::size_t b = p.ref.steps;; --b) {
            const std::size_t r = t + b * step;
            ++result.stats.candidates_checked;

            HoleyFingerprint pre{prefix, {}};
            HoleyFingerprint suf{suffix, {}};
            for (std::size_t wi = 0; wi < W.size(); ++wi) {
                const std::size_t w = W[wi];
                const Assignment a = table.resolve(p.handle, w, r);
                sigma[wi] = a.free ? free_fill : a.symbol;
                if (w <= n - r) pre.holes.push_back({w});
                if (w > r) suf.holes.push_back({w - r});
            }
            auto lookup = [&](std::size_t w) -> std::optional<Symbol> {
                auto it = std::lower_bound(W.begin(), W.end(), w);
                return sigma[static_cast<std::size_t>(it - W.begin())];
            };
            const Fingerprint lhs = scheme.finalize(pre, [&](std::uint64_t off) { return lookup(off); });
            const Fingerprint rhs = scheme.finalize(suf, [&](std::uint64_t off) { return lookup(off + r); });
            if (lhs == rhs) {
                result.periods.push_back(r);
                if (config.record_witnesses) {
                    PeriodWitness witness{r, {}};
                    for (std::size_t wi = 0; wi < W.size(); ++wi) witness.assignment.emplace_back(W[wi], sigma[wi]);
                    result.witnesses.push_back(std::move(witness));
                }
            }

            if (b == 0) break;
            suffix = scheme.concat(suffix_walk.next(), suffix);
            prefix = scheme.concat(prefix, prefix_walk.next());
        }
    }
    result.stats.fingerprints_stored += 1;
    result.stats.buckets_nonempty = plans.size();
    result.stats.assignment_entries = table.entries();
    std::sort(result.periods.begin(), result.periods.end());
    result.periods.erase(std::unique(result.periods.begin(), result.periods.end()), result.periods.end());
    std::sort(result.witnesses.begin(), result.witnesses.end(),
              [](const PeriodWitness& a, const PeriodWitness& b) { return a.period < b.period; });
    return result;
}

} // namespace

PassOneState pass_one_small(SymbolSource& source, const TwoPassConfig& config) {
    return run_pass_one(source, config, LevelFilter::Small);
}

PassOneState pass_one_large(SymbolSource& source, const TwoPassConfig& config) {
    return run_pass_one(source, config, LevelFilter::Large);
}

PassOneState pass_one(SymbolSource& source, const TwoPassConfig& config) {
    return run_pass_one(source, config, LevelFilter::All);
}

PassTwoResult pass_two(SymbolSource& source, const PassOneState& state, const TwoPassConfig& config) {
    return run_pass_two(source, state, config, LevelFilter::All);
}

PassTwoResult pass_two_small(SymbolSource& source, const PassOneState& state, const TwoPassConfig& config) {
    return run_pass_two(source, state, config, LevelFilter::Small);
}

PassTwoResult pass_two_large(SymbolSource& source, const PassOneState& state, const TwoPassConfig& config) {
    return run_pass_two(source, state, config, LevelFilter::Large);
}

PeriodReport find_wildcard_periods(SymbolSource& source, const TwoPassConfig& config) {
    PassOneState state = pass_one(source, config);
    PassTwoResult two = pass_two(source, state, config);
    PeriodReport report;
    report.n = state.n;
    report.k_found = state.wildcards.size();
    report.periods = std::move(two.periods);
    if (!report.periods.empty()) report.smallest = report.periods.front();
    report.stats = two.stats;
    report.witnesses = std::move(two.witnesses);
    report.stats.kmismatch_space_words = state.kmismatch_space_words;
    return report;
}

PeriodReport find_wildcard_periods(const WildcardString& input, const TwoPassConfig& config) {
    MemorySource source(input);
    return find_wildcard_periods(source, config);
}

std::string to_json(const PassOneState& state) {
    nlohmann::json j;
    j["schema"] = 1;
    j["n"] = state.n;
    j["k"] = state.k;
    auto alphabet = nlohmann::json::array();
    for (std::size_t b = 0; b < state.alphabet.size(); ++b)
        if (state.alphabet.test(b)) alphabet.push_back(b);
    j["alphabet"] = std::move(alphabet);
    j["wildcards"] = state.wildcards;
    auto levels = nlohmann::json::array();
    for (const auto& level : state.levels) levels.push_back(nlohmann::json::parse(to_json(level)));
    j["levels"] = std::move(levels);
    j["kmismatch_space_words"] = state.kmismatch_space_words;
    return j.dump();
}

PassOneState pass_one_from_json(const std::string& text) {
    try {
        const auto j = nlohmann::json::parse(text);
        if (j.at("schema").get<int>() != 1) throw Error(ErrorCode::InvalidParams, "unsupported snapshot schema");
        PassOneState state;
        state.n = j.at("n").get<std::size_t>();
        state.k = j.at("k").get<std::size_t>();
        for (const auto& b : j.at("alphabet")) state.alphabet.set(b.get<std::size_t>());
        state.wildcards = j.at("wildcards").get<std::vector<std::size_t>>();
        for (const auto& level : j.at("levels")) state.levels.push_back(candidates_from_json(level.dump()));
        state.kmismatch_space_words = j.value("kmismatch_space_words", std::size_t{0});
        return state;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidParams, std::string("pass-one snapshot: ") + e.what());
    }
}

} // namespace wcp
