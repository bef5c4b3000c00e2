#include "wcp_cli/cli.hpp"

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wcp/distance.hpp"
#include "wcp/error.hpp"
#include "wcp/onepass.hpp"
#include "wcp/oracle.hpp"
#include "wcp/source.hpp"
#include "wcp/twopass.hpp"

namespace wcp::cli {

namespace {

using Json = nlohmann::ordered_json;

const char* mode_name(Mode m) {
    switch (m) {
    case Mode::Periods2Pass: return "periods-2pass";
    case Mode::Periods1Pass: return "periods-1pass";
    case Mode::Distance: return "distance";
    case Mode::Oracle: return "oracle";
    case Mode::Fixture: return "fixture";
    }
    return "?";
}

/// Stdin copied to a temporary file so the engines can reopen it.
class BufferedInput {
public:
    explicit BufferedInput(const std::string& input) {
        if (input != "-") {
            path_ = input;
            if (!std::filesystem::is_regular_file(path_)) throw Error(ErrorCode::Io, "cannot read " + input);
            return;
        }
        std::string tmpl = (std::filesystem::temp_directory_path() / "wcp-stdin-XXXXXX").string();
        const int fd = ::mkstemp(tmpl.data());
        if (fd < 0) throw Error(ErrorCode::Io, "cannot create temporary file");
        ::close(fd);
        path_ = tmpl;
        owned_ = true;
        std::ofstream out(path_, std::ios::binary);
        out << std::cin.rdbuf();
        if (!out) throw Error(ErrorCode::Io, "cannot buffer stdin");
    }
    ~BufferedInput() {
        if (owned_) {
            std::error_code ec;
            std::filesystem::remove(path_, ec);
        }
    }
    BufferedInput(const BufferedInput&) = delete;
    BufferedInput& operator=(const BufferedInput&) = delete;

    const std::filesystem::path& path() const noexcept { return path_; }

    std::string bytes() const {
        std::ifstream in(path_, std::ios::binary);
        if (!in) throw Error(ErrorCode::Io, "cannot read " + path_.string());
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }

private:
    std::filesystem::path path_;
    bool owned_ = false;
};

Json stats_json(const SpaceStats& s, bool extended) {
    Json j;
    j["fingerprints_stored"] = s.fingerprints_stored;
    j["assignment_entries"] = s.assignment_entries;
    j["buckets_nonempty"] = s.buckets_nonempty;
    j["kmismatch_space_words"] = s.kmismatch_space_words;
    if (extended) {
        j["candidates_checked"] = s.candidates_checked;
        j["cap_overflows"] = s.cap_overflows;
        j["max_bucket_assignment_entries"] = s.max_bucket_assignment_entries;
        j["assignment_bound_violations"] = s.assignment_bound_violations;
    }
    return j;
}

Json base_report(const RunConfig& c) {
    Json j;
    j["schema"] = 1;
    j["mode"] = mode_name(c.mode);
    j["n"] = 0;
    j["k_declared"] = c.k;
    j["k_found"] = 0;
    j["periods"] = Json::array();
    j["smallest_period"] = nullptr;
    j["flags"] = {{"promise_violations", Json::array()}};
    j["distance"] = nullptr;
    j["stats"] = stats_json({}, c.stats);
    j["seed"] = c.seed;
    return j;
}

void fill_periods(Json& j, const PeriodReport& r, const RunConfig& c) {
    j["n"] = r.n;
    j["k_found"] = r.k_found;
    j["periods"] = r.periods;
    if (r.smallest) j["smallest_period"] = *r.smallest;
    j["stats"] = stats_json(r.stats, c.stats);
}

ParseOptions parse_options(const RunConfig& c) { return ParseOptions{c.wildcard_marker, true}; }

Json run_mode(const RunConfig& c, const BufferedInput* buffered) {
    Json j = base_report(c);
    if (c.mode == Mode::Fixture) {
        if (!c.gap) throw Error(ErrorCode::InvalidParams, "fixture mode needs --gap");
        const HardInstance h = gen_hard_instance(c.n, c.k, *c.gap, c.seed);
        j["n"] = h.n;
        j["k_found"] = wildcard_count(h.s);
        j["fixture"] = {{"gap", h.gap}, {"nu", h.nu}, {"x", h.x}, {"y", h.y}, {"s", h.s.serialize(c.wildcard_marker)}};
        return j;
    }

    const BufferedInput& input = *buffered;
    switch (c.mode) {
    case Mode::Periods2Pass: {
        FileSource source(input.path(), parse_options(c));
        TwoPassConfig cfg;
        cfg.k = c.k;
        cfg.subroutine = c.subroutine;
        cfg.seed = c.seed;
        fill_periods(j, find_wildcard_periods(source, cfg), c);
        break;
    }
    case Mode::Periods1Pass: {
        FileSource source(input.path(), parse_options(c));
        OnePassConfig cfg;
        cfg.k = c.k;
        cfg.subroutine = c.subroutine;
        cfg.seed = c.seed;
        const OnePassReport r = onepass_periods(source, cfg);
        fill_periods(j, r.report, c);
        j["flags"]["promise_violations"] = r.promise_violations;
        j["flags"]["half_period"] = r.half_period;
        break;
    }
    case Mode::Oracle: {
        const WildcardString s = parse_stream(input.bytes(), parse_options(c));
        PeriodReport r;
        r.n = s.size();
        r.k_found = wildcard_count(s);
        r.periods = oracle_all_periods(s);
        if (!r.periods.empty()) r.smallest = r.periods.front();
        fill_periods(j, r, c);
        break;
    }
    case Mode::Distance: {
        if (!c.p) throw Error(ErrorCode::InvalidParams, "distance mode needs --p");
        const WildcardString s = parse_stream(input.bytes(), parse_options(c));
        FileSource source(input.path(), parse_options(c));
        const std::size_t estimate = c.estimator == Estimator::HeavyHitters
                                         ? delta_hh(source, *c.p, c.epsilon)
                                         : delta_de(source, *c.p, c.epsilon, c.delta, c.seed);
        j["n"] = s.size();
        j["k_found"] = wildcard_count(s);
        j["distance"] = {{"p", *c.p},
                         {"exact", delta_exact(s, *c.p)},
                         {"estimate", estimate},
                         {"estimator", c.estimator == Estimator::HeavyHitters ? "hh" : "de"},
                         {"epsilon", c.epsilon},
                         {"delta", c.delta}};
        break;
    }
    case Mode::Fixture:
        break;
    }
    return j;
}

} // namespace

std::uint64_t default_seed() {
    if (const char* env = std::getenv("WCP_SEED")) {
        try {
            return std::stoull(env, nullptr, 0);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidParams, std::string("WCP_SEED is not an integer: ") + env);
        }
    }
    return kDefaultSeed;
}

int run_cli(const RunConfig& config, std::ostream& out, std::ostream& err) {
    std::optional<BufferedInput> input;
    try {
        if (config.mode != Mode::Fixture) input.emplace(config.input);
        out << run_mode(config, input ? &*input : nullptr).dump(2) << '\n';
        return 0;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::TooManyWildcards) {
            Json j = base_report(config);
            try {
                const WildcardString s = parse_stream(input->bytes(), parse_options(config));
                j["n"] = s.size();
                j["k_found"] = wildcard_count(s);
            } catch (const Error&) {
            }
            err << "wcp: " << e.what() << '\n';
            out << j.dump(2) << '\n';
            return 1;
        }
        err << "wcp: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "wcp: " << e.what() << '\n';
        return 2;
    }
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Wildcard-period detection over a symbol stream"};
    RunConfig c;
    std::uint64_t seed = 0;
    std::string marker = "?";

    const std::map<std::string, Mode> modes{{"periods-2pass", Mode::Periods2Pass},
                                            {"periods-1pass", Mode::Periods1Pass},
                                            {"distance", Mode::Distance},
                                            {"oracle", Mode::Oracle},
                                            {"fixture", Mode::Fixture}};
    const std::map<std::string, Subroutine> subroutines{{"reference", Subroutine::Reference},
                                                        {"sketch", Subroutine::Sketch}};
    const std::map<std::string, Estimator> estimators{{"hh", Estimator::HeavyHitters},
                                                      {"de", Estimator::DistinctElements}};

    std::string mode, subroutine = "reference", estimator = "hh";
    app.add_option("--mode", mode, "periods-2pass | periods-1pass | distance | oracle | fixture")
        ->required()
        ->check(CLI::IsMember(modes));
    app.add_option("--k", c.k, "Wildcard bound");
    app.add_option("--p", c.p, "Period for distance mode")->check(CLI::PositiveNumber);
    app.add_option("--epsilon", c.epsilon, "Approximation parameter in (0, 1]")->check(CLI::Range(0.0, 1.0));
    app.add_option("--delta", c.delta, "Failure probability in (0, 1)")->check(CLI::Range(0.0, 1.0));
    app.add_option("--estimator", estimator, "Distance estimator: hh | de")->check(CLI::IsMember(estimators));
    app.add_option("--marker", marker, "Byte that denotes a wildcard")
        ->check([](const std::string& v) { return v.size() == 1 ? std::string() : "marker must be one byte"; });
    auto* seed_opt = app.add_option("--seed", seed, "Fingerprint and sketch seed (default: $WCP_SEED or 0x5eedf00d)");
    app.add_option("--subroutine", subroutine, "k-mismatch subroutine: reference | sketch")
        ->check(CLI::IsMember(subroutines));
    app.add_option("--input", c.input, "Input file, or - for stdin");
    app.add_flag("--stats", c.stats, "Include every space and work counter");
    app.add_option("--n", c.n, "Fixture length");
    app.add_option("--gap", c.gap, "Fixture gap, k/2 or k/2+1");

    try {
        app.parse(argc, argv);
        c.mode = modes.at(mode);
        c.subroutine = subroutines.at(subroutine);
        c.estimator = estimators.at(estimator);
        c.wildcard_marker = marker[0];
        c.seed = seed_opt->count() > 0 ? seed : default_seed();
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        const int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        err << "wcp: " << e.what() << '\n';
        return 2;
    }
    return run_cli(c, out, err);
}

} // namespace wcp::cli
