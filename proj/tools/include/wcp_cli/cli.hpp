#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "wcp/mismatch.hpp"

namespace wcp::cli {

enum class Mode { Periods2Pass, Periods1Pass, Distance, Oracle, Fixture };
enum class Estimator { HeavyHitters, DistinctElements };

struct RunConfig {
    Mode mode = Mode::Periods2Pass;
    std::size_t k = 0;
    std::optional<std::size_t> p;
    double epsilon = 0.5;
    double delta = 0.1;
    Estimator estimator = Estimator::HeavyHitters;
    char wildcard_marker = '?';
    std::uint64_t seed = 0;
    Subroutine subroutine = Subroutine::Reference;
    std::string input = "-";  // "-" reads stdin
    bool stats = false;
    // fixture mode
    std::size_t n = 0;
    std::optional<std::size_t> gap;
};

/// Seed used when --seed is absent: WCP_SEED if set, else kDefaultSeed.
std::uint64_t default_seed();

/// Runs one configuration, writing the JSON report to `out` and diagnostics
/// to `err`. Returns 0 on success, 1 when more than k wildcards were found,
/// 2 on configuration or input errors.
int run_cli(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv with CLI11 and runs it.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace wcp::cli
