#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "trigprec/linalg.hpp"

namespace trigprec {

/// Parameters shared by the experiment subcommands. Fields left unset fall
/// back to per-subcommand defaults.
struct ExperimentConfig {
    std::string algebra = "fourier";
    std::optional<std::string> symbol;
    std::string source = "hs_decay(1.5)";
    std::optional<std::vector<Index>> ladder;
    std::vector<double> eps{0.2, 0.1, 0.05, 0.01};
    std::string testset = "classical";
    std::vector<std::string> generators{"preset:cos", "preset:sin"};
    std::vector<std::string> holdout{"preset:2+cos+0.5cos2"};
    std::string variant = "squares";
    std::string mode = "difference";
    std::vector<std::string> preconds{"none", "algebra_projection"};
    std::string out = "results";
    std::uint64_t seed = 42;
    double tolerance = 1e-10;
    Index plateau_tolerance = 1;
    double weak_slope = 0.8;
    double bounded_ratio = 1.2;
    double remainder_factor = 10.0;
    Index pinch_block = 2;
    bool timings = false;

    /// Keys assigned so far, by a config file or the command line.
    std::set<std::string> assigned;

    std::vector<Index> ladder_or(const std::vector<Index>& fallback) const { return ladder ? *ladder : fallback; }
};

/// Every key accepted in a config file.
const std::vector<std::string>& config_keys();

/// Assigns one `key = value` setting. Throws ParseError (carrying `line`) on
/// an unknown key or a malformed value.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value, int line = 0);

/// Parses `key = value` lines; `#` starts a comment. Unknown and repeated
/// keys raise ParseError with the offending line number.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

/// Comma-separated lists. Ladders must be strictly increasing and positive,
/// eps values positive.
std::vector<Index> parse_ladder(const std::string& text);
std::vector<double> parse_eps(const std::string& text);
std::vector<std::string> split_list(const std::string& text);

} // namespace trigprec
