#include "trigprec/config.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

namespace trigprec {

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double to_double(const std::string& text)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ParseError("not a number: '" + text + "'", 0);
    }
    if (used != text.size()) throw ParseError("not a number: '" + text + "'", 0);
    return v;
}

long long to_integer(const std::string& text)
{
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(text, &used);
    } catch (const std::exception&) {
        throw ParseError("not an integer: '" + text + "'", 0);
    }
    if (used != text.size()) throw ParseError("not an integer: '" + text + "'", 0);
    return v;
}

bool to_bool(const std::string& text)
{
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw ParseError("not a boolean: '" + text + "'", 0);
}

void require_one_of(const std::string& value, std::initializer_list<const char*> allowed, const std::string& key)
{
    for (const char* a : allowed)
        if (value == a) return;
    throw ParseError("invalid value '" + value + "' for " + key, 0);
}

} // namespace

const std::vector<std::string>& config_keys()
{
    static const std::vector<std::string> keys{
        "algebra",   "symbol",     "source",          "ladder",      "eps",           "testset",
        "generators", "holdout",   "variant",         "mode",        "preconds",      "out",
        "seed",      "tolerance",  "plateau_tolerance", "weak_slope", "bounded_ratio", "remainder_factor",
        "pinch_block", "timings"};
    return keys;
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ParseError("empty item in list '" + text + "'", 0);
        out.push_back(item);
    }
    if (out.empty()) throw ParseError("empty list", 0);
    return out;
}

std::vector<Index> parse_ladder(const std::string& text)
{
    std::vector<Index> ladder;
    for (const auto& item : split_list(text)) {
        const long long v = to_integer(item);
        if (v < 1) throw ParseError("ladder sizes must be positive", 0);
        if (!ladder.empty() && v <= ladder.back()) throw ParseError("ladder must be strictly increasing", 0);
        ladder.push_back(static_cast<Index>(v));
    }
    return ladder;
}

std::vector<double> parse_eps(const std::string& text)
{
    std::vector<double> eps;
    for (const auto& item : split_list(text)) {
        const double v = to_double(item);
        if (!(v > 0.0)) throw ParseError("eps values must be positive", 0);
        eps.push_back(v);
    }
    return eps;
}

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value, int line)
{
    try {
        if (key == "algebra") {
            require_one_of(value, {"fourier", "sine", "hartley", "custom"}, key);
            cfg.algebra = value;
        } else if (key == "symbol") cfg.symbol = value;
        else if (key == "source") cfg.source = value;
        else if (key == "ladder") cfg.ladder = parse_ladder(value);
        else if (key == "eps") cfg.eps = parse_eps(value);
        else if (key == "testset") {
            require_one_of(value, {"classical", "fourier_basic"}, key);
            cfg.testset = value;
        } else if (key == "generators") cfg.generators = split_list(value);
        else if (key == "holdout") cfg.holdout = value == "none" ? std::vector<std::string>{} : split_list(value);
        else if (key == "variant") {
            require_one_of(value, {"squares", "sum"}, key);
            cfg.variant = value;
        } else if (key == "mode") {
            require_one_of(value, {"difference", "preconditioned"}, key);
            cfg.mode = value;
        } else if (key == "preconds") {
            for (const auto& p : split_list(value)) require_one_of(p, {"none", "algebra_projection", "pinched"}, key);
            cfg.preconds = split_list(value);
        } else if (key == "out") {
            if (value.empty()) throw ParseError("out must not be empty", 0);
            cfg.out = value;
        } else if (key == "seed") {
            const long long v = to_integer(value);
            if (v < 0) throw ParseError("seed must be nonnegative", 0);
            cfg.seed = static_cast<std::uint64_t>(v);
        } else if (key == "tolerance") {
            cfg.tolerance = to_double(value);
            if (!(cfg.tolerance > 0.0)) throw ParseError("tolerance must be positive", 0);
        } else if (key == "plateau_tolerance") {
            cfg.plateau_tolerance = static_cast<Index>(to_integer(value));
            if (cfg.plateau_tolerance < 0) throw ParseError("plateau_tolerance must be nonnegative", 0);
        } else if (key == "weak_slope") cfg.weak_slope = to_double(value);
        else if (key == "bounded_ratio") cfg.bounded_ratio = to_double(value);
        else if (key == "remainder_factor") cfg.remainder_factor = to_double(value);
        else if (key == "pinch_block") {
            cfg.pinch_block = static_cast<Index>(to_integer(value));
            if (cfg.pinch_block < 1) throw ParseError("pinch_block must be positive", 0);
        } else if (key == "timings") cfg.timings = to_bool(value);
        else throw ParseError("unknown key '" + key + "'", 0);
    } catch (const ParseError& e) {
        if (line > 0 && e.line() == 0) throw ParseError(e.what(), line);
        throw;
    }
    cfg.assigned.insert(key);
}

ExperimentConfig parse_config(std::istream& in)
{
    ExperimentConfig cfg;
    std::set<std::string> seen;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw ParseError("expected `key = value`", line);
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty()) throw ParseError("missing key", line);
        if (std::find(config_keys().begin(), config_keys().end(), key) == config_keys().end())
            throw ParseError("unknown key '" + key + "'", line);
        if (!seen.insert(key).second) throw ParseError("duplicate key '" + key + "'", line);
        apply_setting(cfg, key, value, line);
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file " + path, 0);
    return parse_config(in);
}

} // namespace trigprec
