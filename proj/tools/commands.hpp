#pragma once

#include <string>

#include <json.hpp>

#include "trigprec/config.hpp"

namespace trigprec::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kUsage = 1, kViolation = 2 };

int run_project(const ExperimentConfig& cfg);
int run_cluster_scan(const ExperimentConfig& cfg);
int run_korovkin_test(const ExperimentConfig& cfg);
int run_lpo_rates(const ExperimentConfig& cfg, bool remainder, bool quadrature);
int run_operator_scan(const ExperimentConfig& cfg);
int run_pcg_bench(const ExperimentConfig& cfg);
int run_selftest(const ExperimentConfig& cfg);

/// The resolved parameters a subcommand would run with.
Json plan(const std::string& subcommand, const ExperimentConfig& cfg, bool remainder, bool quadrature);

/// Writes text to <out>/<name>, creating the directory.
void write_artifact(const ExperimentConfig& cfg, const std::string& name, const std::string& text);

} // namespace trigprec::cli
