#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "commands.hpp"
#include "trigprec/config.hpp"
#include "trigprec/errors.hpp"

namespace {

using namespace trigprec;

// Command-line spelling of each config key: underscores become dashes.
std::string flag_of(const std::string& key)
{
    std::string flag = "--" + key;
    for (auto& c : flag)
        if (c == '_') c = '-';
    return flag;
}

int dispatch(const std::string& sub, const ExperimentConfig& cfg, bool remainder, bool quadrature)
{
    if (sub == "project") return cli::run_project(cfg);
    if (sub == "cluster-scan") return cli::run_cluster_scan(cfg);
    if (sub == "korovkin-test") return cli::run_korovkin_test(cfg);
    if (sub == "lpo-rates") return cli::run_lpo_rates(cfg, remainder, quadrature);
    if (sub == "operator-scan") return cli::run_operator_scan(cfg);
    if (sub == "pcg-bench") return cli::run_pcg_bench(cfg);
    return cli::run_selftest(cfg);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Matrix-algebra approximation and clustering experiments", "trigprec"};
    app.require_subcommand(1);

    std::string config_path;
    bool dry_run = false;
    bool remainder = false;
    bool quadrature = false;
    std::map<std::string, std::string> settings;

    app.add_option("--config", config_path, "File of key = value settings; flags override it");
    app.add_flag("--dry-run", dry_run, "Print the resolved plan and exit");
    for (const auto& key : config_keys()) {
        if (key == "timings") continue;
        app.add_option_function<std::string>(flag_of(key), [&settings, key](const std::string& v) { settings[key] = v; },
                                             "Overrides the '" + key + "' setting");
    }
    app.add_flag_callback("--timings", [&settings] { settings["timings"] = "true"; }, "Write measured wall times to the CSV");

    const std::vector<std::pair<std::string, std::string>> subcommands{
        {"project", "Project T_n(f) onto an algebra and check the projection identities"},
        {"cluster-scan", "Classify the cluster of T_n(f) against its algebra projection"},
        {"korovkin-test", "Check that a strong test set implies strong clustering on products and holdouts"},
        {"lpo-rates", "Sup-norm errors and rates of the linear positive operators"},
        {"operator-scan", "Distribution convergence for truncations of a catalog operator"},
        {"pcg-bench", "PCG iteration counts with and without algebra preconditioners"},
        {"selftest", "Run the invariant suite"},
    };
    for (const auto& [name, help] : subcommands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->fallthrough();
        if (name == "lpo-rates") {
            sub->add_flag("--remainder", remainder, "Also measure remainder propagation to products");
            sub->add_flag("--quadrature", quadrature, "Also compare grid sums with integrals");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cli::kOk : cli::kUsage;
    }
    const std::string sub = app.get_subcommands().front()->get_name();

    try {
        ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
        for (const auto& [key, value] : settings) apply_setting(cfg, key, value);
        if (dry_run) {
            std::cout << cli::plan(sub, cfg, remainder, quadrature).dump(2) << '\n';
            return cli::kOk;
        }
        return dispatch(sub, cfg, remainder, quadrature);
    } catch (const InvariantViolation& e) {
        std::cerr << "trigprec " << sub << ": invariant violated: " << e.what() << '\n';
        return cli::kViolation;
    } catch (const std::exception& e) {
        std::cerr << "trigprec " << sub << ": " << e.what() << '\n';
        return cli::kUsage;
    }
}
