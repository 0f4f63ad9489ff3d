// randq: run experiments, list the catalog, run the acceptance suite.
//
// Exit codes: 0 ok, 1 check failure, 2 config error, 3 resource cap.
// RANDQ_WORKERS sets the worker count (default 1); output does not depend on it.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "randq/acceptance.hpp"
#include "randq/catalog.hpp"
#include "randq/experiment.hpp"
#include "randq/parallel.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitResource = 3;

int run_command(const std::string& config_path, const std::string& csv_override, const std::string& manifest_override)
{
    randq::ExperimentConfig config = randq::load_config(config_path);
    if (!csv_override.empty()) config.csv_path = csv_override;
    if (!manifest_override.empty()) config.manifest_path = manifest_override;
    const randq::ExperimentResult result = randq::run_experiment(config, randq::worker_count_from_env());

    if (config.csv_path.empty() || config.csv_path == "-") {
        randq::write_csv(std::cout, config, result);
    } else {
        std::ofstream out(config.csv_path);
        if (!out) throw randq::ConfigError("csv", "cannot write '" + config.csv_path + "'");
        randq::write_csv(out, config, result);
    }
    if (!config.manifest_path.empty()) {
        std::ofstream out(config.manifest_path);
        if (!out) throw randq::ConfigError("manifest", "cannot write '" + config.manifest_path + "'");
        out << randq::run_manifest(config, result).dump(2) << "\n";
    }
    if (!result.all_checks_passed()) {
        std::cerr << "randq: some checks failed; see the checks column\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}

int catalog_command(const std::string& filter)
{
    for (const randq::CatalogEntry& e : randq::list_catalog(filter)) {
        std::cout << e.kind << '\t' << e.name << '\t' << e.oracle << '\t' << e.description << '\n';
    }
    return kExitOk;
}

int check_command(const std::vector<int>& ids)
{
    for (int id : ids) {
        if (id < 1 || id > randq::kAcceptanceCount) {
            throw randq::ConfigError("criterion", "no acceptance criterion " + std::to_string(id));
        }
    }
    bool all = true;
    for (const randq::AcceptanceResult& r : randq::run_acceptance(ids, randq::worker_count_from_env())) {
        std::cout << randq::format_acceptance_line(r) << std::endl;
        all = all && r.passed;
    }
    return all ? kExitOk : kExitCheckFailed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Quantum summation and integration experiments with randomized queries"};
    app.require_subcommand(1);

    std::string config_path;
    std::string csv_path;
    std::string manifest_path;
    CLI::App* run = app.add_subcommand("run", "Run an experiment config and write CSV (stdout by default)");
    run->add_option("config", config_path, "Config file (key = value lines)")->required();
    run->add_option("--csv", csv_path, "CSV output path, overriding the config");
    run->add_option("--manifest", manifest_path, "JSON run manifest path, overriding the config");

    std::string filter;
    CLI::App* catalog = app.add_subcommand("catalog", "List problems and test functions with their ground truth");
    catalog->add_option("filter", filter, "Keep entries whose kind or name contains this text");

    std::vector<int> ids;
    CLI::App* check = app.add_subcommand("check", "Run the acceptance criteria (all when none given)");
    check->add_option("criteria", ids, "Criterion numbers");

    app.add_subcommand("version", "Print the version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run) return run_command(config_path, csv_path, manifest_path);
        if (*catalog) return catalog_command(filter);
        if (*check) return check_command(ids);
        std::cout << "randq " << randq::kVersion << " (csv schema " << randq::kCsvSchemaVersion << ")\n";
        return kExitOk;
    } catch (const randq::ConfigError& e) {
        std::cerr << "randq: config error in '" << e.field() << "': " << e.what() << "\n";
        return kExitConfig;
    } catch (const randq::ResourceLimitError& e) {
        std::cerr << "randq: resource cap exceeded: " << e.what() << "; reduce size or raise epsilon\n";
        return kExitResource;
    } catch (const randq::QubitCapExceeded& e) {
        std::cerr << "randq: resource cap exceeded: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::invalid_argument& e) {
        std::cerr << "randq: invalid config: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "randq: " << e.what() << "\n";
        return kExitCheckFailed;
    }
}
