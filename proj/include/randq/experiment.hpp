#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "randq/amplitude_estimation.hpp"
#include "randq/error_metrics.hpp"

namespace randq {

inline constexpr const char* kVersion = "0.1.0";
/// Bumped whenever the CSV columns change.
inline constexpr int kCsvSchemaVersion = 1;

/// A configuration problem; `field` names the offending key.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& message)
        : std::invalid_argument(message), field_(std::move(field))
    {
    }
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// Flat `key = value` configuration; lists are comma separated, `#` starts a
/// comment. Keys: problem, variants, epsilon, delta, size, dimension,
/// smoothness, functions, omega_draws, seed, backend, csv, manifest.
struct ExperimentConfig {
    std::string problem;
    std::vector<std::string> variants{"randomized"};
    std::vector<double> epsilons;
    std::vector<double> deltas{0.25};
    std::uint64_t size = 256;
    int dimension = 1;
    int smoothness = 1;
    /// Catalog function names; empty selects the whole suite.
    std::vector<std::string> functions;
    int omega_draws = 100;
    std::optional<std::uint64_t> seed;
    Backend backend = Backend::analytic;
    std::string csv_path;
    std::string manifest_path;

    /// Throws ConfigError naming the first invalid field.
    void validate() const;
    /// Sorted key=value lines covering every field that affects results.
    std::string canonical() const;
    /// FNV-1a of canonical(), as 16 hex digits.
    std::string hash() const;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

std::vector<std::string> problem_names();
/// Variants implemented for a problem.
std::vector<std::string> problem_variants(const std::string& problem);

/// One (variant, epsilon) cell of an experiment.
struct ExperimentCell {
    std::string variant;
    double epsilon = 0.0;
    ErrorReport report;
    /// "yes"/"no" when a Boolean information bound applies to a randomized
    /// run, "na" otherwise.
    std::string separation = "na";
};

struct ExperimentResult {
    std::vector<ExperimentCell> cells;
    bool all_checks_passed() const;
};

/// Cells are evaluated in sorted (variant, epsilon) order, each from its own
/// stream derived from the seed, so output is independent of worker count.
ExperimentResult run_experiment(const ExperimentConfig& config, int workers = 1);

std::vector<std::string> csv_columns();
void write_csv(std::ostream& out, const ExperimentConfig& config, const ExperimentResult& result);
nlohmann::json run_manifest(const ExperimentConfig& config, const ExperimentResult& result);

} // namespace randq
