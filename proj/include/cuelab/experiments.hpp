#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace cuelab {

/// Parameters of one experiment run. Fields an experiment does not use are
/// ignored; `sizes` and `delta` only matter for determinant experiments.
struct ExperimentConfig {
    std::string experiment;
    std::size_t n = 0;
    std::size_t k = 0;
    double alpha = 0.0;
    double beta = 0.0;
    std::size_t samples = 0;
    std::size_t grid_size = 0;
    std::uint64_t seed = 0;
    std::string output_path;
    std::size_t workers = 1;
    std::vector<std::size_t> sizes;
    double delta = 0.0;
};

/// Names accepted by run_experiment.
const std::vector<std::string>& experiment_names();

/// Defaults for `name`; throws ConfigError("experiment") for unknown names.
ExperimentConfig default_config(const std::string& name);

/// Starts from default_config(j["experiment"] or `name`) and overrides with
/// the fields present in `j`. Unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j, const std::string& name = "");
nlohmann::json config_to_json(const ExperimentConfig& c);

/// Throws ConfigError naming the first invalid field.
void validate_config(const ExperimentConfig& c);

/// One comparison of a computed value with its oracle.
struct Check {
    std::string name;
    double value = 0.0;
    double oracle = 0.0;
    std::string provenance;  ///< where the oracle value comes from
    std::string criterion;   ///< e.g. "|value-oracle| <= 3 se"
    double tolerance = 0.0;
    double std_error = 0.0;  ///< combined standard error for statistical checks
    bool pass = false;
};

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::string build_id;
    std::vector<Check> checks;
    std::vector<Table> tables;

    bool passed() const;
    const Check& check(const std::string& name) const;
    const Table& table(const std::string& name) const;
    nlohmann::json to_json() const;
};

std::string build_id();

ExperimentReport run_experiment(const ExperimentConfig& config);

/// CSV text of a table: header row, comma-separated, LF endings, %.17g values.
std::string table_to_csv(const Table& t);

/// Writes <dir>/<experiment>.json and <dir>/<experiment>_<table>.csv.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);

}  // namespace cuelab
