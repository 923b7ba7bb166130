#pragma once

#include "stochlab/report.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stochlab::cli {

enum class OutputFormat { json, csv };

struct RunConfig {
    std::string subcommand;                       // sample | exact | ... | list
    std::string experiment;                       // empty for list
    std::map<std::string, std::string> parameters;
    Seed seed{0};
    std::uint64_t replicas = 0;                   // 0 = experiment default
    OutputFormat out = OutputFormat::json;
    std::optional<std::string> output_path;
    std::optional<std::string> plot_path;
};

struct UsageError {
    std::string message;
};

// argv (excluding the program name) to a validated configuration. Throws
// UsageError for anything malformed; the caller maps that to exit code 2.
// STOCHLAB_SEED provides the default seed when --seed is absent.
RunConfig parse_args(const std::vector<std::string>& argv);

// Runs the configured experiment and writes the report (and optional plot).
// Returns the process exit code: 0 when all checks pass, 1 otherwise.
int execute(const RunConfig& config);

// Registered experiment ids as (subcommand, name, summary) rows.
std::vector<std::array<std::string, 3>> experiment_listing();

} // namespace stochlab::cli
