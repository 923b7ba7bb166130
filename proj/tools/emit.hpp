#pragma once

#include "stochlab/report.hpp"

#include <string>
#include <utility>
#include <vector>

namespace stochlab::cli {

// Fixed-schema JSON record with keys in this order: experiment, params,
// seed, replicas, estimate, stderr, checks, elapsed_ms. Non-finite numbers
// are serialization errors.
std::string report_to_json(const std::string& experiment, const ExperimentPlan& plan,
                           const Report& report);

// One row per check: name,expected,observed,tolerance,pass.
std::string report_to_csv(const Report& report);

// time,<species...> rows, strictly increasing time column.
std::string trajectory_to_csv(const std::vector<std::string>& columns,
                              const std::vector<double>& times,
                              const std::vector<std::vector<double>>& rows);

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

// Self-contained SVG with axes, one polyline per series and a title.
// log_log draws both axes in log10; any nonpositive coordinate is an error
// that names the offending value.
std::string render_svg(const std::vector<Series>& series, const std::string& title, bool log_log);

} // namespace stochlab::cli
