#pragma once

#include "stochlab/rng.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace stochlab {

struct Check {
    std::string name;
    double expected = 0;
    double observed = 0;
    double tolerance = 0;
    bool pass = false;
};

inline Check make_check(std::string name, double expected, double observed, double tolerance) {
    Check c{std::move(name), expected, observed, tolerance, false};
    c.pass = std::abs(c.expected - c.observed) <= c.tolerance;
    return c;
}

// A one-sided check encoded in the same record: pass iff observed <= bound.
inline Check make_upper_bound_check(std::string name, double bound, double observed) {
    Check c{std::move(name), bound, observed, 0.0, observed <= bound};
    return c;
}

struct Report {
    double estimate = 0;
    double stderr_ = 0;
    std::uint64_t replicas_used = 0;
    std::vector<Check> checks;
    std::int64_t elapsed_ms = 0;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

struct ExperimentPlan {
    std::string id;
    std::map<std::string, double> params;
    std::uint64_t replicas = 0; // 0 = use the experiment default
    Seed seed{0};
};

// Named experiment: a pure function of (params, replicas, seed). Everything
// the CLI and the acceptance suite run goes through this table.
struct ExperimentDef {
    std::string id;
    std::string summary;
    std::map<std::string, double> defaults;
    std::uint64_t default_replicas = 1;
    std::function<Report(const ExperimentPlan&)> run;
};

class ExperimentRegistry {
  public:
    static ExperimentRegistry& instance();

    void add(ExperimentDef def);
    const ExperimentDef* find(const std::string& id) const;
    std::vector<std::string> ids() const;

  private:
    std::map<std::string, ExperimentDef> defs_;
};

// Runs a registered experiment; deterministic given (id, params, seed).
// Throws std::out_of_range for an unknown id. elapsed_ms is wall time and
// is excluded from reproducibility comparisons.
Report run(const ExperimentPlan& plan);

// Registers every built-in experiment; idempotent.
void register_all_experiments();

} // namespace stochlab
