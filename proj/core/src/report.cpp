#include "stochlab/report.hpp"

#include <chrono>
#include <stdexcept>

namespace stochlab {

ExperimentRegistry& ExperimentRegistry::instance() {
    static ExperimentRegistry registry;
    return registry;
}

void ExperimentRegistry::add(ExperimentDef def) {
    defs_[def.id] = std::move(def);
}

const ExperimentDef* ExperimentRegistry::find(const std::string& id) const {
    auto it = defs_.find(id);
    return it == defs_.end() ? nullptr : &it->second;
}

std::vector<std::string> ExperimentRegistry::ids() const {
    std::vector<std::string> out;
    out.reserve(defs_.size());
    for (const auto& [id, def] : defs_) out.push_back(id);
    return out;
}

Report run(const ExperimentPlan& plan) {
    register_all_experiments();
    const ExperimentDef* def = ExperimentRegistry::instance().find(plan.id);
    if (!def) throw std::out_of_range("unknown experiment id: " + plan.id);

    ExperimentPlan filled = plan;
    if (filled.replicas == 0) filled.replicas = def->default_replicas;
    for (const auto& [key, value] : def->defaults) {
        filled.params.emplace(key, value);
    }
    auto t0 = std::chrono::steady_clock::now();
    Report report = def->run(filled);
    auto t1 = std::chrono::steady_clock::now();
    report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return report;
}

} // namespace stochlab
