#include "cli.hpp"

#include "emit.hpp"
#include "stochlab/models.hpp"
#include "stochlab/reaction.hpp"

#include <array>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace stochlab::cli {

namespace {

const std::set<std::string> kSubcommands = {"sample", "exact", "limits", "macro",
                                            "mcmc",   "sde",   "graph",  "list"};

// Experiments whose plotted series live on power-law scales.
const std::set<std::string> kLogLogPlots = {"limits.holtsmark", "limits.return-time",
                                            "graph.buckley-osthus", "graph.zipf", "graph.heaps"};

std::uint64_t parse_u64(const std::string& text, const std::string& flag) {
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw UsageError{"invalid value for " + flag + ": " + text};
    }
}

double parse_double(const std::string& text, const std::string& flag) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw UsageError{"invalid numeric value for " + flag + ": " + text};
    }
}

// Trajectory producers for --out csv / --plot on trajectory experiments.
struct TrajectoryData {
    std::vector<std::string> columns;
    std::vector<double> times;
    std::vector<std::vector<double>> rows;
};

std::optional<TrajectoryData> make_trajectory(const std::string& id, const ExperimentPlan& plan) {
    RandomStream stream{plan.seed};
    if (id == "macro.ehrenfest") {
        auto it = plan.params.find("n");
        std::uint64_t n = it == plan.params.end() ? 100 : static_cast<std::uint64_t>(it->second);
        auto tt = plan.params.find("t");
        double t_end = tt == plan.params.end() ? 10.0 : tt->second;
        auto net = ehrenfest_network(n);
        PopulationState init;
        init.counts = {static_cast<std::int64_t>(n), 0};
        auto traj = ssa_run(net, init, t_end, stream);
        return TrajectoryData{net.species, traj.times, traj.states};
    }
    if (id == "macro.kac-ring") {
        auto np = plan.params.find("n");
        std::uint64_t n = np == plan.params.end() ? 1000 : static_cast<std::uint64_t>(np->second);
        auto mp = plan.params.find("mu");
        double mu = mp == plan.params.end() ? 0.1 : mp->second;
        auto tp = plan.params.find("t");
        auto t_steps = tp == plan.params.end() ? 50 : static_cast<std::uint64_t>(tp->second);
        auto res = kac_ring(n, mu, t_steps, stream);
        TrajectoryData data;
        data.columns = {"color_difference"};
        for (std::size_t k = 0; k < res.difference.size(); ++k) {
            data.times.push_back(static_cast<double>(k));
            data.rows.push_back({res.difference[k]});
        }
        return data;
    }
    return std::nullopt;
}

} // namespace

RunConfig parse_args(const std::vector<std::string>& argv) {
    if (argv.empty()) throw UsageError{"missing subcommand"};
    RunConfig config;
    config.subcommand = argv[0];
    if (!kSubcommands.count(config.subcommand))
        throw UsageError{"unknown subcommand: " + config.subcommand};

    if (const char* env_seed = std::getenv("STOCHLAB_SEED")) {
        config.seed.value = parse_u64(env_seed, "STOCHLAB_SEED");
    }

    std::size_t pos = 1;
    if (config.subcommand != "list") {
        if (pos >= argv.size() || argv[pos].rfind("--", 0) == 0)
            throw UsageError{"missing experiment name for subcommand " + config.subcommand};
        config.experiment = argv[pos++];
    }

    for (; pos < argv.size(); ++pos) {
        const std::string& flag = argv[pos];
        if (flag.rfind("--", 0) != 0) throw UsageError{"expected a --flag, got: " + flag};
        if (pos + 1 >= argv.size()) throw UsageError{"flag needs a value: " + flag};
        const std::string& value = argv[++pos];
        std::string name = flag.substr(2);
        if (name == "seed") {
            config.seed.value = parse_u64(value, flag);
        } else if (name == "replicas") {
            config.replicas = parse_u64(value, flag);
            if (config.replicas < 1) throw UsageError{"--replicas must be >= 1"};
        } else if (name == "out") {
            if (value == "json") config.out = OutputFormat::json;
            else if (value == "csv") config.out = OutputFormat::csv;
            else throw UsageError{"--out must be json or csv"};
        } else if (name == "output") {
            config.output_path = value;
        } else if (name == "plot") {
            config.plot_path = value;
        } else {
            parse_double(value, flag); // per-experiment flags are numeric
            config.parameters[name] = value;
        }
    }
    return config;
}

std::vector<std::array<std::string, 3>> experiment_listing() {
    register_all_experiments();
    std::vector<std::array<std::string, 3>> rows;
    for (const auto& id : ExperimentRegistry::instance().ids()) {
        auto dot = id.find('.');
        const auto* def = ExperimentRegistry::instance().find(id);
        rows.push_back({id.substr(0, dot), id.substr(dot + 1), def->summary});
    }
    return rows;
}

int execute(const RunConfig& config) {
    register_all_experiments();

    if (config.subcommand == "list") {
        std::ostringstream out;
        for (const auto& [module, name, summary] : experiment_listing()) {
            out << module << ' ' << name << " - " << summary << '\n';
        }
        std::cout << out.str();
        return 0;
    }

    const std::string id = config.subcommand + "." + config.experiment;
    const ExperimentDef* def = ExperimentRegistry::instance().find(id);
    if (!def) throw UsageError{"unknown experiment: " + config.subcommand + " " + config.experiment};

    ExperimentPlan plan;
    plan.id = id;
    plan.seed = config.seed;
    plan.replicas = config.replicas;
    for (const auto& [key, value] : config.parameters) {
        plan.params[key] = parse_double(value, "--" + key);
    }
    // Defaults are made visible in the emitted params block.
    for (const auto& [key, value] : def->defaults) plan.params.emplace(key, value);

    Report report = run(plan);

    std::string body;
    auto trajectory = config.out == OutputFormat::csv ? make_trajectory(id, plan) : std::nullopt;
    if (config.out == OutputFormat::csv) {
        body = trajectory ? trajectory_to_csv(trajectory->columns, trajectory->times,
                                              trajectory->rows)
                          : report_to_csv(report);
    } else {
        body = report_to_json(id, plan, report);
    }

    if (config.output_path) {
        std::ofstream file(*config.output_path);
        if (!file) throw std::runtime_error("cannot open output file: " + *config.output_path);
        file << body;
    } else {
        std::cout << body;
    }

    if (config.plot_path) {
        std::vector<Series> series;
        bool log_log = kLogLogPlots.count(id) > 0;
        auto plot_trajectory = make_trajectory(id, plan);
        if (plot_trajectory) {
            for (std::size_t col = 0; col < plot_trajectory->columns.size(); ++col) {
                Series s;
                s.name = plot_trajectory->columns[col];
                for (std::size_t k = 0; k < plot_trajectory->times.size(); ++k)
                    s.points.emplace_back(plot_trajectory->times[k], plot_trajectory->rows[k][col]);
                series.push_back(std::move(s));
            }
            log_log = false;
        } else {
            Series expected{"expected", {}}, observed{"observed", {}};
            for (std::size_t k = 0; k < report.checks.size(); ++k) {
                expected.points.emplace_back(static_cast<double>(k + 1), report.checks[k].expected);
                observed.points.emplace_back(static_cast<double>(k + 1), report.checks[k].observed);
            }
            series.push_back(std::move(expected));
            series.push_back(std::move(observed));
        }
        std::ofstream file(*config.plot_path);
        if (!file) throw std::runtime_error("cannot open plot file: " + *config.plot_path);
        file << render_svg(series, id, log_log);
    }

    return report.all_pass() ? 0 : 1;
}

} // namespace stochlab::cli
