#include "emit.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace stochlab::cli {

namespace {

void require_finite(double v, const std::string& where) {
    if (!std::isfinite(v))
        throw std::runtime_error("serialization error: non-finite value in " + where);
}

} // namespace

std::string report_to_json(const std::string& experiment, const ExperimentPlan& plan,
                           const Report& report) {
    nlohmann::ordered_json j;
    j["experiment"] = experiment;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [key, value] : plan.params) {
        require_finite(value, "params." + key);
        params[key] = value;
    }
    j["params"] = params;
    j["seed"] = plan.seed.value;
    j["replicas"] = report.replicas_used;
    require_finite(report.estimate, "estimate");
    require_finite(report.stderr_, "stderr");
    j["estimate"] = report.estimate;
    j["stderr"] = report.stderr_;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
        require_finite(c.expected, "checks." + c.name + ".expected");
        require_finite(c.observed, "checks." + c.name + ".observed");
        require_finite(c.tolerance, "checks." + c.name + ".tolerance");
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["expected"] = c.expected;
        jc["observed"] = c.observed;
        jc["tolerance"] = c.tolerance;
        jc["pass"] = c.pass;
        checks.push_back(jc);
    }
    j["checks"] = checks;
    j["elapsed_ms"] = report.elapsed_ms;
    return j.dump(2) + "\n";
}

std::string report_to_csv(const Report& report) {
    std::ostringstream out;
    out.imbue(std::locale::classic());
    out << "name,expected,observed,tolerance,pass\n";
    out.precision(17);
    for (const auto& c : report.checks) {
        require_finite(c.expected, "csv expected");
        require_finite(c.observed, "csv observed");
        out << c.name << ',' << c.expected << ',' << c.observed << ',' << c.tolerance << ','
            << (c.pass ? "true" : "false") << '\n';
    }
    return out.str();
}

std::string trajectory_to_csv(const std::vector<std::string>& columns,
                              const std::vector<double>& times,
                              const std::vector<std::vector<double>>& rows) {
    if (times.size() != rows.size()) throw std::invalid_argument("trajectory csv: shape mismatch");
    std::ostringstream out;
    out.imbue(std::locale::classic());
    out.precision(17);
    out << "time";
    for (const auto& c : columns) out << ',' << c;
    out << '\n';
    for (std::size_t k = 0; k < times.size(); ++k) {
        require_finite(times[k], "trajectory time");
        out << times[k];
        for (double v : rows[k]) {
            require_finite(v, "trajectory value");
            out << ',' << v;
        }
        out << '\n';
    }
    return out.str();
}

std::string render_svg(const std::vector<Series>& series, const std::string& title, bool log_log) {
    if (series.empty()) throw std::invalid_argument("svg: no series");
    for (const auto& s : series) {
        if (s.points.empty()) throw std::invalid_argument("svg: empty series " + s.name);
    }

    auto tx = [log_log](double v) {
        if (!log_log) return v;
        if (!(v > 0))
            throw std::invalid_argument("svg: log-log mode with nonpositive value " +
                                        std::to_string(v));
        return std::log10(v);
    };

    double xmin = 1e308, xmax = -1e308, ymin = 1e308, ymax = -1e308;
    for (const auto& s : series) {
        for (auto [x, y] : s.points) {
            double px = tx(x), py = tx(y);
            xmin = std::min(xmin, px);
            xmax = std::max(xmax, px);
            ymin = std::min(ymin, py);
            ymax = std::max(ymax, py);
        }
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;

    const double width = 640, height = 420, margin = 56;
    auto sx = [&](double x) { return margin + (tx(x) - xmin) / (xmax - xmin) * (width - 2 * margin); };
    auto sy = [&](double y) {
        return height - margin - (tx(y) - ymin) / (ymax - ymin) * (height - 2 * margin);
    };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    std::ostringstream out;
    out.imbue(std::locale::classic());
    out.precision(8);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "  <text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << title << (log_log ? " (log-log)" : "") << "</text>\n";
    // Axes.
    out << "  <line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\""
        << width - margin << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
    out << "  <line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
        << height - margin << "\" stroke=\"black\"/>\n";
    // Axis range labels.
    out << "  <text x=\"" << margin << "\" y=\"" << height - margin + 18
        << "\" font-size=\"11\">" << xmin << "</text>\n";
    out << "  <text x=\"" << width - margin << "\" y=\"" << height - margin + 18
        << "\" text-anchor=\"end\" font-size=\"11\">" << xmax << "</text>\n";
    out << "  <text x=\"" << margin - 6 << "\" y=\"" << height - margin
        << "\" text-anchor=\"end\" font-size=\"11\">" << ymin << "</text>\n";
    out << "  <text x=\"" << margin - 6 << "\" y=\"" << margin + 4
        << "\" text-anchor=\"end\" font-size=\"11\">" << ymax << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        out << "  <polyline fill=\"none\" stroke=\"" << palette[s % 5] << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (auto [x, y] : series[s].points) {
            if (!first) out << ' ';
            out << sx(x) << ',' << sy(y);
            first = false;
        }
        out << "\"/>\n";
        out << "  <text x=\"" << width - margin - 4 << "\" y=\"" << margin + 16 * (s + 1)
            << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << palette[s % 5] << "\">"
            << series[s].name << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace stochlab::cli
