#include "stochlab/reaction.hpp"

#include "stochlab/rational_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stochlab {

void validate(const ReactionNetwork& net) {
    if (net.species.empty()) throw std::invalid_argument("reaction network: no species");
    if (net.reactions.empty()) throw std::invalid_argument("reaction network: no reactions");
    if (net.scale == 0) throw std::invalid_argument("reaction network: scale must be positive");
    for (const auto& r : net.reactions) {
        if (r.inputs.size() != net.species.size() || r.outputs.size() != net.species.size())
            throw std::invalid_argument("reaction network: alpha/beta length mismatch");
        if (!(r.rate_constant >= 0))
            throw std::invalid_argument("reaction network: negative rate constant");
    }
}

std::vector<double> propensity(const ReactionNetwork& net, const PopulationState& state) {
    std::vector<double> rates(net.reactions.size(), 0.0);
    for (std::size_t r = 0; r < net.reactions.size(); ++r) {
        const auto& rx = net.reactions[r];
        unsigned order = 0;
        double falling = 1.0;
        for (std::size_t i = 0; i < rx.inputs.size(); ++i) {
            order += rx.inputs[i];
            for (unsigned k = 0; k < rx.inputs[i]; ++k) {
                double factor = static_cast<double>(state.counts[i]) - k;
                falling *= std::max(factor, 0.0);
            }
        }
        double scale_pow = std::pow(static_cast<double>(net.scale), 1.0 - static_cast<double>(order));
        rates[r] = scale_pow * rx.rate_constant * falling;
    }
    return rates;
}

SsaRunner::SsaRunner(const ReactionNetwork& net, PopulationState state)
    : net_(net), state_(std::move(state)) {
    validate(net);
    if (state_.counts.size() != net.species.size())
        throw std::invalid_argument("ssa: state size mismatch");
}

bool SsaRunner::step(RandomStream& stream) {
    auto rates = propensity(net_, state_);
    double total = 0;
    for (double r : rates) total += r;
    if (total <= 0) return false;

    state_.time += -std::log(stream.next_uniform_pos()) / total;
    double u = stream.next_uniform() * total;
    std::size_t pick = rates.size() - 1;
    double acc = 0;
    for (std::size_t r = 0; r < rates.size(); ++r) {
        acc += rates[r];
        if (u < acc) {
            pick = r;
            break;
        }
    }
    const auto& rx = net_.reactions[pick];
    for (std::size_t i = 0; i < state_.counts.size(); ++i) {
        state_.counts[i] += static_cast<std::int64_t>(rx.outputs[i]) -
                            static_cast<std::int64_t>(rx.inputs[i]);
    }
    return true;
}

Trajectory ssa_run(const ReactionNetwork& net, const PopulationState& initial, double t_end,
                   RandomStream& stream, std::uint64_t max_events) {
    if (!(t_end > initial.time)) throw std::invalid_argument("ssa_run: t_end must exceed start time");
    SsaRunner runner(net, initial);
    Trajectory traj;
    auto record = [&](const PopulationState& st) {
        traj.times.push_back(st.time);
        std::vector<double> row(st.counts.size());
        for (std::size_t i = 0; i < row.size(); ++i) row[i] = static_cast<double>(st.counts[i]);
        traj.states.push_back(std::move(row));
    };
    record(initial);
    for (std::uint64_t ev = 0; ev < max_events; ++ev) {
        if (!runner.step(stream)) break; // absorbing state already recorded
        if (runner.state().time > t_end) break;
        record(runner.state());
    }
    return traj;
}

std::function<std::vector<double>(const std::vector<double>&)> mean_field(
    const ReactionNetwork& net) {
    validate(net);
    ReactionNetwork copy = net;
    return [copy](const std::vector<double>& c) {
        std::vector<double> dc(c.size(), 0.0);
        for (const auto& rx : copy.reactions) {
            double flux = rx.rate_constant;
            for (std::size_t j = 0; j < c.size(); ++j) {
                for (unsigned k = 0; k < rx.inputs[j]; ++k) flux *= c[j];
            }
            for (std::size_t i = 0; i < c.size(); ++i) {
                dc[i] += (static_cast<double>(rx.outputs[i]) - static_cast<double>(rx.inputs[i])) *
                         flux;
            }
        }
        return dc;
    };
}

Trajectory integrate(const std::function<std::vector<double>(const std::vector<double>&)>& rhs,
                     std::vector<double> c0, double t_end, double dt) {
    if (!(dt > 0)) throw std::invalid_argument("integrate: dt must be positive");
    Trajectory traj;
    std::vector<double> c = std::move(c0);
    double t = 0;
    traj.times.push_back(t);
    traj.states.push_back(c);
    const std::size_t m = c.size();
    std::vector<double> k1, k2, k3, k4, tmp(m);
    while (t < t_end - 1e-12) {
        double h = std::min(dt, t_end - t);
        k1 = rhs(c);
        for (std::size_t i = 0; i < m; ++i) tmp[i] = c[i] + 0.5 * h * k1[i];
        k2 = rhs(tmp);
        for (std::size_t i = 0; i < m; ++i) tmp[i] = c[i] + 0.5 * h * k2[i];
        k3 = rhs(tmp);
        for (std::size_t i = 0; i < m; ++i) tmp[i] = c[i] + h * k3[i];
        k4 = rhs(tmp);
        for (std::size_t i = 0; i < m; ++i)
            c[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        t += h;
        traj.times.push_back(t);
        traj.states.push_back(c);
    }
    return traj;
}

namespace {

std::vector<double> interpolate(const Trajectory& traj, double t) {
    // Piecewise-linear in the recorded grid.
    auto it = std::lower_bound(traj.times.begin(), traj.times.end(), t);
    if (it == traj.times.begin()) return traj.states.front();
    if (it == traj.times.end()) return traj.states.back();
    std::size_t hi = static_cast<std::size_t>(it - traj.times.begin());
    std::size_t lo = hi - 1;
    double w = (t - traj.times[lo]) / (traj.times[hi] - traj.times[lo]);
    std::vector<double> out(traj.states[lo].size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = (1 - w) * traj.states[lo][i] + w * traj.states[hi][i];
    return out;
}

} // namespace

double kurtz_gap(const ReactionNetwork& net, std::uint64_t scale, double t_end,
                 const std::vector<double>& c0, unsigned seeds, RandomStream& stream) {
    if (scale < 10) throw std::invalid_argument("kurtz_gap: requires N >= 10");
    ReactionNetwork scaled = net;
    scaled.scale = scale;

    auto ode = integrate(mean_field(net), c0, t_end, std::min(0.01, t_end / 100));

    std::vector<double> gaps;
    gaps.reserve(seeds);
    for (unsigned seed = 0; seed < seeds; ++seed) {
        RandomStream s = stream.split(seed);
        PopulationState init;
        init.counts.resize(c0.size());
        for (std::size_t i = 0; i < c0.size(); ++i)
            init.counts[i] = static_cast<std::int64_t>(std::llround(c0[i] * static_cast<double>(scale)));
        auto traj = ssa_run(scaled, init, t_end, s);
        double gap = 0;
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
            auto c = interpolate(ode, traj.times[k]);
            for (std::size_t i = 0; i < c.size(); ++i) {
                double diff = std::abs(traj.states[k][i] / static_cast<double>(scale) - c[i]);
                gap = std::max(gap, diff);
            }
        }
        gaps.push_back(gap);
    }
    std::sort(gaps.begin(), gaps.end());
    std::size_t n = gaps.size();
    return n % 2 ? gaps[n / 2] : 0.5 * (gaps[n / 2 - 1] + gaps[n / 2]);
}

std::vector<std::vector<BigRational>> conservation_laws(const ReactionNetwork& net) {
    validate(net);
    // mu is conserved iff mu . (beta - alpha) = 0 for every reaction: the
    // null space of the reaction-by-species difference matrix.
    RationalMatrix d(net.reactions.size(), std::vector<BigRational>(net.species.size()));
    for (std::size_t r = 0; r < net.reactions.size(); ++r) {
        for (std::size_t i = 0; i < net.species.size(); ++i) {
            d[r][i] = BigRational(static_cast<long>(net.reactions[r].outputs[i]) -
                                  static_cast<long>(net.reactions[r].inputs[i]));
        }
    }
    return null_space(std::move(d));
}

} // namespace stochlab
