#pragma once

#include "stochlab/rational.hpp"
#include "stochlab/rng.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace stochlab {

struct Reaction {
    std::vector<unsigned> inputs;  // alpha, one entry per species
    std::vector<unsigned> outputs; // beta
    double rate_constant;          // K >= 0
};

// Species, reactions (alpha, beta, K) and the population scale N. The jump
// rate of reaction (alpha, beta) at counts n is
//   N^(1 - sum alpha) * K * prod_i n_i (n_i - 1) ... (n_i - alpha_i + 1).
struct ReactionNetwork {
    std::vector<std::string> species;
    std::vector<Reaction> reactions;
    std::uint64_t scale = 1;
};

void validate(const ReactionNetwork& net);

struct PopulationState {
    std::vector<std::int64_t> counts;
    double time = 0;
};

struct Trajectory {
    std::vector<double> times;                       // strictly increasing
    std::vector<std::vector<double>> states;         // one row per time
};

std::vector<double> propensity(const ReactionNetwork& net, const PopulationState& state);

// Exact CTMC sample (direct-method stochastic simulation): exponential
// waiting time at the total rate, reaction chosen proportionally. A state
// with zero total rate is recorded as absorbing and the run stops there.
Trajectory ssa_run(const ReactionNetwork& net, const PopulationState& initial, double t_end,
                   RandomStream& stream, std::uint64_t max_events = UINT64_MAX);

// Same dynamics, but only the embedded jump chain is advanced; returns the
// per-event species counts (used for stationary histograms and return times).
struct SsaRunner {
    explicit SsaRunner(const ReactionNetwork& net, PopulationState state);
    // One jump; returns false from an absorbing state.
    bool step(RandomStream& stream);
    const PopulationState& state() const { return state_; }

  private:
    const ReactionNetwork& net_;
    PopulationState state_;
};

// Right-hand side of the mass-action concentration dynamics
//   dc_i/dt = sum_r (beta_i - alpha_i) K_r prod_j c_j^{alpha_j}.
std::function<std::vector<double>(const std::vector<double>&)> mean_field(
    const ReactionNetwork& net);

// Classical fourth-order Runge-Kutta on a fixed grid.
Trajectory integrate(const std::function<std::vector<double>(const std::vector<double>&)>& rhs,
                     std::vector<double> c0, double t_end, double dt);

// Median over seeds of sup_t |n(t)/N - c(t)| between the jump process and
// the concentration flow started from the same point.
double kurtz_gap(const ReactionNetwork& net, std::uint64_t scale, double t_end,
                 const std::vector<double>& c0, unsigned seeds, RandomStream& stream);

// Integer conservation laws: basis of the left null space of the
// stoichiometry matrix, exact.
std::vector<std::vector<BigRational>> conservation_laws(const ReactionNetwork& net);

} // namespace stochlab
