#pragma once

#include "stochlab/power_series.hpp"
#include "stochlab/reaction.hpp"
#include "stochlab/report.hpp"
#include "stochlab/rng.hpp"

#include <cstdint>
#include <vector>

namespace stochlab {

// Two-species flea model: 1 -> 2 and 2 -> 1, each at rate lambda per flea.
ReactionNetwork ehrenfest_network(std::uint64_t n_fleas, double lambda = 1.0);

// Birth-death chain with rates lambda(x) = 1 + 3x^2, mu(x) = 3x + x^3 in
// concentration units; the mean-field drift is -(x - 1)^3.
ReactionNetwork schlogl_network(std::uint64_t scale);

struct EhrenfestChecks {
    Report stationary;     // chi-square of the embedded chain vs Binomial(N, 1/2)
    Report concentration;  // P(|n1 - n2|/N <= 5/sqrt N) at t >= 10 N
    Report return_time;    // embedded-chain mean return to the all-on-one-dog state
};
// The three classic checks; each runs on its own split of the stream.
Report ehrenfest_stationary_check(std::uint64_t n_fleas, std::uint64_t embedded_steps,
                                  RandomStream& stream);
Report ehrenfest_concentration_check(std::uint64_t n_fleas, unsigned replicas,
                                     RandomStream& stream);
Report ehrenfest_return_time_check(std::uint64_t n_fleas, unsigned returns, RandomStream& stream);

// One exchange step: a random pair, one coin moves per the bankruptcy rule.
// Runs `steps` exchanges from the all-equal state and returns the final
// wealth histogram over coin counts.
std::vector<std::uint64_t> money_exchange(std::uint64_t n_agents, std::uint64_t coins_each,
                                          std::uint64_t steps, RandomStream& stream);
Report money_exchange_check(std::uint64_t n_agents, std::uint64_t coins_each,
                            RandomStream& stream);

struct KacRingResult {
    std::vector<double> difference; // (N_white - N_black)/n per step, index 0 = start
};
// Deterministic rotation with color flips at marked sites; marks drawn
// i.i.d. at density mu per replica. flip_probability, when >= 0, adds the
// shared extra flip with that probability each step.
KacRingResult kac_ring(std::uint64_t n, double mu, std::uint64_t t_steps, RandomStream& stream,
                       double flip_probability = -1.0);
Report kac_ring_check(std::uint64_t n, double mu, std::uint64_t t_steps, unsigned replicas,
                      RandomStream& stream);

struct MajorityRuleResult {
    int consensus;            // +1 or -1
    std::uint64_t steps;      // triples sampled until absorption
};
MajorityRuleResult majority_rule(std::uint64_t n_agents, double plus_fraction,
                                 RandomStream& stream);

// p with p^T = p^T P, |p|_1 = 1, to tolerance 1e-12 by power iteration.
// Throws std::runtime_error when the iteration fails to converge.
std::vector<double> power_iteration(const std::vector<std::vector<double>>& transition,
                                    double tol = 1e-12, unsigned max_iter = 1000000);

// Occupancy fractions of n_walkers independent continuous-time walkers
// (unit jump rate, jump law P) started at node 0, observed at time t.
std::vector<double> pagerank_walkers(const std::vector<std::vector<double>>& transition,
                                     std::uint64_t n_walkers, double t, RandomStream& stream);

struct TaxiResult {
    double exact;      // stationary rejection probability, closed form
    double asymptotic; // N -> infinity limit at fixed M/N
    double simulated;  // discrete-event estimate
};
TaxiResult taxi_network(unsigned n_stations, unsigned n_taxis, double lambda, double nu,
                        std::uint64_t arrivals, RandomStream& stream);
double taxi_rejection_exact(unsigned n_stations, unsigned n_taxis, double lambda, double nu);
double taxi_rejection_asymptotic(unsigned n_stations, unsigned n_taxis, double lambda, double nu);

// Population sizes of a branching process across generations; the run stops
// early once the population exceeds survival_cap (extinction from there is
// numerically impossible for the supercritical laws this is used with).
std::vector<std::uint64_t> branching_sim(const std::vector<double>& offspring_pmf,
                                         unsigned generations, RandomStream& stream,
                                         std::uint64_t survival_cap = 100000);

// n-fold PGF iterate as an exact polynomial: Pi_{k+1} = Pi_k o G.
PowerSeries pgf_iterate(const PowerSeries& g, unsigned n, unsigned order = PowerSeries::kDefaultOrder);

struct ChialvoResult {
    double threshold_estimate;
    double avalanche_exponent;
    std::vector<double> final_fitness;
};
// Mean-field refresh dynamics: the weakest agent plus two uniformly chosen
// agents get fresh uniform fitness each step.
ChialvoResult chialvo(unsigned n_agents, std::uint64_t steps, RandomStream& stream);

} // namespace stochlab
