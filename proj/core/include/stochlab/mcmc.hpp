#pragma once

#include "stochlab/rng.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace stochlab {

// Acceptance function F with F(z)/F(1/z) = z: metropolis is min(z, 1),
// barker is z/(1+z).
enum class AcceptanceRule { metropolis, barker };

double acceptance_value(AcceptanceRule rule, double z);

// Metropolis-Hastings transition matrix for a finite target given by
// unnormalized weights and a symmetric proposal. Rows sum to 1 and detailed
// balance pi_i p_ij = pi_j p_ji holds to extended precision.
std::vector<std::vector<double>> mh_kernel(const std::vector<double>& target_weights,
                                           const std::vector<std::vector<double>>& proposal,
                                           AcceptanceRule rule);

// Largest detailed-balance residual |pi_i p_ij - pi_j p_ji| scaled by the
// weight normalization; the property gate is 1e-12.
double detailed_balance_residual(const std::vector<double>& target_weights,
                                 const std::vector<std::vector<double>>& kernel);

// One-dimensional chain of n sites 0..n-1 with both boundary spins fixed at
// +1 and n-1 nearest-neighbour bonds. The energy counts broken bonds.
struct IsingChain {
    std::vector<std::int8_t> spins; // size n, spins[0] = spins[n-1] = +1
};

double ising_energy(const IsingChain& chain);

// Heat-bath updates at uniformly random interior sites; stationary law is
// the Gibbs measure exp(-beta H)/Z. Returns the chain after `updates`.
IsingChain glauber_ising_1d(unsigned n, double beta, std::uint64_t updates, RandomStream& stream,
                            int initial_spin = -1);

// Updates until the all-plus ground state is reached, capped; returns the
// number of updates or UINT64_MAX when the cap was hit.
std::uint64_t glauber_hitting_time(unsigned n, double beta, std::uint64_t cap,
                                   RandomStream& stream);

using MembershipOracle = std::function<bool(const std::vector<double>&)>;

// Uniform sampling of a bounded convex body through random chords. Chord
// endpoints are located by 60 bisection steps on the membership oracle.
std::vector<std::vector<double>> hit_and_run(const MembershipOracle& inside,
                                             std::vector<double> start, std::uint64_t steps,
                                             RandomStream& stream);

struct AnnealingResult {
    std::vector<double> best_point;
    double best_value;
};

// Euler discretization of dx = -grad f dt + sqrt(2 T(t)) dW with the
// logarithmic schedule T(t) = c / ln(2 + t), reflected at the box walls.
// The gradient falls back to central differences when not supplied.
AnnealingResult simulated_annealing(const std::function<double(const std::vector<double>&)>& f,
                                    const std::vector<double>& lower,
                                    const std::vector<double>& upper, double c,
                                    std::uint64_t steps, RandomStream& stream,
                                    std::function<std::vector<double>(const std::vector<double>&)>
                                        gradient = nullptr);

struct MonotoneSearchResult {
    std::vector<double> best_point;
    double best_value;
    std::uint64_t hitting_time; // first step index inside the epsilon-ball, 0 if never
};

// Accepts a centrally symmetric step only when f does not increase; the
// radial law of the step is supplied by the caller.
MonotoneSearchResult monotone_random_search(
    const std::function<double(const std::vector<double>&)>& f, std::vector<double> start,
    const std::function<double(RandomStream&)>& radial_sampler, std::uint64_t steps,
    const std::vector<double>& optimum, double epsilon, RandomStream& stream);

struct CipherProblem {
    unsigned alphabet_size = 0;
    std::vector<std::vector<double>> bigram; // row-stochastic
    std::vector<unsigned> ciphertext;
};

void validate(const CipherProblem& problem);

// Row-stochastic bigram matrix with strongly peaked, irregular rows; the
// irregularity keeps the decoding permutation identifiable (no relabeling
// symmetry). Deterministic in the seed.
std::vector<std::vector<double>> synthetic_bigram_matrix(unsigned alphabet_size, Seed seed);

// Markov text of the given length sampled from the bigram chain.
std::vector<unsigned> sample_bigram_text(const std::vector<std::vector<double>>& bigram,
                                         std::size_t length, RandomStream& stream);

struct CipherResult {
    std::vector<unsigned> decode_map; // code symbol -> plain symbol
    double best_log_likelihood;
    double initial_log_likelihood;
};

double cipher_log_likelihood(const CipherProblem& problem, const std::vector<unsigned>& decode);

// Random-transposition Metropolis walk on decoding permutations, accepting
// a likelihood drop with probability L(new)/L(old); returns the best
// permutation visited.
CipherResult cipher_mcmc(const CipherProblem& problem, std::uint64_t iterations,
                         RandomStream& stream);

} // namespace stochlab
