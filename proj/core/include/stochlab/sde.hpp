#pragma once

#include "stochlab/rng.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace stochlab {

// Geometric Brownian motion S(t) = s0 exp(a t + sigma W(t)); a is the
// drift of the log price.
struct GbmParams {
    double s0 = 1.0;    // > 0
    double a = 0.0;     // log drift
    double sigma = 0.0; // >= 0
};

void validate(const GbmParams& params);

double gbm_exact(const GbmParams& params, double t, RandomStream& stream);

// Euler scheme S_{k+1} = S_k + drift(S,t) h + diffusion(S,t) dW; h must
// divide T to within round-off.
std::vector<double> euler_path(const std::function<double(double, double)>& drift,
                               const std::function<double(double, double)>& diffusion, double s0,
                               double h, double t_end, RandomStream& stream);

struct OptionSpec {
    double strike;   // > 0
    double maturity; // > 0
    double rate;     // continuous rate mu; one-period growth is exp(mu T / n)
};

struct McPriceResult {
    double estimate;
    double stderr_;
    std::uint64_t cost; // Gaussian increments generated
};

// Plain Euler Monte Carlo for E[payoff(S_T)] under the risk-neutral GBM
// dS = mu S dt + sigma S dW, with the discount folded into the payoff.
McPriceResult mc_price(const std::function<double(double)>& payoff, const GbmParams& params,
                       double mu, double h, std::uint64_t n_paths, RandomStream& stream,
                       double t_end = 1.0);

struct MlmcLevel {
    double h;
    double mean;
    double variance;
    std::uint64_t samples;
};

struct MlmcResult {
    double estimate;
    double stderr_;
    std::uint64_t cost;
    std::vector<MlmcLevel> levels;
};

// Multilevel estimator with refinement factor M: coupled coarse/fine paths
// share Brownian increments, the deepest level is chosen so the Richardson
// bias estimate stays below eps/sqrt 2, and level samples follow the
// optimal sqrt(V_l h_l) allocation with a floor of 100 per level.
MlmcResult mlmc_price(const std::function<double(double)>& payoff, const GbmParams& params,
                      double mu, double eps, unsigned m_factor, RandomStream& stream,
                      double t_end = 1.0);

// Per-level coupled-difference variances at fixed sample counts, for the
// V_{l+1}/V_l ratio checks.
std::vector<MlmcLevel> mlmc_level_table(const std::function<double(double)>& payoff,
                                        const GbmParams& params, double mu, unsigned m_factor,
                                        unsigned levels, std::uint64_t samples_per_level,
                                        RandomStream& stream, double t_end = 1.0);

// n-period binomial price with per-period growth r and martingale weight
// (r - d)/(u - d).
double crr_price(const std::function<double(double)>& payoff, double s0, double u, double d,
                 double r, unsigned n);

// One-period price from the terminal claims directly.
double crr_one_period(double claim_up, double claim_down, double u, double d, double r);

double black_scholes_call(double s0, double strike, double sigma, double mu, double t);

// |CRR_n - BS| for the u = exp(sigma sqrt(T/n)) scheme, one entry per n.
std::vector<double> crr_convergence(double s0, double strike, double sigma, double mu, double t,
                                    const std::vector<unsigned>& n_list);

} // namespace stochlab
