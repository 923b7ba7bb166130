#pragma once

#include "stochlab/report.hpp"
#include "stochlab/rng.hpp"

#include <cstdint>
#include <vector>

namespace stochlab {

// Exact binomial win probability for the +-1 game versus its normal
// approximation, plus the Berry-Esseen sup-distance bound with C0 = 0.7056.
Report berry_esseen_check(double p, unsigned n);

// Exact total-variation distance between a sum of independent Bernoullis
// and the matching Poisson law, against the 2*sum p_k^2 bound.
Report poisson_approx_check(const std::vector<double>& p_list);

enum class MaxFamily { pareto, bounded, exponential };

// Normalized maxima of n draws against the matching max-stable limit
// (Frechet / Weibull / Gumbel) in KS distance.
Report extreme_value_check(MaxFamily family, double param, unsigned n, unsigned replicas,
                           RandomStream& stream);

// Fraction of nonnegative prefix sums of an n-step +-1 walk against the
// arcsine law at the point x.
Report arcsine_check(unsigned n, double x, unsigned replicas, RandomStream& stream);

// Distribution summary of S_n / (n log2 n) for the doubling game.
Report petersburg_check(std::uint64_t n, unsigned replicas, RandomStream& stream);

// Trace moments (1/n) tr(A^k) of random sign matrices scaled by 1/(2 sqrt n)
// against the semicircle moments, for k = 2..2r.
Report wigner_check(unsigned dim, unsigned r, unsigned replicas, RandomStream& stream);

// Tail exponent of the magnitude of the summed inverse-square force from
// stars uniform in a density-matched ball, full sum and nearest star only.
Report holtsmark_check(double density, unsigned n_stars, unsigned replicas, RandomStream& stream);

// First-return times of the simple symmetric walk: tail slope of the pmf
// and the diverging truncated mean.
Report return_time_check(std::uint64_t horizon, unsigned replicas, RandomStream& stream);

// P(first repeat > t sqrt N) against exp(-t^2/2) and the exact product.
Report coupon_rayleigh_check(unsigned n_coupons, double t, unsigned replicas, RandomStream& stream);

// Multiplicative fragmentation after a Poisson number of splits against the
// log-normal limit.
Report lognormal_fragmentation_check(double lambda, double a, double sigma, double t,
                                     unsigned replicas, RandomStream& stream);

} // namespace stochlab
