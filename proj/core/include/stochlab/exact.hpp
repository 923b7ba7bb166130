#pragma once

#include "stochlab/power_series.hpp"
#include "stochlab/rational.hpp"

#include <optional>
#include <vector>

namespace stochlab {

// Probability that the leading candidate stays strictly ahead throughout the
// count, given final tallies a > b >= 0: (a-b)/(a+b).
BigRational ballot_probability(unsigned a, unsigned b);

// Probability that no one waits for change in a queue of n payers with the
// exact coin and n without: Catalan(n) / binom(2n, n).
BigRational queue_no_wait_probability(unsigned n);

BigInt catalan_number(unsigned n);

BigInt derangements(unsigned n);

struct HatMatchMoments {
    BigRational mean;
    BigRational variance;
};
// Moments of the number of fixed points of a uniform random permutation.
HatMatchMoments hat_match_moments(unsigned n);

// Count of 2k-digit strings in the given base whose first-half digit sum
// equals the second-half sum.
BigInt lucky_tickets(unsigned half_digits, unsigned base);

// Necklaces of n beads in k colors under cyclic rotation; with m given,
// only those with exactly m beads of the first color.
BigInt polya_necklaces(unsigned n, unsigned k, std::optional<unsigned> m = std::nullopt);

// P(k matches remain when one box is first found empty), boxes start with n.
BigRational banach_matchbox(unsigned n, unsigned k);

// Smallest fixed point of the offspring PGF on [0,1]; monotone iteration
// from 0. q < 1 iff the mean offspring count exceeds 1.
double branching_extinction(const std::vector<double>& offspring_pmf, double tol = 1e-12,
                            std::uint64_t max_iter = 1000000);

struct PermutationStats {
    BigRational mean_cycles;         // H_n
    BigRational records_mean;        // sum_{1<k<=n} 1/k
    BigRational records_variance;    // sum_{1<k<=n} (k-1)/k^2
};
PermutationStats permutation_stats(unsigned n);
BigRational mean_cycles_of_length(unsigned r); // 1/r, independent of n >= r
// 1 - sum_{k=n/2+1..n} 1/k; n must be even.
BigRational prisoners_success(unsigned n);

struct CouponMoments {
    BigRational mean_first_repeat; // sum_{n>=0} N!/((N-n)! N^n)
    BigRational mean_full_set;     // N * H_N
};
CouponMoments coupon_moments(unsigned n_coupons);

// PGF of a finite pmf as an exact polynomial (coefficients converted from
// doubles, so dyadic inputs are exact).
PowerSeries pmf_generating_function(const std::vector<double>& pmf, unsigned order);

} // namespace stochlab
