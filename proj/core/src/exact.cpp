#include "stochlab/exact.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace stochlab {

BigRational ballot_probability(unsigned a, unsigned b) {
    if (a <= b) throw std::invalid_argument("ballot_probability: requires a > b >= 0");
    return BigRational(BigInt(a) - BigInt(b), BigInt(a) + BigInt(b));
}

BigInt catalan_number(unsigned n) {
    return binomial(2 * n, n) / BigInt(n + 1);
}

BigRational queue_no_wait_probability(unsigned n) {
    if (n == 0) throw std::invalid_argument("queue_no_wait_probability: requires n >= 1");
    return BigRational(catalan_number(n), binomial(2 * n, n));
}

BigInt derangements(unsigned n) {
    if (n == 0) return 1;
    BigInt prev2 = 1, prev1 = 0; // d_0, d_1
    if (n == 1) return 0;
    BigInt cur = 0;
    for (unsigned k = 2; k <= n; ++k) {
        cur = BigInt(k - 1) * (prev1 + prev2);
        prev2 = prev1;
        prev1 = cur;
    }
    return cur;
}

HatMatchMoments hat_match_moments(unsigned n) {
    // Fixed-point count of a random permutation: mean 1 for n >= 1,
    // variance 1 for n >= 2 (0 and 0 for n = 0, 1 and 0 for n = 1).
    if (n == 0) return {BigRational(0), BigRational(0)};
    if (n == 1) return {BigRational(1), BigRational(0)};
    return {BigRational(1), BigRational(1)};
}

BigInt lucky_tickets(unsigned half_digits, unsigned base) {
    if (half_digits == 0 || base < 2) throw std::invalid_argument("lucky_tickets: k >= 1, base >= 2");
    // Coefficients of (1 + x + ... + x^{base-1})^k; the answer is the sum of
    // squared coefficients (equivalently the central coefficient of the square).
    std::vector<BigInt> poly{1};
    for (unsigned rep = 0; rep < half_digits; ++rep) {
        std::vector<BigInt> next(poly.size() + base - 1, BigInt(0));
        for (std::size_t i = 0; i < poly.size(); ++i) {
            if (poly[i] == 0) continue;
            for (unsigned d = 0; d < base; ++d) next[i + d] += poly[i];
        }
        poly = std::move(next);
    }
    BigInt total = 0;
    for (const auto& c : poly) total += c * c;
    return total;
}

BigInt polya_necklaces(unsigned n, unsigned k, std::optional<unsigned> m) {
    if (n == 0 || k == 0) throw std::invalid_argument("polya_necklaces: requires n, k >= 1");
    if (m && *m > n) throw std::invalid_argument("polya_necklaces: requires m <= n");
    if (!m) {
        BigInt sum = 0;
        for (unsigned j = 1; j <= n; ++j) {
            BigInt term = 1;
            unsigned g = std::gcd(n, j);
            for (unsigned e = 0; e < g; ++e) term *= k;
            sum += term;
        }
        return sum / BigInt(n);
    }
    // Weighted cycle index: substitute x_i -> x^i + (k-1); the rotation by j
    // contributes (x^{n/g} + k - 1)^g with g = gcd(n, j). Extract [x^m].
    BigInt sum = 0;
    for (unsigned j = 1; j <= n; ++j) {
        unsigned g = std::gcd(n, j);
        unsigned cycle_len = n / g;
        if (*m % cycle_len != 0) continue;
        unsigned t = *m / cycle_len; // how many cycles painted in color 1
        if (t > g) continue;
        BigInt term = binomial(g, t);
        for (unsigned e = 0; e < g - t; ++e) term *= (k - 1);
        sum += term;
    }
    return sum / BigInt(n);
}

BigRational banach_matchbox(unsigned n, unsigned k) {
    if (n == 0 || k > n) throw std::invalid_argument("banach_matchbox: requires n >= 1, 0 <= k <= n");
    BigInt denom = 1;
    denom <<= (2 * n - k);
    return BigRational(binomial(2 * n - k, n), denom);
}

double branching_extinction(const std::vector<double>& offspring_pmf, double tol,
                            std::uint64_t max_iter) {
    if (offspring_pmf.empty()) throw std::invalid_argument("branching_extinction: empty pmf");
    double sum = 0;
    for (double p : offspring_pmf) {
        if (!(p >= 0)) throw std::invalid_argument("branching_extinction: negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("branching_extinction: pmf must sum to 1");

    auto pgf = [&](double z) {
        double acc = 0;
        for (std::size_t k = offspring_pmf.size(); k-- > 0;) acc = acc * z + offspring_pmf[k];
        return acc;
    };
    // Iterating from 0 is monotone nondecreasing and converges to the
    // minimal fixed point.
    double q = 0.0;
    for (std::uint64_t it = 0; it < max_iter; ++it) {
        double next = pgf(q);
        if (next - q <= tol) return next;
        q = next;
    }
    return q;
}

PermutationStats permutation_stats(unsigned n) {
    if (n == 0) throw std::invalid_argument("permutation_stats: requires n >= 1");
    PermutationStats s{BigRational(0), BigRational(0), BigRational(0)};
    for (unsigned k = 1; k <= n; ++k) {
        s.mean_cycles += BigRational(1, static_cast<long>(k));
        if (k > 1) {
            s.records_mean += BigRational(1, static_cast<long>(k));
            s.records_variance +=
                BigRational(BigInt(k - 1), BigInt(k) * BigInt(k));
        }
    }
    return s;
}

BigRational mean_cycles_of_length(unsigned r) {
    if (r == 0) throw std::invalid_argument("mean_cycles_of_length: requires r >= 1");
    return BigRational(1, static_cast<long>(r));
}

BigRational prisoners_success(unsigned n) {
    if (n == 0 || n % 2 != 0) throw std::invalid_argument("prisoners_success: requires even n >= 2");
    BigRational tail = 0;
    for (unsigned k = n / 2 + 1; k <= n; ++k) tail += BigRational(1, static_cast<long>(k));
    return BigRational(1) - tail;
}

CouponMoments coupon_moments(unsigned n_coupons) {
    if (n_coupons == 0) throw std::invalid_argument("coupon_moments: requires N >= 1");
    const unsigned n = n_coupons;
    // E[first repeat] = sum_{m>=0} P(X > m); P(X > m) = N!/((N-m)! N^m),
    // zero beyond m = N.
    BigRational first_repeat = 0;
    BigRational term = 1; // P(X > 0)
    first_repeat += term;
    for (unsigned m = 1; m <= n; ++m) {
        term *= BigRational(BigInt(n - m + 1), BigInt(n));
        first_repeat += term;
    }
    BigRational full_set = 0;
    for (unsigned k = 1; k <= n; ++k) full_set += BigRational(BigInt(n), BigInt(k));
    return {first_repeat, full_set};
}

PowerSeries pmf_generating_function(const std::vector<double>& pmf, unsigned order) {
    PowerSeries g(order);
    if (pmf.size() > order + 1)
        throw std::invalid_argument("pmf_generating_function: pmf longer than order budget");
    for (std::size_t k = 0; k < pmf.size(); ++k) g.coeff(static_cast<unsigned>(k)) = rational_from_double(pmf[k]);
    return g;
}

} // namespace stochlab
