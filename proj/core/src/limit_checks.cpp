#include "stochlab/limit_checks.hpp"

#include "stochlab/distributions.hpp"
#include "stochlab/rational.hpp"
#include "stochlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stochlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Check make_lower_bound_check(std::string name, double bound, double observed) {
    Check c{std::move(name), bound, observed, 0.0, observed >= bound};
    return c;
}

} // namespace

Report berry_esseen_check(double p, unsigned n) {
    if (!(p > 0 && p < 1) || n == 0)
        throw std::invalid_argument("berry_esseen_check: requires 0 < p < 1, n >= 1");
    const double q = 1 - p;

    // Exact binomial pmf in rational arithmetic; S_n > 0 iff wins > n/2.
    BigRational rp = rationalize(p);
    BigRational rq = BigRational(1) - rp;
    std::vector<BigRational> pmf(n + 1);
    pmf[0] = rational_pow(rq, n);
    for (unsigned k = 0; k + 1 <= n; ++k)
        pmf[k + 1] = pmf[k] * BigRational(BigInt(n - k), BigInt(k + 1)) * rp / rq;

    BigRational exact_tail = 0;
    for (unsigned k = n / 2 + 1; k <= n; ++k) exact_tail += pmf[k];
    const double exact = to_double(exact_tail);

    // Continuity-corrected normal approximation of P(B >= floor(n/2) + 1).
    const double mean = n * p;
    const double sd = std::sqrt(n * p * q);
    const double kmin = std::floor(n / 2.0) + 1.0;
    const double approx = 1.0 - normal_cdf((kmin - 0.5 - mean) / sd);

    // Sup distance between the standardized binomial cdf and Phi over atoms.
    double sup = 0;
    BigRational cdf = 0;
    for (unsigned k = 0; k <= n; ++k) {
        double z = (static_cast<double>(k) - mean) / sd;
        double phi = normal_cdf(z);
        sup = std::max(sup, std::abs(phi - to_double(cdf))); // left limit
        cdf += pmf[k];
        sup = std::max(sup, std::abs(phi - to_double(cdf)));
    }

    const double ratio_mu3_sigma3 = (p * p + q * q) / std::sqrt(p * q);
    const double bound = 0.7056 * ratio_mu3_sigma3 / std::sqrt(static_cast<double>(n));

    Report r;
    r.estimate = exact;
    r.stderr_ = 0;
    r.replicas_used = 1;
    r.checks.push_back(make_check("normal_approx_tail", exact, approx, 0.005));
    r.checks.push_back(make_upper_bound_check("berry_esseen_bound", bound, sup));
    if (p == 0.5) {
        double lower = (1.0 / std::sqrt(2 * kPi)) / (2 * std::sqrt(static_cast<double>(n)));
        r.checks.push_back(make_lower_bound_check("symmetric_lower_bound", lower, sup));
    }
    return r;
}

Report poisson_approx_check(const std::vector<double>& p_list) {
    double lambda = 0, bound = 0;
    for (double p : p_list) {
        if (!(p >= 0 && p <= 1)) throw std::invalid_argument("poisson_approx_check: p outside [0,1]");
        lambda += p;
        bound += 2 * p * p;
    }

    // Exact law of the Bernoulli sum by direct convolution.
    std::vector<double> law{1.0};
    law.reserve(p_list.size() + 1);
    for (double p : p_list) {
        std::vector<double> next(law.size() + 1, 0.0);
        for (std::size_t m = 0; m < law.size(); ++m) {
            next[m] += law[m] * (1 - p);
            next[m + 1] += law[m] * p;
        }
        law = std::move(next);
    }

    double tv_l1 = 0;
    double pois = std::exp(-lambda);
    double pois_mass_caught = 0;
    for (std::size_t m = 0; m < law.size(); ++m) {
        tv_l1 += std::abs(law[m] - pois);
        pois_mass_caught += pois;
        pois *= lambda / static_cast<double>(m + 1);
    }
    tv_l1 += std::max(0.0, 1.0 - pois_mass_caught); // Poisson mass beyond the support
    const double tv = 0.5 * tv_l1;

    Report r;
    r.estimate = tv;
    r.replicas_used = 1;
    r.checks.push_back(make_upper_bound_check("prokhorov_le_cam", bound, tv));
    return r;
}

Report extreme_value_check(MaxFamily family, double param, unsigned n, unsigned replicas,
                           RandomStream& stream) {
    if (n < 10) throw std::invalid_argument("extreme_value_check: requires n >= 10");
    if (param <= 0) throw std::invalid_argument("extreme_value_check: requires a positive parameter");

    std::vector<double> ys(replicas);
    for (unsigned rep = 0; rep < replicas; ++rep) {
        RandomStream s = stream.split(rep);
        double max_x = -1e308;
        for (unsigned i = 0; i < n; ++i) {
            double u = s.next_uniform_pos(); // survival probability of the draw
            double x = 0;
            switch (family) {
                case MaxFamily::pareto: x = std::pow(u, -1.0 / param); break;
                case MaxFamily::bounded: x = -std::pow(u, 1.0 / param); break;
                case MaxFamily::exponential: x = -std::log(u) / param; break;
            }
            max_x = std::max(max_x, x);
        }
        double dn = static_cast<double>(n);
        switch (family) {
            case MaxFamily::pareto: ys[rep] = max_x / std::pow(dn, 1.0 / param); break;
            case MaxFamily::bounded: ys[rep] = max_x * std::pow(dn, 1.0 / param); break;
            case MaxFamily::exponential: ys[rep] = max_x - std::log(dn) / param; break;
        }
    }

    auto limit_cdf = [family, param](double y) -> double {
        switch (family) {
            case MaxFamily::pareto: return y <= 0 ? 0.0 : std::exp(-std::pow(y, -param));
            case MaxFamily::bounded:
                return y >= 0 ? 1.0 : std::exp(-std::pow(std::abs(y), param));
            case MaxFamily::exponential: return std::exp(-std::exp(-param * y));
        }
        return 0.0;
    };
    double d = ks_distance(EmpiricalCdf(std::move(ys)), limit_cdf);

    Report r;
    r.estimate = d;
    r.replicas_used = replicas;
    r.checks.push_back(make_upper_bound_check("ks_to_max_stable_limit", 0.02, d));
    return r;
}

Report arcsine_check(unsigned n, double x, unsigned replicas, RandomStream& stream) {
    if (n == 0 || n % 2 != 0) throw std::invalid_argument("arcsine_check: n must be even");
    if (!(x >= 0 && x <= 1)) throw std::invalid_argument("arcsine_check: x outside [0,1]");

    unsigned hits = 0;
    for (unsigned rep = 0; rep < replicas; ++rep) {
        RandomStream s = stream.split(rep);
        long sum = 0;
        unsigned nonneg = 0;
        unsigned done = 0;
        bool above = false;
        while (done < n) {
            std::uint64_t bits = s.next_u64();
            unsigned take = std::min<unsigned>(64, n - done);
            for (unsigned b = 0; b < take; ++b) {
                sum += (bits >> b) & 1ull ? 1 : -1;
                // A zero counts toward the side it was reached from; this
                // tie rule makes the finite-n law symmetric around 1/2.
                if (sum != 0) above = sum > 0;
                nonneg += above ? 1u : 0u;
            }
            done += take;
        }
        hits += static_cast<double>(nonneg) / n < x ? 1u : 0u;
    }
    const double freq = static_cast<double>(hits) / replicas;
    const double limit = (2.0 / kPi) * std::asin(std::sqrt(x));

    Report r;
    r.estimate = freq;
    r.stderr_ = std::sqrt(freq * (1 - freq) / replicas);
    r.replicas_used = replicas;
    r.checks.push_back(make_check("arcsine_law", limit, freq, 0.01));
    return r;
}

Report petersburg_check(std::uint64_t n, unsigned replicas, RandomStream& stream) {
    if (n < 2) throw std::invalid_argument("petersburg_check: requires n >= 2");

    auto run_block = [](RandomStream s, std::uint64_t games) {
        double sum = 0;
        for (std::uint64_t g = 0; g < games; ++g) {
            double u = s.next_uniform_pos();
            // P(payout = 2^k) = 2^-k, k >= 1.
            double k = std::floor(-std::log2(u)) + 1.0;
            sum += std::exp2(k);
        }
        return sum;
    };

    std::vector<double> stat_n(replicas), stat_small(replicas);
    const std::uint64_t n_small = std::max<std::uint64_t>(4, n >> 10);
    for (unsigned rep = 0; rep < replicas; ++rep) {
        RandomStream s = stream.split(rep);
        stat_n[rep] =
            run_block(s.split(0), n) / (static_cast<double>(n) * std::log2(static_cast<double>(n)));
        stat_small[rep] = run_block(s.split(1), n_small) /
                          (static_cast<double>(n_small) * std::log2(static_cast<double>(n_small)));
    }
    const double med = median(stat_n);
    const double med_small = median(stat_small);

    // Truncated single-game mean is exactly m at truncation level 2^m; the
    // empirical ratio between two levels should match m_hi/m_lo.
    RandomStream ts = stream.split(0xABCD);
    const unsigned m_lo = 6, m_hi = 12;
    double trunc_lo = 0, trunc_hi = 0;
    const unsigned trunc_draws = 200000;
    for (unsigned i = 0; i < trunc_draws; ++i) {
        double u = ts.next_uniform_pos();
        double payout = std::exp2(std::floor(-std::log2(u)) + 1.0);
        if (payout <= std::exp2(m_lo)) trunc_lo += payout;
        if (payout <= std::exp2(m_hi)) trunc_hi += payout;
    }
    trunc_lo /= trunc_draws;
    trunc_hi /= trunc_draws;

    Report r;
    r.estimate = med;
    r.replicas_used = replicas;
    r.checks.push_back(make_check("median_band", 1.1, med, 0.3));
    r.checks.push_back(make_upper_bound_check("median_moves_toward_one", std::abs(med_small - 1.0),
                                              std::abs(med - 1.0)));
    r.checks.push_back(make_check("truncated_mean_linear_growth",
                                  static_cast<double>(m_hi) / m_lo, trunc_hi / trunc_lo, 0.35));
    return r;
}

Report wigner_check(unsigned dim, unsigned r_half, unsigned replicas, RandomStream& stream) {
    if (dim < 10 || r_half < 1)
        throw std::invalid_argument("wigner_check: requires dim >= 10, r >= 1");

    auto semicircle_moment = [](unsigned k) -> double {
        if (k % 2 == 1) return 0.0;
        unsigned rr = k / 2;
        return to_double(
            BigRational(factorial(k), (BigInt(1) << k) * factorial(rr) * factorial(rr + 1)));
    };

    const unsigned kmax = 2 * r_half;
    std::vector<std::vector<double>> moments(kmax + 1);
    const double scale = 1.0 / (2.0 * std::sqrt(static_cast<double>(dim)));

    std::vector<double> a(static_cast<std::size_t>(dim) * dim);
    std::vector<double> power(a.size()), next(a.size());
    for (unsigned rep = 0; rep < replicas; ++rep) {
        RandomStream s = stream.split(rep);
        for (unsigned i = 0; i < dim; ++i) {
            for (unsigned j = i; j < dim; ++j) {
                double v = s.next_coin() ? scale : -scale;
                a[i * dim + j] = v;
                a[j * dim + i] = v;
            }
        }
        power = a;
        for (unsigned k = 2; k <= kmax; ++k) {
            for (unsigned i = 0; i < dim; ++i) {
                double* nrow = &next[static_cast<std::size_t>(i) * dim];
                for (unsigned j = 0; j < dim; ++j) nrow[j] = 0.0;
                for (unsigned l = 0; l < dim; ++l) {
                    double pil = power[static_cast<std::size_t>(i) * dim + l];
                    const double* arow = &a[static_cast<std::size_t>(l) * dim];
                    for (unsigned j = 0; j < dim; ++j) nrow[j] += pil * arow[j];
                }
            }
            std::swap(power, next);
            double trace = 0;
            for (unsigned i = 0; i < dim; ++i) trace += power[static_cast<std::size_t>(i) * dim + i];
            moments[k].push_back(trace / dim);
        }
    }

    Report r;
    r.replicas_used = replicas;
    auto m2 = mean_stderr(moments[2]);
    r.estimate = m2.mean;
    r.stderr_ = m2.stderr_;
    for (unsigned k = 2; k <= kmax; ++k) {
        auto ms = mean_stderr(moments[k]);
        double target = semicircle_moment(k);
        if (k % 2 == 0) {
            r.checks.push_back(
                make_check("even_moment_k" + std::to_string(k), target, ms.mean, 0.03 * target));
        } else {
            r.checks.push_back(
                make_check("odd_moment_k" + std::to_string(k), 0.0, ms.mean, 4 * ms.stderr_));
        }
    }
    return r;
}

Report holtsmark_check(double density, unsigned n_stars, unsigned replicas, RandomStream& stream) {
    if (!(density > 0)) throw std::invalid_argument("holtsmark_check: requires density > 0");

    Report r;
    r.replicas_used = replicas;
    if (n_stars == 0) {
        r.estimate = 0;
        r.checks.push_back(make_check("zero_stars_zero_force", 0.0, 0.0, 0.0));
        return r;
    }

    const double radius = std::cbrt(3.0 * static_cast<double>(n_stars) / (4.0 * kPi * density));
    std::vector<double> force(replicas), nearest(replicas);
    for (unsigned rep = 0; rep < replicas; ++rep) {
        RandomStream s = stream.split(rep);
        double fx = 0, fy = 0, fz = 0, rmin2 = 1e308;
        for (unsigned i = 0; i < n_stars; ++i) {
            auto dir = sphere_uniform(s, 3);
            double rad = radius * std::cbrt(s.next_uniform_pos());
            double r2 = rad * rad;
            rmin2 = std::min(rmin2, r2);
            double inv2 = 1.0 / r2;
            fx += dir[0] * inv2;
            fy += dir[1] * inv2;
            fz += dir[2] * inv2;
        }
        force[rep] = std::sqrt(fx * fx + fy * fy + fz * fz);
        nearest[rep] = 1.0 / rmin2;
    }

    // The 3/2 exponent is asymptotic; a decade ending at the top 0.1%
    // order statistic sits inside the tail regime.
    auto full_fit = fit_loglog_survival(force, 1e-3);
    auto near_fit = fit_loglog_survival(nearest, 1e-3);

    r.estimate = full_fit.slope;
    r.checks.push_back(make_check("force_tail_exponent", -1.5, full_fit.slope, 0.1));
    r.checks.push_back(make_check("nearest_star_tail_exponent", -1.5, near_fit.slope, 0.1));
    return r;
}

Report return_time_check(std::uint64_t horizon, unsigned replicas, RandomStream& stream) {
    if (horizon < 4 || horizon % 2 != 0)
        throw std::invalid_argument("return_time_check: horizon must be even and >= 4");

    std::vector<double> capped(replicas);
    std::uint64_t twos = 0;
    const std::uint64_t short_cap = std::max<std::uint64_t>(horizon / 100, 2);
    double mean_short = 0;
    std::vector<double> half_times;
    half_times.reserve(replicas);
    for (unsigned rep = 0; rep < replicas; ++rep) {
        RandomStream s = stream.split(rep);
        long pos = 0;
        std::uint64_t t = 0;
        bool returned = false;
        while (!returned && t < horizon) {
            std::uint64_t bits = s.next_u64();
            for (unsigned b = 0; b < 64; ++b) {
                pos += (bits >> b) & 1ull ? 1 : -1;
                ++t;
                if (pos == 0) {
                    returned = true;
                    break;
                }
                if (t >= horizon) break;
            }
        }
        capped[rep] = static_cast<double>(t);
        mean_short += static_cast<double>(std::min(t, short_cap));
        if (returned && t == 2) ++twos;
        if (returned) half_times.push_back(static_cast<double>(t) / 2.0);
    }
    mean_short /= replicas;
    auto long_ms = mean_stderr(capped);

    auto pmf_fit = fit_loglog_density_samples(half_times, 10.0, 500.0, 6);

    Report r;
    r.estimate = static_cast<double>(twos) / replicas;
    r.stderr_ = std::sqrt(r.estimate * (1 - r.estimate) / replicas);
    r.replicas_used = replicas;
    r.checks.push_back(make_check("return_at_two", 0.5, r.estimate, 4 * r.stderr_ + 1e-12));
    r.checks.push_back(make_check("pmf_tail_slope", -1.5, pmf_fit.slope, 0.1));
    r.checks.push_back(make_upper_bound_check("truncated_mean_diverges", long_ms.mean, mean_short));
    return r;
}

Report coupon_rayleigh_check(unsigned n_coupons, double t, unsigned replicas, RandomStream& stream) {
    if (n_coupons < 100) throw std::invalid_argument("coupon_rayleigh_check: requires N >= 100");
    if (t < 0) throw std::invalid_argument("coupon_rayleigh_check: requires t >= 0");

    const double sqrt_n = std::sqrt(static_cast<double>(n_coupons));
    const auto exact_cut = static_cast<std::uint64_t>(std::ceil(sqrt_n));

    std::vector<std::uint32_t> last_seen(n_coupons, 0);
    std::uint32_t epoch = 0;
    std::uint64_t over_t = 0, over_cut = 0;
    for (unsigned rep = 0; rep < replicas; ++rep) {
        RandomStream s = stream.split(rep);
        ++epoch;
        std::uint64_t draws = 0;
        for (;;) {
            auto c = static_cast<std::size_t>(s.next_below(n_coupons));
            ++draws;
            if (last_seen[c] == epoch) break;
            last_seen[c] = epoch;
        }
        over_t += static_cast<double>(draws) > t * sqrt_n ? 1u : 0u;
        over_cut += draws > exact_cut ? 1u : 0u;
    }

    const double freq_t = static_cast<double>(over_t) / replicas;
    const double freq_cut = static_cast<double>(over_cut) / replicas;
    const double rayleigh = std::exp(-t * t / 2);

    // P(X > n) = prod_{j<n} (1 - j/N), exact.
    double exact_prod = 1;
    for (std::uint64_t j = 1; j < exact_cut; ++j)
        exact_prod *= 1.0 - static_cast<double>(j) / n_coupons;
    const double se_cut = std::sqrt(exact_prod * (1 - exact_prod) / replicas);

    Report r;
    r.estimate = freq_t;
    r.stderr_ = std::sqrt(freq_t * (1 - freq_t) / replicas);
    r.replicas_used = replicas;
    r.checks.push_back(make_check("rayleigh_tail", rayleigh, freq_t, t == 0 ? 1e-12 : 0.02));
    r.checks.push_back(make_check("exact_product_tail", exact_prod, freq_cut, 4 * se_cut));
    return r;
}

Report lognormal_fragmentation_check(double lambda, double a, double sigma, double t,
                                     unsigned replicas, RandomStream& stream) {
    if (!(lambda > 0) || !(sigma > 0) || a >= 0 || t < 0)
        throw std::invalid_argument("lognormal_fragmentation_check: bad parameters");

    const double s0 = 1.0;
    const double mu = std::log(s0);
    if (t == 0) {
        Report r;
        r.estimate = s0;
        r.replicas_used = replicas;
        r.checks.push_back(make_check("no_splits_at_t0", s0, s0, 0.0));
        return r;
    }

    std::vector<double> log_z(replicas);
    for (unsigned rep = 0; rep < replicas; ++rep) {
        RandomStream s = stream.split(rep);
        auto k = sample_poisson(s, lambda * t);
        double acc = mu;
        for (std::uint64_t i = 0; i < k; ++i) acc += a + sigma * sample_standard_normal(s);
        log_z[rep] = acc;
    }

    const double limit_mean = mu + lambda * t * a;
    const double limit_var = lambda * t * (a * a + sigma * sigma);
    auto ms = mean_stderr(log_z);
    double ks = ks_distance(EmpiricalCdf(log_z), [&](double x) {
        return normal_cdf((x - limit_mean) / std::sqrt(limit_var));
    });

    Report r;
    r.estimate = ms.mean;
    r.stderr_ = ms.stderr_;
    r.replicas_used = replicas;
    r.checks.push_back(make_check("log_mean", limit_mean, ms.mean, 4 * ms.stderr_));
    r.checks.push_back(make_upper_bound_check("ks_to_lognormal_limit", 0.02, ks));
    return r;
}

} // namespace stochlab
