#include "stochlab/models.hpp"

#include "stochlab/alias.hpp"
#include "stochlab/distributions.hpp"
#include "stochlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace stochlab {

namespace {

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

ReactionNetwork ehrenfest_network(std::uint64_t n_fleas, double lambda) {
    if (n_fleas < 2) throw std::invalid_argument("ehrenfest: requires N >= 2");
    ReactionNetwork net;
    net.species = {"dog1", "dog2"};
    net.reactions = {
        {{1, 0}, {0, 1}, lambda},
        {{0, 1}, {1, 0}, lambda},
    };
    net.scale = n_fleas;
    return net;
}

ReactionNetwork schlogl_network(std::uint64_t scale) {
    ReactionNetwork net;
    net.species = {"x"};
    // Rates in concentration units: birth 1 + 3 x^2, death 3 x + x^3; the
    // drift factors as -(x - 1)^3 with the unique fixed point x* = 1.
    net.reactions = {
        {{0}, {1}, 1.0},
        {{1}, {0}, 3.0},
        {{2}, {3}, 3.0},
        {{3}, {2}, 1.0},
    };
    net.scale = scale;
    return net;
}

namespace {

// Embedded (jump-chain) step of the Ehrenfest model: a uniformly chosen
// flea hops, so dog 1 loses one with probability n1/N.
inline std::int64_t ehrenfest_jump(std::int64_t n1, std::uint64_t n_fleas, RandomStream& s) {
    return s.next_uniform() * static_cast<double>(n_fleas) < static_cast<double>(n1) ? n1 - 1
                                                                                     : n1 + 1;
}

} // namespace

Report ehrenfest_stationary_check(std::uint64_t n_fleas, std::uint64_t embedded_steps,
                                  RandomStream& stream) {
    const auto n = static_cast<std::int64_t>(n_fleas);
    std::int64_t n1 = n / 2;

    // The total jump rate is constant, so the embedded chain shares the
    // Binomial(N, 1/2) stationary law. Thinning decorrelates the samples
    // the chi-square test assumes independent; the interval is odd because
    // the jump chain alternates parity.
    const std::uint64_t thin = 5 * n_fleas + 1;
    const std::uint64_t burn = 50 * n_fleas;
    for (std::uint64_t k = 0; k < burn; ++k) n1 = ehrenfest_jump(n1, n_fleas, stream);

    std::vector<std::uint64_t> hist(n_fleas + 1, 0);
    std::uint64_t samples = 0;
    for (std::uint64_t k = 0; k < embedded_steps; ++k) {
        n1 = ehrenfest_jump(n1, n_fleas, stream);
        if (k % thin == 0) {
            ++hist[static_cast<std::size_t>(n1)];
            ++samples;
        }
    }

    // Binomial(N, 1/2) cell probabilities, pooling cells below an expected
    // count of 5 into the tails.
    std::vector<double> prob(n_fleas + 1);
    for (std::size_t k = 0; k <= n_fleas; ++k)
        prob[k] = to_double(BigRational(binomial(static_cast<unsigned>(n_fleas),
                                                 static_cast<unsigned>(k)),
                                        BigInt(1) << n_fleas));
    std::vector<std::pair<double, double>> cells; // (observed, expected), tails pooled
    double pooled_obs = 0, pooled_exp = 0;
    for (std::size_t k = 0; k <= n_fleas; ++k) {
        pooled_obs += static_cast<double>(hist[k]);
        pooled_exp += prob[k] * static_cast<double>(samples);
        if (pooled_exp >= 5.0) {
            cells.emplace_back(pooled_obs, pooled_exp);
            pooled_obs = pooled_exp = 0;
        }
    }
    if (pooled_exp > 0 && !cells.empty()) {
        cells.back().first += pooled_obs;
        cells.back().second += pooled_exp;
    }
    double chi2 = 0;
    for (auto [obs, expect] : cells)
        chi2 += (obs - expect) * (obs - expect) / expect;
    double p_value = chi_square_tail(static_cast<double>(cells.size() - 1), chi2);

    Report r;
    r.estimate = chi2;
    r.replicas_used = samples;
    Check c{"stationary_chi_square_p", 0.01, p_value, 0.0, p_value >= 0.01};
    r.checks.push_back(c);
    return r;
}

Report ehrenfest_concentration_check(std::uint64_t n_fleas, unsigned replicas,
                                     RandomStream& stream) {
    const double lambda = 1.0;
    const double t_end = 10.0 * static_cast<double>(n_fleas);
    const double band = 5.0 / std::sqrt(static_cast<double>(n_fleas));
    unsigned inside = 0;
    for (unsigned rep = 0; rep < replicas; ++rep) {
        RandomStream s = stream.split(rep);
        // All fleas start on dog 1; the total rate lambda*N never changes.
        std::int64_t n1 = static_cast<std::int64_t>(n_fleas);
        double t = 0;
        const double total_rate = lambda * static_cast<double>(n_fleas);
        for (;;) {
            t += -std::log(s.next_uniform_pos()) / total_rate;
            if (t > t_end) break;
            n1 = ehrenfest_jump(n1, n_fleas, s);
        }
        double diff = std::abs(2.0 * static_cast<double>(n1) - static_cast<double>(n_fleas)) /
                      static_cast<double>(n_fleas);
        inside += diff <= band ? 1u : 0u;
    }
    double freq = static_cast<double>(inside) / replicas;

    Report r;
    r.estimate = freq;
    r.stderr_ = std::sqrt(freq * (1 - freq) / replicas);
    r.replicas_used = replicas;
    Check c{"concentration_99", 0.99, freq, 0.0, freq >= 0.99};
    r.checks.push_back(c);
    return r;
}

Report ehrenfest_return_time_check(std::uint64_t n_fleas, unsigned returns, RandomStream& stream) {
    const auto start = static_cast<std::int64_t>(n_fleas);
    std::uint64_t total_steps = 0;
    for (unsigned rep = 0; rep < returns; ++rep) {
        std::int64_t n1 = start;
        std::uint64_t steps = 0;
        do {
            n1 = ehrenfest_jump(n1, n_fleas, stream);
            ++steps;
        } while (n1 != start);
        total_steps += steps;
    }
    double mean_return = static_cast<double>(total_steps) / returns;
    double expected = std::ldexp(1.0, static_cast<int>(n_fleas)); // 2^N embedded steps

    Report r;
    r.estimate = mean_return;
    r.replicas_used = returns;
    r.checks.push_back(make_check("mean_return_time", expected, mean_return, 0.10 * expected));
    return r;
}

std::vector<std::uint64_t> money_exchange(std::uint64_t n_agents, std::uint64_t coins_each,
                                          std::uint64_t steps, RandomStream& stream) {
    if (n_agents < 2 || n_agents % 2 != 0)
        throw std::invalid_argument("money_exchange: N must be even and >= 2");
    if (coins_each == 0) throw std::invalid_argument("money_exchange: coins_each must be >= 1");
    std::vector<std::uint64_t> wealth(n_agents, coins_each);
    for (std::uint64_t k = 0; k < steps; ++k) {
        auto i = static_cast<std::size_t>(stream.next_below(n_agents));
        auto j = static_cast<std::size_t>(stream.next_below(n_agents - 1));
        if (j >= i) ++j;
        std::uint64_t pot = 0;
        if (wealth[i] > 0) {
            --wealth[i];
            ++pot;
        }
        if (wealth[j] > 0) {
            --wealth[j];
            ++pot;
        }
        wealth[stream.next_coin() ? i : j] += pot;
    }
    std::vector<std::uint64_t> hist(coins_each * n_agents + 1, 0);
    for (std::uint64_t w : wealth) ++hist[static_cast<std::size_t>(w)];
    return hist;
}

Report money_exchange_check(std::uint64_t n_agents, std::uint64_t coins_each,
                            RandomStream& stream) {
    const auto steps = static_cast<std::uint64_t>(
        20.0 * static_cast<double>(n_agents) * std::log(static_cast<double>(n_agents)));
    auto hist = money_exchange(n_agents, coins_each, steps, stream);

    std::uint64_t total_coins = 0, total_agents = 0;
    for (std::size_t s = 0; s < hist.size(); ++s) {
        total_coins += s * hist[s];
        total_agents += hist[s];
    }

    // Exponential wealth profile: fit ln(count) against s where the
    // histogram still has weight.
    std::vector<double> xs, ys;
    for (std::size_t s = 0; s < hist.size(); ++s) {
        if (hist[s] >= 30) {
            xs.push_back(static_cast<double>(s));
            ys.push_back(std::log(static_cast<double>(hist[s])));
        }
    }
    auto fit = fit_line(xs, ys);
    double target = -1.0 / static_cast<double>(coins_each);

    Report r;
    r.estimate = fit.slope;
    r.replicas_used = 1;
    r.checks.push_back(make_check("coins_conserved",
                                  static_cast<double>(coins_each * n_agents),
                                  static_cast<double>(total_coins), 0.0));
    r.checks.push_back(make_check("agents_conserved", static_cast<double>(n_agents),
                                  static_cast<double>(total_agents), 0.0));
    r.checks.push_back(make_check("wealth_slope", target, fit.slope, 0.10 * std::abs(target)));
    return r;
}

KacRingResult kac_ring(std::uint64_t n, double mu, std::uint64_t t_steps, RandomStream& stream,
                       double flip_probability) {
    if (!(mu >= 0 && mu <= 1)) throw std::invalid_argument("kac_ring: mu outside [0,1]");
    std::vector<std::uint8_t> marked(n);
    for (auto& m : marked) m = stream.next_uniform() < mu ? 1 : 0;

    // Ball b sits at site (b + t) mod n; it flips at step t when the site
    // it leaves is marked. Colors start all white (+1).
    std::vector<std::int8_t> color(n, 1);
    int shared_sign = 1;
    KacRingResult out;
    out.difference.reserve(t_steps + 1);

    auto record = [&]() {
        std::int64_t sum = 0;
        for (auto c : color) sum += c;
        out.difference.push_back(shared_sign * static_cast<double>(sum) / static_cast<double>(n));
    };
    record();
    for (std::uint64_t t = 0; t < t_steps; ++t) {
        for (std::uint64_t b = 0; b < n; ++b) {
            std::uint64_t site = (b + t) % n;
            if (marked[site]) color[b] = -color[b];
        }
        if (flip_probability >= 0 && stream.next_uniform() < flip_probability)
            shared_sign = -shared_sign;
        record();
    }
    return out;
}

Report kac_ring_check(std::uint64_t n, double mu, std::uint64_t t_steps, unsigned replicas,
                      RandomStream& stream) {
    std::vector<double> finals(replicas);
    for (unsigned rep = 0; rep < replicas; ++rep) {
        RandomStream s = stream.split(rep);
        finals[rep] = kac_ring(n, mu, t_steps, s).difference.back();
    }
    auto ms = mean_stderr(finals);
    double expected = std::pow(1.0 - 2.0 * mu, static_cast<double>(t_steps));

    Report r;
    r.estimate = ms.mean;
    r.stderr_ = ms.stderr_;
    r.replicas_used = replicas;
    r.checks.push_back(make_check("mean_difference", expected, ms.mean, 4 * ms.stderr_));
    return r;
}

MajorityRuleResult majority_rule(std::uint64_t n_agents, double plus_fraction,
                                 RandomStream& stream) {
    if (n_agents < 3) throw std::invalid_argument("majority_rule: requires N >= 3");
    std::vector<std::int8_t> spin(n_agents);
    std::int64_t plus = 0;
    for (auto& s : spin) {
        s = stream.next_uniform() < plus_fraction ? 1 : -1;
        plus += s > 0 ? 1 : 0;
    }
    std::uint64_t steps = 0;
    while (plus != 0 && plus != static_cast<std::int64_t>(n_agents)) {
        std::size_t a = static_cast<std::size_t>(stream.next_below(n_agents));
        std::size_t b, c;
        do {
            b = static_cast<std::size_t>(stream.next_below(n_agents));
        } while (b == a);
        do {
            c = static_cast<std::size_t>(stream.next_below(n_agents));
        } while (c == a || c == b);
        ++steps;
        int sum = spin[a] + spin[b] + spin[c];
        if (sum == 3 || sum == -3) continue;
        // The lone dissenter adopts the majority sign.
        int majority = sum > 0 ? 1 : -1;
        for (std::size_t idx : {a, b, c}) {
            if (spin[idx] != majority) {
                spin[idx] = static_cast<std::int8_t>(majority);
                plus += majority;
                break;
            }
        }
    }
    return {plus > 0 ? 1 : -1, steps};
}

std::vector<double> power_iteration(const std::vector<std::vector<double>>& transition, double tol,
                                    unsigned max_iter) {
    const std::size_t n = transition.size();
    if (n == 0) throw std::invalid_argument("power_iteration: empty matrix");
    for (const auto& row : transition) {
        if (row.size() != n) throw std::invalid_argument("power_iteration: not square");
        double sum = 0;
        for (double x : row) {
            if (x < 0) throw std::invalid_argument("power_iteration: negative entry");
            sum += x;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("power_iteration: rows must sum to 1");
    }

    // Lazy chain (P + I)/2 shares the stationary vector and kills period-2
    // oscillation. Two starts detect a reducible chain.
    auto solve_from = [&](std::vector<double> p) {
        std::vector<double> next(n);
        for (unsigned it = 0; it < max_iter; ++it) {
            for (std::size_t j = 0; j < n; ++j) next[j] = 0.5 * p[j];
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) next[j] += 0.5 * p[i] * transition[i][j];
            }
            double drift = 0;
            for (std::size_t j = 0; j < n; ++j) drift += std::abs(next[j] - p[j]);
            p.swap(next);
            if (drift <= tol * 0.5) return p;
        }
        throw std::runtime_error("power_iteration: did not converge");
    };

    std::vector<double> uniform(n, 1.0 / static_cast<double>(n));
    std::vector<double> skewed(n, 0.5 / static_cast<double>(n));
    skewed[0] += 0.5;
    auto p1 = solve_from(uniform);
    auto p2 = solve_from(skewed);
    double gap = 0;
    for (std::size_t j = 0; j < n; ++j) gap += std::abs(p1[j] - p2[j]);
    if (gap > 1e-6)
        throw std::runtime_error("power_iteration: stationary vector not unique (reducible chain)");
    return p1;
}

std::vector<double> pagerank_walkers(const std::vector<std::vector<double>>& transition,
                                     std::uint64_t n_walkers, double t, RandomStream& stream) {
    const std::size_t n = transition.size();
    if (n == 0 || n_walkers == 0)
        throw std::invalid_argument("pagerank_walkers: empty input");
    std::vector<std::vector<double>> cdf(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0;
        for (std::size_t j = 0; j < n; ++j) {
            acc += transition[i][j];
            cdf[i][j] = acc;
        }
    }
    std::vector<std::uint64_t> occupancy(n, 0);
    for (std::uint64_t w = 0; w < n_walkers; ++w) {
        // Unit jump rate: the number of jumps by time t is Poisson(t).
        auto jumps = sample_poisson(stream, t);
        std::size_t node = 0;
        for (std::uint64_t k = 0; k < jumps; ++k) {
            double u = stream.next_uniform();
            const auto& row = cdf[node];
            node = static_cast<std::size_t>(
                std::lower_bound(row.begin(), row.end(), u) - row.begin());
            if (node >= n) node = n - 1;
        }
        ++occupancy[node];
    }
    std::vector<double> frac(n);
    for (std::size_t j = 0; j < n; ++j)
        frac[j] = static_cast<double>(occupancy[j]) / static_cast<double>(n_walkers);
    return frac;
}

double taxi_rejection_exact(unsigned n_stations, unsigned n_taxis, double lambda, double nu) {
    if (n_stations < 2 || !(lambda > 0) || !(nu > 0))
        throw std::invalid_argument("taxi: requires N >= 2, lambda, nu > 0");
    BigRational rho = rationalize(lambda) * BigInt(n_stations) / rationalize(nu);
    BigRational num = 0, den = 0;
    for (unsigned k = 0; k <= n_taxis; ++k) {
        BigRational weight = rational_pow(rho, n_taxis - k) / BigRational(factorial(n_taxis - k));
        num += BigRational(binomial(n_stations - 2 + k, k)) * weight;
        den += BigRational(binomial(n_stations - 1 + k, k)) * weight;
    }
    return to_double(num / den);
}

double taxi_rejection_asymptotic(unsigned n_stations, unsigned n_taxis, double lambda, double nu) {
    double r = static_cast<double>(n_taxis) / static_cast<double>(n_stations);
    double g = lambda / nu;
    double s = g + r + 1;
    return 1.0 - 2.0 * r / (s + std::sqrt(s * s - 4.0 * g * r));
}

TaxiResult taxi_network(unsigned n_stations, unsigned n_taxis, double lambda, double nu,
                        std::uint64_t arrivals, RandomStream& stream) {
    TaxiResult res{};
    res.exact = n_taxis == 0 ? 1.0 : taxi_rejection_exact(n_stations, n_taxis, lambda, nu);
    res.asymptotic = taxi_rejection_asymptotic(n_stations, n_taxis, lambda, nu);

    std::vector<std::uint32_t> taxis(n_stations, 0);
    for (unsigned k = 0; k < n_taxis; ++k) ++taxis[k % n_stations];
    std::uint64_t in_transit = 0;

    const double arrival_rate = lambda * n_stations;
    std::uint64_t seen = 0, rejected = 0;
    const std::uint64_t burn = arrivals / 5;
    std::uint64_t counted = 0;
    while (counted < arrivals) {
        double completion_rate = nu * static_cast<double>(in_transit);
        double total = arrival_rate + completion_rate;
        // Jump chain only; holding times do not affect the counts.
        if (stream.next_uniform() * total < arrival_rate) {
            auto st = static_cast<std::size_t>(stream.next_below(n_stations));
            ++seen;
            bool reject = taxis[st] == 0;
            if (!reject) {
                --taxis[st];
                ++in_transit;
            }
            if (seen > burn) {
                ++counted;
                rejected += reject ? 1u : 0u;
            }
        } else {
            --in_transit;
            ++taxis[static_cast<std::size_t>(stream.next_below(n_stations))];
        }
    }
    res.simulated = static_cast<double>(rejected) / static_cast<double>(arrivals);
    return res;
}

std::vector<std::uint64_t> branching_sim(const std::vector<double>& offspring_pmf,
                                         unsigned generations, RandomStream& stream,
                                         std::uint64_t survival_cap) {
    AliasTable offspring(offspring_pmf);
    std::vector<std::uint64_t> path;
    path.reserve(generations + 1);
    std::uint64_t pop = 1;
    path.push_back(pop);
    for (unsigned g = 0; g < generations; ++g) {
        if (pop == 0 || pop > survival_cap) break;
        std::uint64_t next = 0;
        for (std::uint64_t i = 0; i < pop; ++i) next += offspring.sample(stream);
        pop = next;
        path.push_back(pop);
    }
    return path;
}

PowerSeries pgf_iterate(const PowerSeries& g, unsigned n, unsigned order) {
    PowerSeries acc = PowerSeries::identity(order);
    for (unsigned k = 0; k < n; ++k) acc = polynomial_compose(acc, g, order);
    return acc;
}

namespace {

// Flat tournament tree over fitness values for O(log n) argmin updates.
class MinTree {
  public:
    explicit MinTree(const std::vector<double>& values) {
        n_ = 1;
        while (n_ < values.size()) n_ <<= 1;
        tree_.assign(2 * n_, {1e300, SIZE_MAX});
        for (std::size_t i = 0; i < values.size(); ++i) tree_[n_ + i] = {values[i], i};
        for (std::size_t i = n_; i-- > 1;) tree_[i] = std::min(tree_[2 * i], tree_[2 * i + 1]);
    }
    void set(std::size_t i, double v) {
        std::size_t node = n_ + i;
        tree_[node] = {v, i};
        for (node >>= 1; node >= 1; node >>= 1) {
            tree_[node] = std::min(tree_[2 * node], tree_[2 * node + 1]);
            if (node == 1) break;
        }
    }
    std::size_t argmin() const { return tree_[1].second; }

  private:
    std::size_t n_;
    std::vector<std::pair<double, std::size_t>> tree_;
};

} // namespace

ChialvoResult chialvo(unsigned n_agents, std::uint64_t steps, RandomStream& stream) {
    if (n_agents < 100) throw std::invalid_argument("chialvo: requires n >= 100");
    std::vector<double> fitness(n_agents);
    for (auto& f : fitness) f = stream.next_uniform();
    MinTree tree(fitness);

    auto refresh = [&](std::size_t idx) {
        double v = stream.next_uniform();
        fitness[idx] = v;
        tree.set(idx, v);
    };

    const std::uint64_t burn = steps / 5;
    for (std::uint64_t k = 0; k < burn; ++k) {
        refresh(tree.argmin());
        refresh(static_cast<std::size_t>(stream.next_below(n_agents)));
        refresh(static_cast<std::size_t>(stream.next_below(n_agents)));
    }

    // Threshold from the stationary profile: quantiles of a uniform-above-c
    // law lie on x = c + (1 - c) F; the intercept at F = 0 estimates c.
    // Pool a few snapshots for stability.
    std::vector<double> pool;
    const unsigned snapshots = 8;
    for (unsigned snap = 0; snap < snapshots; ++snap) {
        for (std::uint64_t k = 0; k < steps / 20; ++k) {
            refresh(tree.argmin());
            refresh(static_cast<std::size_t>(stream.next_below(n_agents)));
            refresh(static_cast<std::size_t>(stream.next_below(n_agents)));
        }
        pool.insert(pool.end(), fitness.begin(), fitness.end());
    }
    std::sort(pool.begin(), pool.end());
    std::vector<double> qx, qy;
    for (double f = 0.15; f <= 0.90; f += 0.05) {
        qx.push_back(f);
        qy.push_back(pool[static_cast<std::size_t>(f * static_cast<double>(pool.size() - 1))]);
    }
    double threshold = fit_line(qx, qy).intercept;

    // Avalanche durations: excursions of the below-threshold count above 0.
    std::uint64_t below = 0;
    for (double f : fitness) below += f < threshold ? 1u : 0u;
    auto refresh_tracking = [&](std::size_t idx) {
        below -= fitness[idx] < threshold ? 1u : 0u;
        double v = stream.next_uniform();
        fitness[idx] = v;
        tree.set(idx, v);
        below += v < threshold ? 1u : 0u;
    };
    std::vector<double> durations;
    std::uint64_t current = 0;
    for (std::uint64_t k = 0; k < steps; ++k) {
        refresh_tracking(tree.argmin());
        refresh_tracking(static_cast<std::size_t>(stream.next_below(n_agents)));
        refresh_tracking(static_cast<std::size_t>(stream.next_below(n_agents)));
        if (below > 0) {
            ++current;
        } else if (current > 0) {
            durations.push_back(static_cast<double>(current));
            current = 0;
        }
    }

    double exponent = 0;
    if (durations.size() > 200) {
        auto fit = fit_loglog_density_samples(durations, 2.0, 200.0, 5);
        exponent = -fit.slope;
    }
    return {threshold, exponent, fitness};
}

} // namespace stochlab
