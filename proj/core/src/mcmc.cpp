#include "stochlab/mcmc.hpp"

#include "stochlab/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace stochlab {

double acceptance_value(AcceptanceRule rule, double z) {
    if (!(z >= 0)) throw std::invalid_argument("acceptance_value: z must be nonnegative");
    switch (rule) {
        case AcceptanceRule::metropolis: return std::min(z, 1.0);
        case AcceptanceRule::barker: return z / (1.0 + z);
    }
    return 0;
}

std::vector<std::vector<double>> mh_kernel(const std::vector<double>& target_weights,
                                           const std::vector<std::vector<double>>& proposal,
                                           AcceptanceRule rule) {
    const std::size_t n = target_weights.size();
    if (n == 0 || proposal.size() != n)
        throw std::invalid_argument("mh_kernel: shape mismatch");
    for (double w : target_weights) {
        if (!(w > 0) || !std::isfinite(w))
            throw std::invalid_argument("mh_kernel: weights must be positive and finite");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (proposal[i].size() != n) throw std::invalid_argument("mh_kernel: proposal not square");
        double sum = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (proposal[i][j] < 0) throw std::invalid_argument("mh_kernel: negative proposal");
            if (std::abs(proposal[i][j] - proposal[j][i]) > 1e-12)
                throw std::invalid_argument("mh_kernel: proposal must be symmetric");
            sum += proposal[i][j];
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("mh_kernel: proposal rows must sum to 1");
    }

    std::vector<std::vector<double>> kernel(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        double off_diagonal = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            double z = target_weights[j] / target_weights[i];
            kernel[i][j] = proposal[i][j] * acceptance_value(rule, z);
            off_diagonal += kernel[i][j];
        }
        kernel[i][i] = 1.0 - off_diagonal;
    }
    return kernel;
}

double detailed_balance_residual(const std::vector<double>& target_weights,
                                 const std::vector<std::vector<double>>& kernel) {
    const std::size_t n = target_weights.size();
    long double total = 0;
    for (double w : target_weights) total += w;
    long double worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            long double lhs = static_cast<long double>(target_weights[i]) / total * kernel[i][j];
            long double rhs = static_cast<long double>(target_weights[j]) / total * kernel[j][i];
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return static_cast<double>(worst);
}

double ising_energy(const IsingChain& chain) {
    double h = 0;
    for (std::size_t k = 0; k + 1 < chain.spins.size(); ++k)
        h += (1.0 - chain.spins[k] * chain.spins[k + 1]) / 2.0;
    return h;
}

IsingChain glauber_ising_1d(unsigned n, double beta, std::uint64_t updates, RandomStream& stream,
                            int initial_spin) {
    if (n < 3) throw std::invalid_argument("glauber_ising_1d: requires n >= 3");
    if (beta < 0) throw std::invalid_argument("glauber_ising_1d: requires beta >= 0");
    IsingChain chain;
    chain.spins.assign(n, static_cast<std::int8_t>(initial_spin >= 0 ? 1 : -1));
    chain.spins.front() = 1;
    chain.spins.back() = 1;

    for (std::uint64_t k = 0; k < updates; ++k) {
        // Interior sites are 1 .. n-2.
        auto site = static_cast<std::size_t>(1 + stream.next_below(n - 2));
        // Heat bath: P(spin -> +1) from the Gibbs weights of the two local
        // configurations; only the two adjacent bonds differ.
        double neighbor_sum = chain.spins[site - 1] + chain.spins[site + 1];
        double delta_h = neighbor_sum; // H(sigma_-1) - H(sigma_+1)
        double p_plus = 1.0 / (1.0 + std::exp(-beta * delta_h));
        chain.spins[site] = stream.next_uniform() < p_plus ? 1 : -1;
    }
    return chain;
}

std::uint64_t glauber_hitting_time(unsigned n, double beta, std::uint64_t cap,
                                   RandomStream& stream) {
    IsingChain chain;
    chain.spins.assign(n, -1);
    chain.spins.front() = 1;
    chain.spins.back() = 1;
    std::int64_t minus_count = static_cast<std::int64_t>(n) - 2;
    for (std::uint64_t k = 1; k <= cap; ++k) {
        auto site = static_cast<std::size_t>(1 + stream.next_below(n - 2));
        double neighbor_sum = chain.spins[site - 1] + chain.spins[site + 1];
        double p_plus = 1.0 / (1.0 + std::exp(-beta * neighbor_sum));
        std::int8_t next = stream.next_uniform() < p_plus ? 1 : -1;
        if (next != chain.spins[site]) minus_count += next == 1 ? -1 : 1;
        chain.spins[site] = next;
        if (minus_count == 0) return k;
    }
    return UINT64_MAX;
}

namespace {

double chord_limit(const MembershipOracle& inside, const std::vector<double>& x,
                   const std::vector<double>& dir, double sign) {
    // Doubling search for an outside point, then 60 bisections.
    const std::size_t d = x.size();
    std::vector<double> probe(d);
    auto at = [&](double t) -> const std::vector<double>& {
        for (std::size_t i = 0; i < d; ++i) probe[i] = x[i] + sign * t * dir[i];
        return probe;
    };
    double t_out = 1e-6;
    int guard = 0;
    while (inside(at(t_out))) {
        t_out *= 2;
        if (++guard > 600) throw std::runtime_error("hit_and_run: body looks unbounded");
    }
    double t_in = 0;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (t_in + t_out);
        (inside(at(mid)) ? t_in : t_out) = mid;
    }
    return t_in;
}

} // namespace

std::vector<std::vector<double>> hit_and_run(const MembershipOracle& inside,
                                             std::vector<double> start, std::uint64_t steps,
                                             RandomStream& stream) {
    if (!inside(start)) throw std::invalid_argument("hit_and_run: start point not in the body");
    const std::size_t d = start.size();
    std::vector<std::vector<double>> samples;
    samples.reserve(steps);
    std::vector<double> x = std::move(start);
    for (std::uint64_t k = 0; k < steps; ++k) {
        auto dir = sphere_uniform(stream, static_cast<unsigned>(d));
        double t_plus = chord_limit(inside, x, dir, +1.0);
        double t_minus = chord_limit(inside, x, dir, -1.0);
        double span = t_plus + t_minus;
        if (!(span > 0)) throw std::runtime_error("hit_and_run: degenerate chord");
        double t = -t_minus + span * stream.next_uniform();
        std::vector<double> next(d);
        for (std::size_t i = 0; i < d; ++i) next[i] = x[i] + t * dir[i];
        if (inside(next)) x = std::move(next); // boundary round-off keeps the old point
        samples.push_back(x);
    }
    return samples;
}

AnnealingResult simulated_annealing(const std::function<double(const std::vector<double>&)>& f,
                                    const std::vector<double>& lower,
                                    const std::vector<double>& upper, double c,
                                    std::uint64_t steps, RandomStream& stream,
                                    std::function<std::vector<double>(const std::vector<double>&)>
                                        gradient) {
    if (!(c > 0)) throw std::invalid_argument("simulated_annealing: requires c > 0");
    const std::size_t d = lower.size();
    if (upper.size() != d) throw std::invalid_argument("simulated_annealing: box shape mismatch");

    const double dt = 1e-2;
    const double fd_step = 1e-5;
    auto grad = [&](const std::vector<double>& x) {
        if (gradient) return gradient(x);
        std::vector<double> g(d), probe = x;
        for (std::size_t i = 0; i < d; ++i) {
            probe[i] = x[i] + fd_step;
            double hi = f(probe);
            probe[i] = x[i] - fd_step;
            double lo = f(probe);
            probe[i] = x[i];
            g[i] = (hi - lo) / (2 * fd_step);
        }
        return g;
    };

    std::vector<double> x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = lower[i] + (upper[i] - lower[i]) * stream.next_uniform();
    AnnealingResult best{x, f(x)};

    for (std::uint64_t k = 0; k < steps; ++k) {
        double temp = c / std::log(2.0 + static_cast<double>(k) * dt);
        auto g = grad(x);
        for (std::size_t i = 0; i < d; ++i) {
            double noise = std::sqrt(2.0 * temp * dt) * sample_standard_normal(stream);
            x[i] += -g[i] * dt + noise;
            // Reflect at the walls.
            if (x[i] < lower[i]) x[i] = std::min(2 * lower[i] - x[i], upper[i]);
            if (x[i] > upper[i]) x[i] = std::max(2 * upper[i] - x[i], lower[i]);
        }
        double value = f(x);
        if (value < best.best_value) best = {x, value};
    }
    return best;
}

MonotoneSearchResult monotone_random_search(
    const std::function<double(const std::vector<double>&)>& f, std::vector<double> start,
    const std::function<double(RandomStream&)>& radial_sampler, std::uint64_t steps,
    const std::vector<double>& optimum, double epsilon, RandomStream& stream) {
    const std::size_t d = start.size();
    std::vector<double> x = std::move(start);
    double fx = f(x);
    MonotoneSearchResult res{x, fx, 0};

    auto in_ball = [&](const std::vector<double>& p) {
        double r2 = 0;
        for (std::size_t i = 0; i < d; ++i) r2 += (p[i] - optimum[i]) * (p[i] - optimum[i]);
        return r2 <= epsilon * epsilon;
    };

    std::vector<double> cand(d);
    for (std::uint64_t k = 1; k <= steps; ++k) {
        auto dir = sphere_uniform(stream, static_cast<unsigned>(d));
        double radius = radial_sampler(stream);
        for (std::size_t i = 0; i < d; ++i) cand[i] = x[i] + radius * dir[i];
        double fc = f(cand);
        if (fc <= fx) {
            x = cand;
            fx = fc;
        }
        if (fx < res.best_value) res = {x, fx, res.hitting_time};
        if (res.hitting_time == 0 && in_ball(x)) res.hitting_time = k;
    }
    res.best_point = x;
    res.best_value = fx;
    return res;
}

std::vector<std::vector<double>> synthetic_bigram_matrix(unsigned alphabet_size, Seed seed) {
    if (alphabet_size < 2) throw std::invalid_argument("bigram matrix: alphabet too small");
    RandomStream s{seed};
    std::vector<std::vector<double>> bigram(alphabet_size, std::vector<double>(alphabet_size));
    // Zipf-like column marginals mimic natural language; the strongly
    // non-uniform symbol frequencies give the decoding walk a global
    // funnel, and the per-cell noise keeps the permutation identifiable.
    for (auto& row : bigram) {
        double total = 0;
        for (unsigned j = 0; j < alphabet_size; ++j) {
            row[j] = std::exp(1.5 * s.next_uniform()) / static_cast<double>(j + 1) + 1e-3;
            total += row[j];
        }
        for (auto& p : row) p /= total;
    }
    return bigram;
}

std::vector<unsigned> sample_bigram_text(const std::vector<std::vector<double>>& bigram,
                                         std::size_t length, RandomStream& stream) {
    const auto m = static_cast<unsigned>(bigram.size());
    if (length == 0) throw std::invalid_argument("bigram text: empty length");
    std::vector<unsigned> text(length);
    text[0] = static_cast<unsigned>(stream.next_below(m));
    for (std::size_t k = 1; k < length; ++k) {
        double u = stream.next_uniform();
        double acc = 0;
        unsigned next = m - 1;
        for (unsigned j = 0; j < m; ++j) {
            acc += bigram[text[k - 1]][j];
            if (u < acc) {
                next = j;
                break;
            }
        }
        text[k] = next;
    }
    return text;
}

void validate(const CipherProblem& problem) {
    if (problem.alphabet_size == 0) throw std::invalid_argument("cipher: empty alphabet");
    if (problem.ciphertext.empty()) throw std::invalid_argument("cipher: empty ciphertext");
    if (problem.bigram.size() != problem.alphabet_size)
        throw std::invalid_argument("cipher: bigram matrix size mismatch");
    for (const auto& row : problem.bigram) {
        if (row.size() != problem.alphabet_size)
            throw std::invalid_argument("cipher: bigram matrix not square");
        double sum = 0;
        for (double p : row) {
            if (p < 0) throw std::invalid_argument("cipher: negative bigram probability");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("cipher: bigram rows must sum to 1");
    }
    for (unsigned c : problem.ciphertext) {
        if (c >= problem.alphabet_size)
            throw std::invalid_argument("cipher: ciphertext symbol outside alphabet");
    }
}

double cipher_log_likelihood(const CipherProblem& problem, const std::vector<unsigned>& decode) {
    // Work from bigram counts; zero-probability transitions are floored to
    // keep the log-likelihood finite.
    const unsigned m = problem.alphabet_size;
    std::vector<std::vector<std::uint32_t>> counts(m, std::vector<std::uint32_t>(m, 0));
    for (std::size_t k = 0; k + 1 < problem.ciphertext.size(); ++k)
        ++counts[problem.ciphertext[k]][problem.ciphertext[k + 1]];
    double ll = 0;
    for (unsigned a = 0; a < m; ++a) {
        for (unsigned b = 0; b < m; ++b) {
            if (counts[a][b] == 0) continue;
            double p = std::max(problem.bigram[decode[a]][decode[b]], 1e-12);
            ll += counts[a][b] * std::log(p);
        }
    }
    return ll;
}

CipherResult cipher_mcmc(const CipherProblem& problem, std::uint64_t iterations,
                         RandomStream& stream) {
    validate(problem);
    const unsigned m = problem.alphabet_size;

    std::vector<std::vector<std::uint32_t>> counts(m, std::vector<std::uint32_t>(m, 0));
    for (std::size_t k = 0; k + 1 < problem.ciphertext.size(); ++k)
        ++counts[problem.ciphertext[k]][problem.ciphertext[k + 1]];

    auto log_like = [&](const std::vector<unsigned>& decode) {
        double ll = 0;
        for (unsigned a = 0; a < m; ++a) {
            for (unsigned b = 0; b < m; ++b) {
                if (counts[a][b] == 0) continue;
                ll += counts[a][b] * std::log(std::max(problem.bigram[decode[a]][decode[b]], 1e-12));
            }
        }
        return ll;
    };

    std::vector<unsigned> decode(m);
    std::iota(decode.begin(), decode.end(), 0u);
    double ll = log_like(decode);
    CipherResult res{decode, ll, ll};

    for (std::uint64_t it = 0; it < iterations; ++it) {
        auto i = static_cast<std::size_t>(stream.next_below(m));
        auto j = static_cast<std::size_t>(stream.next_below(m - 1));
        if (j >= i) ++j;
        std::swap(decode[i], decode[j]);
        double ll_new = log_like(decode);
        bool accept = ll_new >= ll || stream.next_uniform() < std::exp(ll_new - ll);
        if (accept) {
            ll = ll_new;
            if (ll > res.best_log_likelihood) {
                res.best_log_likelihood = ll;
                res.decode_map = decode;
            }
        } else {
            std::swap(decode[i], decode[j]);
        }
    }
    return res;
}

} // namespace stochlab
