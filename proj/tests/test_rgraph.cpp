#include "stochlab/rgraph.hpp"

#include "stochlab/rational.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

using namespace stochlab;

namespace {

// Brute-force triangle counter over vertex triples.
std::uint64_t triangles_by_triples(const UGraph& g) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> edge_set;
    for (auto [u, v] : g.edges) edge_set.insert({std::min(u, v), std::max(u, v)});
    auto has = [&](std::uint32_t a, std::uint32_t b) {
        return edge_set.count({std::min(a, b), std::max(a, b)}) > 0;
    };
    std::uint64_t count = 0;
    for (std::uint32_t a = 0; a < g.n; ++a) {
        for (std::uint32_t b = a + 1; b < g.n; ++b) {
            if (!has(a, b)) continue;
            for (std::uint32_t c = b + 1; c < g.n; ++c) {
                if (has(a, c) && has(b, c)) ++count;
            }
        }
    }
    return count;
}

// Sequential preferential-attachment chain with in-degree + a weights; the
// new vertex can self-loop with weight a. Exact rational distribution over
// target tuples by enumeration.
void sequential_distribution(unsigned n, const BigRational& a,
                             std::vector<unsigned>& targets, const BigRational& prob,
                             std::vector<std::uint64_t>& in_degree,
                             std::map<std::vector<unsigned>, BigRational>& out) {
    unsigned i = static_cast<unsigned>(targets.size()) + 1;
    if (i > n) {
        out[targets] += prob;
        return;
    }
    // Weight of target j <= i-1: in_deg(j) + a; weight of the self-loop: a.
    BigRational denom = (a + 1) * BigInt(i - 1) + a;
    for (unsigned j = 1; j <= i; ++j) {
        BigRational weight = j == i ? a : BigRational(BigInt(in_degree[j])) + a;
        targets.push_back(j);
        ++in_degree[j];
        sequential_distribution(n, a, targets, prob * weight / denom, in_degree, out);
        --in_degree[j];
        targets.pop_back();
    }
}

// Exact distribution of the xi-representation by enumerating all xi tuples.
void xi_distribution(unsigned n, const BigRational& a, unsigned i, std::vector<unsigned>& xi,
                     const BigRational& prob, std::map<std::vector<unsigned>, BigRational>& out) {
    if (i > n) {
        // Resolve targets by chasing even values.
        std::vector<unsigned> targets(n);
        for (unsigned v = 1; v <= n; ++v) {
            unsigned value = xi[v - 1];
            if (value % 2 == 1) {
                targets[v - 1] = (value + 1) / 2;
            } else {
                targets[v - 1] = targets[value / 2 - 1];
            }
        }
        out[targets] += prob;
        return;
    }
    BigRational denom = (a + 1) * BigInt(i) - 1;
    for (unsigned value = 1; value <= 2 * i - 1; ++value) {
        BigRational weight = value % 2 == 1 ? a : BigRational(1);
        xi.push_back(value);
        xi_distribution(n, a, i + 1, xi, prob * weight / denom, out);
        xi.pop_back();
    }
}

} // namespace

TEST_CASE("erdos-renyi boundary cases") {
    RandomStream s{Seed{61}};
    auto empty = erdos_renyi(50, 0.0, s);
    CHECK(empty.edges.empty());

    auto complete = erdos_renyi(50, 1.0, s);
    CHECK(complete.edges.size() == 50 * 49 / 2);
    std::set<std::pair<std::uint32_t, std::uint32_t>> uniq(complete.edges.begin(),
                                                           complete.edges.end());
    CHECK(uniq.size() == complete.edges.size());
    for (auto [u, v] : complete.edges) {
        CHECK(u < v);
        CHECK(v < 50);
    }
}

TEST_CASE("erdos-renyi edge counts match the binomial law") {
    RandomStream s{Seed{62}};
    const std::uint64_t n = 200;
    const double p = 0.1;
    const unsigned replicas = 400;
    double mean = 0;
    for (unsigned rep = 0; rep < replicas; ++rep) {
        RandomStream rs = s.split(rep);
        mean += static_cast<double>(erdos_renyi(n, p, rs).edges.size());
    }
    mean /= replicas;
    double pairs = n * (n - 1) / 2.0;
    double sigma = std::sqrt(pairs * p * (1 - p) / replicas);
    CHECK(std::abs(mean - pairs * p) < 4 * sigma);
}

TEST_CASE("edge-count distribution is invariant under vertex relabeling") {
    RandomStream s{Seed{63}};
    auto g = erdos_renyi(100, 0.05, s);
    // Relabeling permutes endpoints; the edge multiset size is preserved and
    // stays a simple graph.
    std::vector<std::uint32_t> perm(100);
    for (unsigned i = 0; i < 100; ++i) perm[i] = (i * 37 + 11) % 100;
    std::set<std::pair<std::uint32_t, std::uint32_t>> relabeled;
    for (auto [u, v] : g.edges) {
        auto a = perm[u], b = perm[v];
        relabeled.insert({std::min(a, b), std::max(a, b)});
    }
    CHECK(relabeled.size() == g.edges.size());
}

TEST_CASE("triangle counter equals brute force on small graphs") {
    RandomStream s{Seed{64}};
    for (unsigned rep = 0; rep < 20; ++rep) {
        RandomStream rs = s.split(rep);
        auto g = erdos_renyi(50, 0.15, rs);
        CHECK(triangle_count(g) == triangles_by_triples(g));
    }
}

TEST_CASE("triangle statistics in the critical window") {
    RandomStream s{Seed{65}};
    auto stats = triangle_stats(500, 2.0, 400, s);
    double mu = 8.0 / 6.0;
    CHECK(std::abs(stats.mean_triangles - mu) < 0.25);
    CHECK(std::abs(stats.zero_frequency - std::exp(-mu)) < 0.08);
}

TEST_CASE("connectivity threshold around c = 1") {
    RandomStream s{Seed{66}};
    RandomStream s1 = s.split(1), s2 = s.split(2);
    CHECK(connectivity_experiment(2000, 2.0, 50, s1) >= 0.95);
    CHECK(connectivity_experiment(2000, 0.5, 50, s2) <= 0.05);

    RandomStream s3 = s.split(3);
    auto tiny = erdos_renyi(3, 1.0, s3);
    CHECK(is_connected(tiny));
}

TEST_CASE("buckley-osthus basic shape") {
    RandomStream s{Seed{67}};
    auto g = buckley_osthus(1000, 1.0, s);
    CHECK(g.target.size() == 1000);
    auto hist = in_degree_histogram(g);
    std::uint64_t in_sum = 0;
    for (std::size_t k = 1; k < hist.size(); ++k) in_sum += k * hist[k];
    CHECK(in_sum == 1000);
    // Vertex 1 always self-loops.
    CHECK(g.target[0] == 0);
}

TEST_CASE("buckley-osthus degree slopes for the reference parameters") {
    for (double a : {1.0, 0.277}) {
        RandomStream s{Seed{25}};
        std::vector<std::uint64_t> pooled;
        for (unsigned rep = 0; rep < 16; ++rep) {
            RandomStream rs = s.split(rep);
            auto hist = in_degree_histogram(buckley_osthus(100000, a, rs));
            if (hist.size() > pooled.size()) pooled.resize(hist.size(), 0);
            for (std::size_t k = 0; k < hist.size(); ++k) pooled[k] += hist[k];
        }
        double slope = degree_powerlaw_fit(pooled);
        CHECK(std::abs(slope + 2.0 + a) < (a == 1.0 ? 0.15 : 0.2));
    }
}

TEST_CASE("xi-representation equals the sequential chain exactly at n = 3") {
    const BigRational a(1);
    std::map<std::vector<unsigned>, BigRational> seq, xi;
    {
        std::vector<unsigned> targets{1}; // vertex 1 self-loops with probability 1
        std::vector<std::uint64_t> in_degree(5, 0);
        in_degree[1] = 1;
        sequential_distribution(3, a, targets, BigRational(1), in_degree, seq);
    }
    {
        std::vector<unsigned> start;
        xi_distribution(3, a, 1, start, BigRational(1), xi);
    }
    BigRational seq_total = 0, xi_total = 0;
    for (const auto& [k, v] : seq) seq_total += v;
    for (const auto& [k, v] : xi) xi_total += v;
    CHECK(seq_total == BigRational(1));
    CHECK(xi_total == BigRational(1));
    CHECK(seq.size() == xi.size());
    for (const auto& [graph, prob] : seq) {
        REQUIRE(xi.count(graph) == 1);
        CHECK(xi.at(graph) == prob);
    }
}

TEST_CASE("degree fit recovers a synthetic k^-3 density and rejects flats") {
    std::vector<std::uint64_t> hist(10001, 0);
    for (std::size_t k = 1; k <= 10000; ++k)
        hist[k] = static_cast<std::uint64_t>(std::llround(1e12 * std::pow(k, -3.0)));
    double slope = degree_powerlaw_fit(hist);
    CHECK(std::abs(slope + 3.0) < 0.02);

    std::vector<std::uint64_t> flat(6, 0);
    flat[3] = 100;
    CHECK_THROWS_AS(degree_powerlaw_fit(flat), std::invalid_argument);
}

TEST_CASE("monkey corpus word lengths are geometric") {
    RandomStream s{Seed{68}};
    auto corpus = monkey_corpus(4, 200000, s);
    REQUIRE(corpus.tokens.size() > 1000);
    std::map<std::size_t, std::uint64_t> len_counts;
    for (const auto& w : corpus.tokens) ++len_counts[w.size()];
    double total = static_cast<double>(corpus.tokens.size());
    // P(len = k | len >= 1) = (n/(n+1))^{k-1} * 1/(n+1) normalized.
    double p_letter = 4.0 / 5.0;
    for (std::size_t k = 1; k <= 4; ++k) {
        double expect = std::pow(p_letter, static_cast<double>(k - 1)) * (1 - p_letter) /
                        p_letter * p_letter; // geometric on {1,2,...}
        double freq = static_cast<double>(len_counts[k]) / total;
        double sigma = std::sqrt(expect * (1 - expect) / total);
        CHECK(std::abs(freq - expect) < 5 * sigma + 1e-3);
    }
}

TEST_CASE("zipf fit on exact synthetic ranks") {
    // frequency(r) = C / (r + B)^alpha with known parameters.
    std::vector<std::uint64_t> counts;
    const double alpha = 1.2, b_true = 1.5, c_scale = 1e7;
    for (unsigned r = 1; r <= 3000; ++r) {
        counts.push_back(static_cast<std::uint64_t>(
            std::llround(c_scale / std::pow(r + b_true, alpha))));
    }
    auto fit = zipf_fit_counts(counts);
    CHECK(std::abs(fit.alpha - alpha) < 0.02);
    CHECK(std::abs(fit.shift - b_true) < 0.3);
}

TEST_CASE("monkey corpus obeys the zipf-mandelbrot law") {
    RandomStream s{Seed{69}};
    auto corpus = monkey_corpus(26, 10000000, s);
    auto fit = zipf_fit(corpus);
    double alpha = std::log(27.0) / std::log(26.0);
    CHECK(std::abs(fit.alpha - alpha) < 0.05);

    RandomStream s2{Seed{70}};
    auto small = monkey_corpus(2, 2000000, s2);
    auto fit2 = zipf_fit(small);
    CHECK(std::abs(fit2.shift - 2.0) < 0.5);
}

TEST_CASE("heaps law slope is the reciprocal zipf exponent") {
    RandomStream s{Seed{71}};
    auto corpus = monkey_corpus(26, 10000000, s);
    std::vector<std::uint64_t> prefixes;
    for (double f = 0.01; f <= 1.0; f *= 1.6)
        prefixes.push_back(static_cast<std::uint64_t>(f * corpus.tokens.size()));
    auto res = heaps_check(corpus, prefixes);
    for (std::size_t i = 1; i < res.distinct.size(); ++i)
        CHECK(res.distinct[i] >= res.distinct[i - 1]);
    double alpha = std::log(27.0) / std::log(26.0);
    CHECK(std::abs(res.slope - 1.0 / alpha) < 0.1);

    auto zero = heaps_check(corpus, {0});
    CHECK(zero.distinct[0] == 0);
}
