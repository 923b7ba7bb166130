#pragma once

#include "stochlab/rng.hpp"
#include "stochlab/stats.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace stochlab {

// Undirected simple graph as an edge list; endpoints in [0, n).
struct UGraph {
    std::uint64_t n = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

// Directed multigraph where vertex i owns exactly one out-edge target[i];
// loops and parallel edges allowed.
struct OutEdgeGraph {
    std::vector<std::uint32_t> target;
};

// G(n, p) by geometric skipping over the pair index: O(edges) work.
UGraph erdos_renyi(std::uint64_t n, double p, RandomStream& stream);

std::uint64_t triangle_count(const UGraph& graph);
bool is_connected(const UGraph& graph);

struct TriangleStats {
    double mean_triangles;
    double zero_frequency;
};
// Triangle statistics of G(n, c/n) over independent replicas.
TriangleStats triangle_stats(std::uint64_t n, double c, unsigned replicas, RandomStream& stream);

// Connectivity frequency of G(n, c ln n / n).
double connectivity_experiment(std::uint64_t n, double c, unsigned replicas, RandomStream& stream);

// Preferential-attachment growth via the independent-variable construction:
// xi_i picks either a direct target (odd values) or defers to the target of
// an earlier vertex (even values, resolved by chasing).
OutEdgeGraph buckley_osthus(std::uint64_t n, double a, RandomStream& stream);

std::vector<std::uint64_t> in_degree_histogram(const OutEdgeGraph& graph);

// Least-squares slope of the log-binned degree density over the decade
// below the top 1% of vertices. Throws when fewer than 10 distinct degrees.
double degree_powerlaw_fit(const std::vector<std::uint64_t>& degree_histogram);

struct Corpus {
    std::vector<std::string> tokens;
    unsigned alphabet = 0;
};

// i.i.d. keystrokes over n letters plus space, each with probability
// 1/(n+1); words are maximal letter runs between two delimiters.
Corpus monkey_corpus(unsigned n_letters, std::uint64_t keystrokes, RandomStream& stream);

struct ZipfFit {
    double alpha;
    double shift;  // B
    double scale;  // C
};

// Rank-frequency fit of frequency(r) = C / (r + B)^alpha in log space,
// ranks with frequency < 5 excluded, B chosen on a grid.
ZipfFit zipf_fit(const Corpus& corpus);
ZipfFit zipf_fit_counts(const std::vector<std::uint64_t>& sorted_counts);

// Distinct-word counts at the given prefix lengths (in tokens) and the
// log-log slope across them.
struct HeapsResult {
    std::vector<std::uint64_t> distinct;
    double slope;
};
HeapsResult heaps_check(const Corpus& corpus, const std::vector<std::uint64_t>& prefix_lengths);

} // namespace stochlab
