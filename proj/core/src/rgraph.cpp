#include "stochlab/rgraph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace stochlab {

UGraph erdos_renyi(std::uint64_t n, double p, RandomStream& stream) {
    if (!(p >= 0 && p <= 1)) throw std::invalid_argument("erdos_renyi: p outside [0,1]");
    UGraph g;
    g.n = n;
    if (n < 2 || p == 0) return g;

    // Walk the linearized pair index (i, j), i < j, skipping a geometric
    // number of pairs between successive edges.
    std::uint64_t i = 0, j = 0; // j == i means "before the first pair of row i"
    const double log_q = std::log1p(-p);
    for (;;) {
        std::uint64_t gap;
        if (p == 1.0) {
            gap = 1;
        } else {
            double u = stream.next_uniform_pos();
            double g_real = std::floor(std::log(u) / log_q);
            gap = g_real >= 1e18 ? UINT64_MAX : static_cast<std::uint64_t>(g_real) + 1;
        }
        // Advance the cursor by `gap` pairs.
        while (gap > 0 && i + 1 < n) {
            std::uint64_t row_left = n - 1 - j; // pairs remaining in row i after column j
            if (gap <= row_left) {
                j += gap;
                gap = 0;
            } else {
                gap -= row_left;
                ++i;
                j = i;
            }
        }
        if (gap > 0) break; // ran past the last pair
        g.edges.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    }
    return g;
}

std::uint64_t triangle_count(const UGraph& graph) {
    // Sorted adjacency, then intersect neighbour lists along each edge,
    // counting each triangle at its lexicographically smallest edge.
    std::vector<std::vector<std::uint32_t>> adj(graph.n);
    for (auto [u, v] : graph.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());
    std::uint64_t count = 0;
    for (auto [u, v] : graph.edges) {
        if (u > v) std::swap(u, v);
        const auto& a = adj[u];
        const auto& b = adj[v];
        std::size_t ia = 0, ib = 0;
        while (ia < a.size() && ib < b.size()) {
            if (a[ia] < b[ib]) ++ia;
            else if (a[ia] > b[ib]) ++ib;
            else {
                count += a[ia] > v ? 1 : 0;
                ++ia;
                ++ib;
            }
        }
    }
    return count;
}

namespace {

struct DisjointSet {
    std::vector<std::uint32_t> parent;
    explicit DisjointSet(std::uint64_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

} // namespace

bool is_connected(const UGraph& graph) {
    if (graph.n <= 1) return true;
    DisjointSet ds(graph.n);
    for (auto [u, v] : graph.edges) ds.unite(u, v);
    std::uint32_t root = ds.find(0);
    for (std::uint64_t v = 1; v < graph.n; ++v) {
        if (ds.find(static_cast<std::uint32_t>(v)) != root) return false;
    }
    return true;
}

TriangleStats triangle_stats(std::uint64_t n, double c, unsigned replicas, RandomStream& stream) {
    if (n < 100 || !(c > 0)) throw std::invalid_argument("triangle_stats: requires n >= 100, c > 0");
    double p = c / static_cast<double>(n);
    double sum = 0;
    unsigned zeros = 0;
    for (unsigned rep = 0; rep < replicas; ++rep) {
        RandomStream s = stream.split(rep);
        auto g = erdos_renyi(n, p, s);
        auto t = triangle_count(g);
        sum += static_cast<double>(t);
        zeros += t == 0 ? 1u : 0u;
    }
    return {sum / replicas, static_cast<double>(zeros) / replicas};
}

double connectivity_experiment(std::uint64_t n, double c, unsigned replicas, RandomStream& stream) {
    if (n < 3) throw std::invalid_argument("connectivity_experiment: requires n >= 3");
    double p = std::min(1.0, c * std::log(static_cast<double>(n)) / static_cast<double>(n));
    unsigned connected = 0;
    for (unsigned rep = 0; rep < replicas; ++rep) {
        RandomStream s = stream.split(rep);
        connected += is_connected(erdos_renyi(n, p, s)) ? 1u : 0u;
    }
    return static_cast<double>(connected) / replicas;
}

OutEdgeGraph buckley_osthus(std::uint64_t n, double a, RandomStream& stream) {
    if (n == 0 || !(a > 0)) throw std::invalid_argument("buckley_osthus: requires n >= 1, a > 0");
    OutEdgeGraph g;
    g.target.resize(n);
    // Vertices are 1-based in the construction; store targets 0-based.
    for (std::uint64_t i = 1; i <= n; ++i) {
        // xi_i = 2j - 1 (probability a / ((a+1) i - 1), j = 1..i): edge to j.
        // xi_i = 2j     (probability 1 / ((a+1) i - 1), j = 1..i-1): edge to
        // wherever vertex j's edge went; chasing terminates since j < i.
        double denom = (a + 1.0) * static_cast<double>(i) - 1.0;
        double u = stream.next_uniform() * denom;
        std::uint64_t target;
        if (u < a * static_cast<double>(i)) {
            target = static_cast<std::uint64_t>(u / a) + 1;
            if (target > i) target = i;
        } else {
            double w = u - a * static_cast<double>(i);
            std::uint64_t j = static_cast<std::uint64_t>(w) + 1;
            if (j > i - 1) j = i - 1;
            target = static_cast<std::uint64_t>(g.target[j - 1]) + 1;
        }
        g.target[i - 1] = static_cast<std::uint32_t>(target - 1);
    }
    return g;
}

std::vector<std::uint64_t> in_degree_histogram(const OutEdgeGraph& graph) {
    std::vector<std::uint64_t> in_degree(graph.target.size(), 0);
    for (auto t : graph.target) ++in_degree[t];
    std::uint64_t max_deg = 0;
    for (auto d : in_degree) max_deg = std::max(max_deg, d);
    std::vector<std::uint64_t> hist(max_deg + 1, 0);
    for (auto d : in_degree) ++hist[d];
    return hist;
}

double degree_powerlaw_fit(const std::vector<std::uint64_t>& degree_histogram) {
    std::map<double, double> density;
    std::uint64_t distinct = 0, vertices = 0;
    for (std::size_t k = 1; k < degree_histogram.size(); ++k) {
        if (degree_histogram[k] > 0) {
            density[static_cast<double>(k)] = static_cast<double>(degree_histogram[k]);
            ++distinct;
            vertices += degree_histogram[k];
        }
    }
    if (distinct < 10) throw std::invalid_argument("degree_powerlaw_fit: too few distinct degrees");

    // The stated exponents are asymptotic in k, so the fit decade must sit
    // in the tail, but not so deep that finite-size depletion and single-
    // vertex counting noise take over: it ends at the degree below the top
    // 0.1% of degree-carrying vertices (at least 10 kept above).
    auto keep_above = std::max<std::uint64_t>(10, vertices / 1000);
    std::uint64_t cumulative = 0;
    double hi = density.rbegin()->first;
    for (auto it = density.rbegin(); it != density.rend(); ++it) {
        cumulative += static_cast<std::uint64_t>(it->second);
        if (cumulative >= keep_above) {
            hi = it->first;
            break;
        }
    }
    double lo = std::max(1.0, hi / 10.0);
    if (hi <= lo * 1.5) {
        // Degenerate histogram; widen toward the full support.
        lo = 1.0;
        hi = density.rbegin()->first;
    }

    // Growth-model densities behave like (k + b)^{-gamma} with a model
    // offset b; regressing against the best shifted abscissa removes the
    // pre-asymptotic curvature exactly as in the rank-frequency fit.
    const double log_lo = std::log10(lo);
    const double log_hi = std::log10(hi);
    const unsigned nbins = std::max(6u, static_cast<unsigned>((log_hi - log_lo) * 8));
    struct Bin {
        double mass = 0;
        double first_k = 0, last_k = 0;
    };
    std::vector<Bin> bins(nbins);
    double total_mass = 0;
    for (const auto& [k, w] : density) {
        if (k < lo || k > hi) continue;
        auto bin = static_cast<std::size_t>((std::log10(k) - log_lo) / (log_hi - log_lo) * nbins);
        if (bin >= nbins) bin = nbins - 1;
        if (bins[bin].mass == 0) bins[bin].first_k = k;
        bins[bin].last_k = k;
        bins[bin].mass += w;
        total_mass += w;
    }
    // Width and center snap to the integer lattice (each degree k owns
    // [k - 1/2, k + 1/2]); the midpoint rule keeps the discrete-to-density
    // conversion second-order accurate even at small k.
    std::vector<double> ys, centers;
    for (const auto& b : bins) {
        if (b.mass <= 0) continue;
        double left = b.first_k - 0.5;
        double right = b.last_k + 0.5;
        ys.push_back(std::log10(b.mass / total_mass / (right - left)));
        centers.push_back(std::sqrt(left * right));
    }
    if (ys.size() < 4) throw std::runtime_error("degree_powerlaw_fit: too few occupied bins");

    double best_slope = 0, best_sse = 1e308;
    std::vector<double> xs(centers.size());
    for (double shift = 0.0; shift <= 5.0; shift += 0.05) {
        for (std::size_t i = 0; i < centers.size(); ++i) xs[i] = std::log10(centers[i] + shift);
        auto fit = fit_line(xs, ys);
        double sse = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
            sse += e * e;
        }
        if (sse < best_sse - 1e-15) {
            best_sse = sse;
            best_slope = fit.slope;
        }
    }
    return best_slope;
}

Corpus monkey_corpus(unsigned n_letters, std::uint64_t keystrokes, RandomStream& stream) {
    if (n_letters < 2 || n_letters > 52 || keystrokes < 1000)
        throw std::invalid_argument("monkey_corpus: requires 2 <= n <= 52, length >= 1000");
    Corpus corpus;
    corpus.alphabet = n_letters;
    auto letter = [](unsigned sym) {
        return sym < 26 ? static_cast<char>('a' + sym) : static_cast<char>('A' + sym - 26);
    };
    std::string current;
    bool seen_space = false;
    for (std::uint64_t k = 0; k < keystrokes; ++k) {
        auto sym = static_cast<unsigned>(stream.next_below(n_letters + 1));
        if (sym == n_letters) {
            // A word needs a delimiter on both sides, so the fragment before
            // the first space never counts.
            if (seen_space && !current.empty()) corpus.tokens.push_back(current);
            current.clear();
            seen_space = true;
        } else if (seen_space) {
            current.push_back(letter(sym));
        }
    }
    // The trailing fragment has no closing delimiter and drops too.
    return corpus;
}

namespace {

struct RankPoint {
    double first_rank, last_rank;
    double mean_log_f;
};

ZipfFit shifted_rank_fit(const std::vector<RankPoint>& points) {
    ZipfFit best{0, 0, 0};
    double best_sse = 1e308;
    std::vector<double> xs(points.size()), ys(points.size());
    for (std::size_t g = 0; g < points.size(); ++g) ys[g] = points[g].mean_log_f;
    for (double shift = 0.0; shift <= 5.0; shift += 0.01) {
        for (std::size_t g = 0; g < points.size(); ++g) {
            xs[g] = 0.5 * (std::log10(points[g].first_rank + shift) +
                           std::log10(points[g].last_rank + shift));
        }
        auto fit = fit_line(xs, ys);
        double sse = 0;
        for (std::size_t g = 0; g < xs.size(); ++g) {
            double e = ys[g] - (fit.intercept + fit.slope * xs[g]);
            sse += e * e;
        }
        if (sse < best_sse - 1e-15) {
            best_sse = sse;
            best = {-fit.slope, shift, std::pow(10.0, fit.intercept)};
        }
    }
    return best;
}

} // namespace

ZipfFit zipf_fit_counts(const std::vector<std::uint64_t>& sorted_counts) {
    std::vector<std::uint64_t> usable;
    for (std::uint64_t c : sorted_counts) {
        if (c < 5) break;
        usable.push_back(c);
    }
    if (usable.size() < 2) throw std::invalid_argument("zipf_fit: too few usable ranks");

    // Keystroke-style corpora produce a frequency staircase: all words of
    // one length are equally likely, so the sorted counts form plateaus
    // separated by cliffs. A cliff is an adjacent drop by more than 2x,
    // which plateau noise cannot produce. Each cliff-free run collapses to
    // one fitting point at its geometric-mean rank; runs lost in the
    // sorting-noise floor (mean below 10) are dropped.
    std::vector<RankPoint> runs;
    std::size_t start = 0;
    double acc = std::log10(static_cast<double>(usable[0]));
    for (std::size_t r = 1; r <= usable.size(); ++r) {
        bool cliff = r < usable.size() && 2 * usable[r] < usable[r - 1];
        if (r == usable.size() || cliff) {
            RankPoint p{static_cast<double>(start + 1), static_cast<double>(r),
                        acc / static_cast<double>(r - start)};
            if (std::pow(10.0, p.mean_log_f) >= 10.0) runs.push_back(p);
            if (r < usable.size()) {
                start = r;
                acc = std::log10(static_cast<double>(usable[r]));
            }
        } else {
            acc += std::log10(static_cast<double>(usable[r]));
        }
    }

    if (runs.size() >= 2) return shifted_rank_fit(runs);

    // No staircase: smooth rank-frequency data. Log-binned ranks give each
    // decade equal weight in the least squares.
    if (usable.size() < 10) throw std::invalid_argument("zipf_fit: too few usable ranks");
    std::vector<RankPoint> bins;
    std::size_t r = 0;
    const double bins_per_decade = 8.0;
    while (r < usable.size()) {
        auto edge = static_cast<std::size_t>(std::pow(
            10.0,
            (std::floor(std::log10(static_cast<double>(r + 1)) * bins_per_decade) + 1.0) /
                bins_per_decade));
        std::size_t first = r;
        double sum = 0;
        while (r < usable.size() && r + 1 <= edge) {
            sum += std::log10(static_cast<double>(usable[r]));
            ++r;
        }
        if (r > first)
            bins.push_back({static_cast<double>(first + 1), static_cast<double>(r),
                            sum / static_cast<double>(r - first)});
    }
    return shifted_rank_fit(bins);
}

ZipfFit zipf_fit(const Corpus& corpus) {
    std::unordered_map<std::string, std::uint64_t> counts;
    for (const auto& w : corpus.tokens) ++counts[w];
    std::vector<std::uint64_t> freq;
    freq.reserve(counts.size());
    for (const auto& [w, c] : counts) freq.push_back(c);
    std::sort(freq.begin(), freq.end(), std::greater<>());
    return zipf_fit_counts(freq);
}

HeapsResult heaps_check(const Corpus& corpus, const std::vector<std::uint64_t>& prefix_lengths) {
    HeapsResult res{};
    std::unordered_map<std::string, bool> seen;
    std::uint64_t pos = 0;
    std::uint64_t distinct = 0;
    std::vector<std::uint64_t> sorted_prefixes = prefix_lengths;
    std::sort(sorted_prefixes.begin(), sorted_prefixes.end());
    for (std::uint64_t target : sorted_prefixes) {
        while (pos < std::min<std::uint64_t>(target, corpus.tokens.size())) {
            auto [it, inserted] = seen.emplace(corpus.tokens[pos], true);
            distinct += inserted ? 1u : 0u;
            ++pos;
        }
        res.distinct.push_back(distinct);
    }
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < sorted_prefixes.size(); ++i) {
        if (sorted_prefixes[i] == 0 || res.distinct[i] == 0) continue;
        xs.push_back(std::log10(static_cast<double>(sorted_prefixes[i])));
        ys.push_back(std::log10(static_cast<double>(res.distinct[i])));
    }
    if (xs.size() >= 3) res.slope = fit_line(xs, ys).slope;
    return res;
}

} // namespace stochlab
