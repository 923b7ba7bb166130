#include "stochlab/report.hpp"

#include "stochlab/alias.hpp"
#include "stochlab/distributions.hpp"
#include "stochlab/exact.hpp"
#include "stochlab/knuth_yao.hpp"
#include "stochlab/limit_checks.hpp"
#include "stochlab/mcmc.hpp"
#include "stochlab/models.hpp"
#include "stochlab/penney.hpp"
#include "stochlab/rgraph.hpp"
#include "stochlab/sde.hpp"
#include "stochlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace stochlab {

namespace {

double param(const ExperimentPlan& plan, const std::string& key) {
    auto it = plan.params.find(key);
    if (it == plan.params.end()) throw std::invalid_argument("missing parameter: " + key);
    return it->second;
}

unsigned uparam(const ExperimentPlan& plan, const std::string& key) {
    double v = param(plan, key);
    if (v < 0) throw std::invalid_argument("parameter must be nonnegative: " + key);
    return static_cast<unsigned>(v);
}

std::uint64_t u64param(const ExperimentPlan& plan, const std::string& key) {
    double v = param(plan, key);
    if (v < 0) throw std::invalid_argument("parameter must be nonnegative: " + key);
    return static_cast<std::uint64_t>(v);
}

RandomStream root_stream(const ExperimentPlan& plan) { return RandomStream{plan.seed}; }

void add(ExperimentDef def) { ExperimentRegistry::instance().add(std::move(def)); }

// ---- sample ----------------------------------------------------------

void register_sample() {
    add({"sample.uniform-mean", "uniform draws match the 1/2 mean", {{"draws", 100000}}, 1,
         [](const ExperimentPlan& plan) {
             RandomStream s = root_stream(plan);
             auto draws = u64param(plan, "draws");
             double sum = 0;
             for (std::uint64_t i = 0; i < draws; ++i) sum += s.next_uniform();
             double mean = sum / static_cast<double>(draws);
             double tol = 4.0 / std::sqrt(12.0 * static_cast<double>(draws));
             Report r;
             r.estimate = mean;
             r.stderr_ = 1.0 / std::sqrt(12.0 * static_cast<double>(draws));
             r.replicas_used = draws;
             r.checks.push_back(make_check("uniform_mean", 0.5, mean, tol));
             return r;
         }});

    add({"sample.memoryless", "exponential lack of memory, P(X>=2 | X>=1) = e^-1",
         {{"lambda", 1.0}, {"draws", 100000}}, 1, [](const ExperimentPlan& plan) {
             RandomStream s = root_stream(plan);
             auto draws = u64param(plan, "draws");
             double lambda = param(plan, "lambda");
             std::uint64_t ge1 = 0, ge2 = 0;
             for (std::uint64_t i = 0; i < draws; ++i) {
                 double x = sample_exponential(s, lambda);
                 ge1 += x >= 1 ? 1 : 0;
                 ge2 += x >= 2 ? 1 : 0;
             }
             double cond = static_cast<double>(ge2) / static_cast<double>(ge1);
             Report r;
             r.estimate = cond;
             r.replicas_used = draws;
             r.checks.push_back(make_check("memoryless", std::exp(-lambda), cond, 0.01));
             return r;
         }});

    add({"sample.poisson-race", "poisson from the exponential race, P(Z=0) = e^-lambda",
         {{"lambda", 1.0}, {"draws", 100000}}, 1, [](const ExperimentPlan& plan) {
             RandomStream s = root_stream(plan);
             auto draws = u64param(plan, "draws");
             double lambda = param(plan, "lambda");
             std::uint64_t zeros = 0;
             for (std::uint64_t i = 0; i < draws; ++i) zeros += sample_poisson(s, lambda) == 0;
             double freq = static_cast<double>(zeros) / static_cast<double>(draws);
             Report r;
             r.estimate = freq;
             r.stderr_ = std::sqrt(freq * (1 - freq) / static_cast<double>(draws));
             r.replicas_used = draws;
             r.checks.push_back(make_check("race_zero_mass", std::exp(-lambda), freq, 0.01));
             return r;
         }});

    add({"sample.box-muller", "pair independence via sample correlation", {{"draws", 100000}}, 1,
         [](const ExperimentPlan& plan) {
             RandomStream s = root_stream(plan);
             auto draws = u64param(plan, "draws");
             double sx = 0, sy = 0, sxy = 0;
             for (std::uint64_t i = 0; i < draws; ++i) {
                 auto [x, y] = box_muller(s.next_uniform_pos(), s.next_uniform());
                 sx += x;
                 sy += y;
                 sxy += x * y;
             }
             double n = static_cast<double>(draws);
             double corr = sxy / n - (sx / n) * (sy / n);
             Report r;
             r.estimate = corr;
             r.replicas_used = draws;
             r.checks.push_back(make_check("pair_correlation", 0.0, corr, 4.0 / std::sqrt(n)));
             return r;
         }});

    add({"sample.rejection", "acceptance rate matches the area ratio", {{"draws", 100000}}, 1,
         [](const ExperimentPlan& plan) {
             RandomStream s = root_stream(plan);
             auto draws = u64param(plan, "draws");
             double trials = 0;
             for (std::uint64_t i = 0; i < draws; ++i)
                 trials += static_cast<double>(
                     rejection_sample(s, [](double x) { return 2 * x; }, 2.0, 0.0, 1.0).trials);
             double mean = trials / static_cast<double>(draws);
             Report r;
             r.estimate = mean;
             r.replicas_used = draws;
             r.checks.push_back(make_check("mean_trials", 2.0, mean, 0.05));
             return r;
         }});

    add({"sample.alias", "alias frequencies for weights (1/2, 1/3, 1/6)", {{"draws", 100000}}, 1,
         [](const ExperimentPlan& plan) {
             RandomStream s = root_stream(plan);
             auto draws = u64param(plan, "draws");
             std::vector<BigRational> w{BigRational(1, 2), BigRational(1, 3), BigRational(1, 6)};
             AliasTable table(w);
             std::vector<std::uint64_t> counts(3, 0);
             for (std::uint64_t i = 0; i < draws; ++i) ++counts[table.sample(s)];
             Report r;
             r.replicas_used = draws;
             auto recon = table.reconstruct();
             bool exact = recon[0] == w[0] && recon[1] == w[1] && recon[2] == w[2];
             r.checks.push_back(make_check("rational_reconstruction", 1.0, exact ? 1.0 : 0.0, 0.0));
             const double probs[3] = {0.5, 1.0 / 3.0, 1.0 / 6.0};
             for (int k = 0; k < 3; ++k) {
                 double n = static_cast<double>(draws);
                 double freq = static_cast<double>(counts[k]) / n;
                 double sigma = std::sqrt(probs[k] * (1 - probs[k]) / n);
                 r.checks.push_back(make_check("frequency_" + std::to_string(k), probs[k], freq,
                                               4 * sigma));
             }
             r.estimate = static_cast<double>(counts[0]) / static_cast<double>(draws);
             return r;
         }});

    add({"sample.knuth-yao", "mean flips for three equal outcomes", {{"draws", 100000}}, 1,
         [](const ExperimentPlan& plan) {
             RandomStream s = root_stream(plan);
             auto draws = u64param(plan, "draws");
             KnuthYaoSampler ky({1.0 / 3, 1.0 / 3, 1.0 / 3});
             double flips = 0;
             for (std::uint64_t i = 0; i < draws; ++i) flips += ky.sample(s).flips;
             double mean = flips / static_cast<double>(draws);
             Report r;
             r.estimate = mean;
             r.replicas_used = draws;
             r.checks.push_back(make_check("mean_flips", 8.0 / 3.0, mean, 0.05));
             r.checks.push_back(make_upper_bound_check("flip_budget",
                                                       std::log2(2.0) + 2.0, mean));
             return r;
         }});

    add({"sample.sphere", "unit norm and coordinate symmetry on the sphere",
         {{"dim", 3}, {"draws", 100000}}, 1, [](const ExperimentPlan& plan) {
             RandomStream s = root_stream(plan);
             auto draws = u64param(plan, "draws");
             auto dim = uparam(plan, "dim");
             double worst_norm = 0, mean0 = 0;
             for (std::uint64_t i = 0; i < draws; ++i) {
                 auto v = sphere_uniform(s, dim);
                 double norm2 = 0;
                 for (double x : v) norm2 += x * x;
                 worst_norm = std::max(worst_norm, std::abs(std::sqrt(norm2) - 1.0));
                 mean0 += v[0];
             }
             mean0 /= static_cast<double>(draws);
             Report r;
             r.estimate = mean0;
             r.replicas_used = draws;
             r.checks.push_back(make_upper_bound_check("unit_norm", 1e-12, worst_norm));
             double tol = 4.0 / std::sqrt(static_cast<double>(dim) * static_cast<double>(draws));
             r.checks.push_back(make_check("coordinate_mean", 0.0, mean0, tol));
             return r;
         }});

    add({"sample.sorted-uniforms", "order-statistic mean k/(n+1)",
         {{"n", 9}, {"k", 5}, {"draws", 100000}}, 1, [](const ExperimentPlan& plan) {
             RandomStream s = root_stream(plan);
             auto draws = u64param(plan, "draws");
             auto n = uparam(plan, "n");
             auto k = uparam(plan, "k");
             if (k == 0 || k > n) throw std::invalid_argument("sorted-uniforms: requires 1 <= k <= n");
             double mean = 0;
             bool monotone = true;
             for (std::uint64_t i = 0; i < draws; ++i) {
                 auto v = sorted_uniforms(s, n);
                 for (std::size_t q = 1; q < v.size(); ++q) monotone &= v[q] >= v[q - 1];
                 mean += v[k - 1];
             }
             mean /= static_cast<double>(draws);
             Report r;
             r.estimate = mean;
             r.replicas_used = draws;
             r.checks.push_back(make_check("nondecreasing", 1.0, monotone ? 1.0 : 0.0, 0.0));
             r.checks.push_back(make_check("order_statistic_mean",
                                           static_cast<double>(k) / (n + 1.0), mean, 0.005));
             return r;
         }});

    add({"sample.dirichlet", "simplex membership and symmetric means", {{"draws", 20000}}, 1,
         [](const ExperimentPlan& plan) {
             RandomStream s = root_stream(plan);
             auto draws = u64param(plan, "draws");
             Dirichlet d{{1.0, 1.0, 1.0}};
             double worst = 0, mean0 = 0;
             for (std::uint64_t i = 0; i < draws; ++i) {
                 auto v = sample_dirichlet(d, s);
                 double sum = 0;
                 for (double x : v) sum += x;
                 worst = std::max(worst, std::abs(sum - 1.0));
                 mean0 += v[0];
             }
             mean0 /= static_cast<double>(draws);
             Report r;
             r.estimate = mean0;
             r.replicas_used = draws;
             r.checks.push_back(make_upper_bound_check("simplex_sum", 1e-12, worst));
             double tol = 4.0 * std::sqrt(1.0 / 18.0) / std::sqrt(static_cast<double>(draws));
             r.checks.push_back(make_check("component_mean", 1.0 / 3.0, mean0, tol));
             return r;
         }});
}

// ---- exact ------------------------------------------------------------

void register_exact() {
    add({"exact.penney", "first-occurrence race HTH vs HHT, exact and simulated",
         {{"games", 100000}}, 1, [](const ExperimentPlan& plan) {
             auto games = u64param(plan, "games");
             auto exact = penney_win_probability(make_pattern("HTH"), make_pattern("HHT"));
             RandomStream s = root_stream(plan);
             std::uint64_t wins = 0;
             for (std::uint64_t g = 0; g < games; ++g) {
                 unsigned window = 0, filled = 0;
                 for (;;) {
                     window = ((window << 1) | (s.next_coin() ? 1u : 0u)) & 7u;
                     filled = std::min(filled + 1, 3u);
                     if (filled == 3) {
                         if (window == 0b101u) { ++wins; break; } // HTH
                         if (window == 0b110u) break;             // HHT
                     }
                 }
             }
             double freq = static_cast<double>(wins) / static_cast<double>(games);
             Report r;
             r.estimate = freq;
             r.stderr_ = std::sqrt(freq * (1 - freq) / static_cast<double>(games));
             r.replicas_used = games;
             r.checks.push_back(make_check("exact_value", 1.0 / 3.0, to_double(exact), 1e-15));
             r.checks.push_back(make_check("simulation_matches_exact", to_double(exact), freq, 0.01));
             return r;
         }});

    add({"exact.prisoners", "hundred-prisoner cycle strategy", {{"n", 100}, {"trials", 100000}}, 1,
         [](const ExperimentPlan& plan) {
             auto n = uparam(plan, "n");
             auto trials = u64param(plan, "trials");
             double exact = to_double(prisoners_success(n));
             RandomStream s = root_stream(plan);
             std::vector<std::uint32_t> perm(n);
             std::uint64_t wins = 0;
             for (std::uint64_t t = 0; t < trials; ++t) {
                 for (unsigned i = 0; i < n; ++i) perm[i] = i;
                 for (unsigned i = n; i-- > 1;) {
                     auto j = static_cast<unsigned>(s.next_below(i + 1));
                     std::swap(perm[i], perm[j]);
                 }
                 // Longest cycle must not exceed n/2.
                 std::vector<bool> seen(n, false);
                 bool ok = true;
                 for (unsigned i = 0; i < n && ok; ++i) {
                     if (seen[i]) continue;
                     unsigned len = 0;
                     for (unsigned j = i; !seen[j]; j = perm[j]) {
                         seen[j] = true;
                         ++len;
                     }
                     if (len > n / 2) ok = false;
                 }
                 wins += ok ? 1 : 0;
             }
             double freq = static_cast<double>(wins) / static_cast<double>(trials);
             Report r;
             r.estimate = freq;
             r.stderr_ = std::sqrt(freq * (1 - freq) / static_cast<double>(trials));
             r.replicas_used = trials;
             r.checks.push_back(make_check("exact_value", 0.31182782068980479, exact, 5e-10));
             r.checks.push_back(make_check("simulation_matches_exact", exact, freq, 0.01));
             return r;
         }});

    add({"exact.matchbox", "leftover matches when a box first runs dry",
         {{"n", 20}, {"k", 5}, {"trials", 100000}}, 1, [](const ExperimentPlan& plan) {
             auto n = uparam(plan, "n");
             auto k = uparam(plan, "k");
             auto trials = u64param(plan, "trials");
             double exact = to_double(banach_matchbox(n, k));
             RandomStream s = root_stream(plan);
             std::uint64_t hits = 0;
             for (std::uint64_t t = 0; t < trials; ++t) {
                 int left = static_cast<int>(n), right = static_cast<int>(n);
                 for (;;) {
                     if (s.next_coin()) {
                         if (left == 0) { hits += static_cast<unsigned>(right) == k; break; }
                         --left;
                     } else {
                         if (right == 0) { hits += static_cast<unsigned>(left) == k; break; }
                         --right;
                     }
                 }
             }
             double freq = static_cast<double>(hits) / static_cast<double>(trials);
             BigRational total = 0;
             for (unsigned j = 0; j <= n; ++j) total += banach_matchbox(n, j);
             Report r;
             r.estimate = freq;
             r.stderr_ = std::sqrt(freq * (1 - freq) / static_cast<double>(trials));
             r.replicas_used = trials;
             r.checks.push_back(make_check("distribution_sums_to_one", 1.0, to_double(total), 0.0));
             r.checks.push_back(make_check("simulation_matches_exact", exact, freq,
                                           4 * std::sqrt(exact * (1 - exact) / trials) + 1e-9));
             return r;
         }});

    add({"exact.coupon", "collector moments, exact vs simulated",
         {{"n", 50}, {"trials", 100000}}, 1, [](const ExperimentPlan& plan) {
             auto n = uparam(plan, "n");
             auto trials = u64param(plan, "trials");
             auto moments = coupon_moments(n);
             double full_exact = to_double(moments.mean_full_set);
             double repeat_exact = to_double(moments.mean_first_repeat);
             RandomStream s = root_stream(plan);
             std::vector<std::uint32_t> stamp(n, 0);
             std::uint32_t epoch = 0;
             double full_sum = 0, repeat_sum = 0;
             for (std::uint64_t t = 0; t < trials; ++t) {
                 ++epoch;
                 unsigned have = 0;
                 std::uint64_t draws = 0;
                 bool repeated = false;
                 while (have < n) {
                     auto c = static_cast<std::size_t>(s.next_below(n));
                     ++draws;
                     if (stamp[c] == epoch) {
                         if (!repeated) {
                             repeated = true;
                             repeat_sum += static_cast<double>(draws);
                         }
                     } else {
                         stamp[c] = epoch;
                         ++have;
                     }
                 }
                 full_sum += static_cast<double>(draws);
             }
             double full_mean = full_sum / static_cast<double>(trials);
             double repeat_mean = repeat_sum / static_cast<double>(trials);
             Report r;
             r.estimate = full_mean;
             r.replicas_used = trials;
             r.checks.push_back(
                 make_check("full_set_mean", full_exact, full_mean, 0.02 * full_exact));
             r.checks.push_back(
                 make_check("first_repeat_mean", repeat_exact, repeat_mean, 0.02 * repeat_exact));
             return r;
         }});

    add({"exact.ballot", "strict lead probability (a-b)/(a+b)",
         {{"a", 6}, {"b", 3}, {"trials", 200000}}, 1, [](const ExperimentPlan& plan) {
             auto a = uparam(plan, "a");
             auto b = uparam(plan, "b");
             auto trials = u64param(plan, "trials");
             double exact = to_double(ballot_probability(a, b));
             RandomStream s = root_stream(plan);
             std::vector<int> votes(a + b);
             std::uint64_t lead = 0;
             for (std::uint64_t t = 0; t < trials; ++t) {
                 std::fill(votes.begin(), votes.begin() + a, 1);
                 std::fill(votes.begin() + a, votes.end(), -1);
                 for (std::size_t i = votes.size(); i-- > 1;) {
                     auto j = static_cast<std::size_t>(s.next_below(i + 1));
                     std::swap(votes[i], votes[j]);
                 }
                 int sum = 0;
                 bool ok = true;
                 for (int v : votes) {
                     sum += v;
                     if (sum <= 0) { ok = false; break; }
                 }
                 lead += ok ? 1 : 0;
             }
             double freq = static_cast<double>(lead) / static_cast<double>(trials);
             Report r;
             r.estimate = freq;
             r.stderr_ = std::sqrt(freq * (1 - freq) / static_cast<double>(trials));
             r.replicas_used = trials;
             r.checks.push_back(make_check("simulation_matches_exact", exact, freq,
                                           4 * r.stderr_ + 1e-9));
             return r;
         }});

    add({"exact.branching", "labyrinth survival (9 - sqrt 27)/4",
         {{"trials", 100000}, {"generations", 30}}, 1, [](const ExperimentPlan& plan) {
             auto trials = u64param(plan, "trials");
             auto generations = uparam(plan, "generations");
             std::vector<double> pmf{1.0 / 27, 6.0 / 27, 12.0 / 27, 8.0 / 27};
             double q = branching_extinction(pmf);
             double survival = 1 - q;
             RandomStream s = root_stream(plan);
             std::uint64_t alive = 0;
             for (std::uint64_t t = 0; t < trials; ++t) {
                 RandomStream rs = s.split(t);
                 auto path = branching_sim(pmf, generations, rs, 200);
                 alive += path.back() > 0 ? 1 : 0;
             }
             double freq = static_cast<double>(alive) / static_cast<double>(trials);
             Report r;
             r.estimate = freq;
             r.stderr_ = std::sqrt(freq * (1 - freq) / static_cast<double>(trials));
             r.replicas_used = trials;
             r.checks.push_back(make_check("fixed_point_value",
                                           (9.0 - std::sqrt(27.0)) / 4.0, survival, 1e-10));
             r.checks.push_back(make_check("simulation_matches_exact", survival, freq, 0.005));
             return r;
         }});

    add({"exact.lucky-tickets", "equal half-sum ticket count", {{"k", 3}, {"base", 10}}, 1,
         [](const ExperimentPlan& plan) {
             auto count = lucky_tickets(uparam(plan, "k"), uparam(plan, "base"));
             Report r;
             r.estimate = count.template convert_to<double>();
             r.replicas_used = 1;
             if (uparam(plan, "k") == 3 && uparam(plan, "base") == 10)
                 r.checks.push_back(make_check("reference_count", 55252.0, r.estimate, 0.0));
             return r;
         }});

    add({"exact.necklaces", "rotation-orbit counts", {{"n", 7}, {"k", 2}, {"m", 3}}, 1,
         [](const ExperimentPlan& plan) {
             auto n = uparam(plan, "n");
             auto k = uparam(plan, "k");
             auto m = uparam(plan, "m");
             Report r;
             r.estimate = polya_necklaces(n, k, m).template convert_to<double>();
             r.replicas_used = 1;
             BigInt total = 0;
             for (unsigned j = 0; j <= n; ++j) total += polya_necklaces(n, k, j);
             r.checks.push_back(make_check("per_color_counts_sum_to_total",
                                           polya_necklaces(n, k).template convert_to<double>(),
                                           total.template convert_to<double>(), 0.0));
             return r;
         }});

    add({"exact.derangements", "fixed-point-free permutations", {{"n", 10}, {"trials", 200000}}, 1,
         [](const ExperimentPlan& plan) {
             auto n = uparam(plan, "n");
             auto trials = u64param(plan, "trials");
             double exact = to_double(BigRational(derangements(n), factorial(n)));
             RandomStream s = root_stream(plan);
             std::vector<std::uint32_t> perm(n);
             std::uint64_t none = 0;
             for (std::uint64_t t = 0; t < trials; ++t) {
                 for (unsigned i = 0; i < n; ++i) perm[i] = i;
                 for (unsigned i = n; i-- > 1;) {
                     auto j = static_cast<unsigned>(s.next_below(i + 1));
                     std::swap(perm[i], perm[j]);
                 }
                 bool fixed_free = true;
                 for (unsigned i = 0; i < n; ++i) fixed_free &= perm[i] != i;
                 none += fixed_free ? 1 : 0;
             }
             double freq = static_cast<double>(none) / static_cast<double>(trials);
             Report r;
             r.estimate = freq;
             r.stderr_ = std::sqrt(freq * (1 - freq) / static_cast<double>(trials));
             r.replicas_used = trials;
             r.checks.push_back(make_check("simulation_matches_exact", exact, freq,
                                           4 * r.stderr_ + 1e-9));
             return r;
         }});
}

// ---- limits -----------------------------------------------------------

void register_limits() {
    add({"limits.berry-esseen", "exact binomial vs normal approximation and the C0 bound",
         {{"p", 18.0 / 38.0}, {"n", 361}}, 1, [](const ExperimentPlan& plan) {
             return berry_esseen_check(param(plan, "p"), uparam(plan, "n"));
         }});

    add({"limits.poisson-approx", "total variation against the 2 sum p^2 bound",
         {{"count", 100}, {"p", 0.01}}, 1, [](const ExperimentPlan& plan) {
             std::vector<double> ps(uparam(plan, "count"), param(plan, "p"));
             return poisson_approx_check(ps);
         }});

    add({"limits.extreme-value", "normalized maxima vs the max-stable limits",
         {{"family", 2}, {"param", 1.0}, {"n", 1000}}, 10000, [](const ExperimentPlan& plan) {
             RandomStream s = root_stream(plan);
             auto fam = static_cast<MaxFamily>(uparam(plan, "family"));
             return extreme_value_check(fam, param(plan, "param"), uparam(plan, "n"),
                                        static_cast<unsigned>(plan.replicas), s);
         }});

    add({"limits.arcsine", "occupation-fraction law of the +-1 walk",
         {{"n", 10000}, {"x", 0.2}}, 10000, [](const ExperimentPlan& plan) {
             RandomStream s = root_stream(plan);
             return arcsine_check(uparam(plan, "n"), param(plan, "x"),
                                  static_cast<unsigned>(plan.replicas), s);
         }});

    add({"limits.petersburg", "S_n/(n log2 n) medians and trends", {{"log2n", 20}}, 200,
         [](const ExperimentPlan& plan) {
             RandomStream s = root_stream(plan);
             return petersburg_check(std::uint64_t{1} << uparam(plan, "log2n"),
                                     static_cast<unsigned>(plan.replicas), s);
         }});

    add({"limits.wigner", "semicircle trace moments", {{"dim", 400}, {"r", 2}}, 20,
         [](const ExperimentPlan& plan) {
             RandomStream s = root_stream(plan);
             return wigner_check(uparam(plan, "dim"), uparam(plan, "r"),
                                 static_cast<unsigned>(plan.replicas), s);
         }});

    add({"limits.holtsmark", "inverse-square force tail exponent",
         {{"density", 1.0}, {"stars", 400}}, 40000, [](const ExperimentPlan& plan) {
             RandomStream s = root_stream(plan);
             return holtsmark_check(param(plan, "density"), uparam(plan, "stars"),
                                    static_cast<unsigned>(plan.replicas), s);
         }});

    add({"limits.return-time", "first-return tail of the symmetric walk",
         {{"horizon", 1000000}}, 200000, [](const ExperimentPlan& plan) {
             RandomStream s = root_stream(plan);
             return return_time_check(u64param(plan, "horizon"),
                                      static_cast<unsigned>(plan.replicas), s);
         }});

    add({"limits.coupon-rayleigh", "first-repeat Rayleigh tail", {{"n", 10000}, {"t", 1.0}},
         100000, [](const ExperimentPlan& plan) {
             RandomStream s = root_stream(plan);
             return coupon_rayleigh_check(uparam(plan, "n"), param(plan, "t"),
                                          static_cast<unsigned>(plan.replicas), s);
         }});

    add({"limits.fragmentation", "multiplicative splits vs the log-normal limit",
         {{"lambda", 10.0}, {"a", -0.1}, {"sigma", 0.1}, {"t", 10.0}}, 10000,
         [](const ExperimentPlan& plan) {
             RandomStream s = root_stream(plan);
             return lognormal_fragmentation_check(param(plan, "lambda"), param(plan, "a"),
                                                  param(plan, "sigma"), param(plan, "t"),
                                                  static_cast<unsigned>(plan.replicas), s);
         }});
}

// ---- macro ------------------------------------------------------------

void register_macro() {
    add({"macro.ehrenfest", "flea-hopping run with exact conservation", {{"n", 100}, {"t", 10.0}},
         1, [](const ExperimentPlan& plan) {
             auto n = u64param(plan, "n");
             auto net = ehrenfest_network(n);
             RandomStream s = root_stream(plan);
             PopulationState init;
             init.counts = {static_cast<std::int64_t>(n), 0};
             auto traj = ssa_run(net, init, param(plan, "t"), s);
             bool conserved = true;
             bool increasing = true;
             for (std::size_t k = 0; k < traj.times.size(); ++k) {
                 conserved &= traj.states[k][0] + traj.states[k][1] == static_cast<double>(n);
                 if (k > 0) increasing &= traj.times[k] > traj.times[k - 1];
             }
             Report r;
             r.estimate = traj.states.back()[0] / static_cast<double>(n);
             r.replicas_used = traj.times.size();
             r.checks.push_back(make_check("flea_count_conserved", 1.0, conserved ? 1.0 : 0.0, 0.0));
             r.checks.push_back(
                 make_check("event_times_increasing", 1.0, increasing ? 1.0 : 0.0, 0.0));
             return r;
         }});

    add({"macro.ehrenfest-stationary", "embedded chain vs Binomial(N, 1/2)",
         {{"n", 20}, {"steps", 1000000}}, 1, [](const ExperimentPlan& plan) {
             RandomStream s = root_stream(plan);
             return ehrenfest_stationary_check(u64param(plan, "n"), u64param(plan, "steps"), s);
         }});

    add({"macro.ehrenfest-concentration", "relative flea imbalance at t = 10N",
         {{"n", 100}}, 400, [](const ExperimentPlan& plan) {
             RandomStream s = root_stream(plan);
             return ehrenfest_concentration_check(u64param(plan, "n"),
                                                  static_cast<unsigned>(plan.replicas), s);
         }});

    add({"macro.ehrenfest-return", "mean embedded return time 2^N",
         {{"n", 10}, {"returns", 10000}}, 1, [](const ExperimentPlan& plan) {
             RandomStream s = root_stream(plan);
             return ehrenfest_return_time_check(u64param(plan, "n"), uparam(plan, "returns"), s);
         }});

    add({"macro.kurtz", "sup-norm gap to the concentration flow shrinks in N",
         {{"model", 0}, {"t", 5.0}}, 20, [](const ExperimentPlan& plan) {
             RandomStream s = root_stream(plan);
             bool schlogl = uparam(plan, "model") == 1;
             ReactionNetwork net = schlogl ? schlogl_network(100) : ehrenfest_network(100);
             std::vector<double> c0 = schlogl ? std::vector<double>{0.5}
                                              : std::vector<double>{1.0, 0.0};
             double t_end = param(plan, "t");
             auto seeds = static_cast<unsigned>(plan.replicas);
             RandomStream s1 = s.split(1), s2 = s.split(2), s3 = s.split(3);
             double g100 = kurtz_gap(net, 100, t_end, c0, seeds, s1);
             double g1000 = kurtz_gap(net, 1000, t_end, c0, seeds, s2);
             double g10000 = kurtz_gap(net, 10000, t_end, c0, seeds, s3);
             Report r;
             r.estimate = g10000;
             r.replicas_used = seeds;
             r.checks.push_back(make_upper_bound_check("gap_1000_below_100", g100, g1000));
             r.checks.push_back(make_upper_bound_check("gap_10000_below_1000", g1000, g10000));
             r.checks.push_back(make_upper_bound_check("gap_small_at_10000", 0.05, g10000));
             return r;
         }});

    add({"macro.money", "wealth histogram slope -1/coins", {{"n", 10000}, {"coins", 5}}, 1,
         [](const ExperimentPlan& plan) {
             RandomStream s = root_stream(plan);
             return money_exchange_check(u64param(plan, "n"), u64param(plan, "coins"), s);
         }});

    add({"macro.kac-ring", "mean color difference (1-2mu)^t",
         {{"n", 10000}, {"mu", 0.1}, {"t", 20}}, 1000, [](const ExperimentPlan& plan) {
             RandomStream s = root_stream(plan);
             return kac_ring_check(u64param(plan, "n"), param(plan, "mu"), u64param(plan, "t"),
                                   static_cast<unsigned>(plan.replicas), s);
         }});

    add({"macro.majority", "consensus symmetry and absorption growth",
         {{"n", 101}, {"fraction", 0.5}}, 10000, [](const ExperimentPlan& plan) {
             RandomStream s = root_stream(plan);
             auto n = u64param(plan, "n");
             double fraction = param(plan, "fraction");
             auto runs = static_cast<unsigned>(plan.replicas);
             std::uint64_t plus_wins = 0;
             std::vector<double> times(runs);
             for (unsigned rep = 0; rep < runs; ++rep) {
                 RandomStream rs = s.split(rep);
                 auto res = majority_rule(n, fraction, rs);
                 plus_wins += res.consensus > 0 ? 1 : 0;
                 times[rep] = static_cast<double>(res.steps);
             }
             double freq = static_cast<double>(plus_wins) / runs;
             Report r;
             r.estimate = freq;
             r.stderr_ = std::sqrt(freq * (1 - freq) / runs);
             r.replicas_used = runs;
             r.checks.push_back(make_check("consensus_symmetry", 0.5, freq, 4 * r.stderr_));

             // Median absorption time grows with the population.
             auto median_time = [&](std::uint64_t agents, RandomStream rs) {
                 std::vector<double> t(200);
                 for (unsigned rep = 0; rep < 200; ++rep) {
                     RandomStream rr = rs.split(rep);
                     t[rep] = static_cast<double>(majority_rule(agents, fraction, rr).steps);
                 }
                 std::sort(t.begin(), t.end());
                 return t[t.size() / 2];
             };
             double m51 = median_time(51, s.split(1000001));
             double m101 = median_time(101, s.split(1000002));
             double m201 = median_time(201, s.split(1000003));
             r.checks.push_back(make_upper_bound_check("absorption_grows_51_101", m101, m51));
             r.checks.push_back(make_upper_bound_check("absorption_grows_101_201", m201, m101));
             return r;
         }});

    add({"macro.pagerank", "walker occupancy concentrates on the stationary vector",
         {{"walkers", 10000}, {"t", 120.0}, {"nodes", 10}}, 1000, [](const ExperimentPlan& plan) {
             auto nodes = uparam(plan, "nodes");
             auto walkers = u64param(plan, "walkers");
             double t_end = param(plan, "t");
             auto runs = static_cast<unsigned>(plan.replicas);

             // Chain graph with a lazy-biassed row-stochastic matrix.
             std::vector<std::vector<double>> p(nodes, std::vector<double>(nodes, 0.0));
             for (unsigned i = 0; i < nodes; ++i) {
                 if (i > 0) p[i][i - 1] += 0.35;
                 else p[i][i] += 0.35;
                 if (i + 1 < nodes) p[i][i + 1] += 0.45;
                 else p[i][i] += 0.45;
                 p[i][i] += 0.20;
             }
             auto pi = power_iteration(p);

             RandomStream s = root_stream(plan);
             double bound = (2.0 * std::sqrt(2.0) + 4.0 * std::sqrt(std::log(100.0))) /
                            std::sqrt(static_cast<double>(walkers));
             unsigned inside = 0;
             std::vector<double> last_occ;
             for (unsigned rep = 0; rep < runs; ++rep) {
                 RandomStream rs = s.split(rep);
                 auto occ = pagerank_walkers(p, walkers, t_end, rs);
                 double norm2 = 0;
                 for (unsigned j = 0; j < nodes; ++j)
                     norm2 += (occ[j] - pi[j]) * (occ[j] - pi[j]);
                 inside += std::sqrt(norm2) <= bound ? 1 : 0;
                 last_occ = occ;
             }
             double freq = static_cast<double>(inside) / runs;

             Report r;
             r.estimate = freq;
             r.replicas_used = runs;
             Check c{"occupancy_concentration", 0.99, freq, 0.0, freq >= 0.99};
             r.checks.push_back(c);
             // Two-state balance cross-check: stationary of rates (1, 2).
             std::vector<std::vector<double>> two{{0.0, 1.0}, {1.0, 0.0}};
             two[0] = {1.0 - 1.0 / 3.0, 1.0 / 3.0};
             two[1] = {2.0 / 3.0, 1.0 / 3.0};
             auto pi2 = power_iteration(two);
             r.checks.push_back(make_check("two_state_balance", 2.0 / 3.0, pi2[0], 1e-9));
             return r;
         }});

    add({"macro.taxi", "stationary rejection: exact formula, asymptotic, simulation",
         {{"stations", 5}, {"taxis", 10}, {"lambda", 1.0}, {"nu", 1.0}, {"arrivals", 1000000}}, 1,
         [](const ExperimentPlan& plan) {
             RandomStream s = root_stream(plan);
             auto res = taxi_network(uparam(plan, "stations"), uparam(plan, "taxis"),
                                     param(plan, "lambda"), param(plan, "nu"),
                                     u64param(plan, "arrivals"), s);
             Report r;
             r.estimate = res.simulated;
             r.replicas_used = u64param(plan, "arrivals");
             r.checks.push_back(make_check("exact_vs_simulation", res.exact, res.simulated, 0.01));
             return r;
         }});

    add({"macro.taxi-asymptotic", "exact vs saddle-point asymptotic at r = M/N",
         {{"stations", 100}, {"taxis", 100}, {"lambda", 1.0}, {"nu", 1.0}}, 1,
         [](const ExperimentPlan& plan) {
             double exact = taxi_rejection_exact(uparam(plan, "stations"), uparam(plan, "taxis"),
                                                 param(plan, "lambda"), param(plan, "nu"));
             double asym = taxi_rejection_asymptotic(uparam(plan, "stations"),
                                                     uparam(plan, "taxis"), param(plan, "lambda"),
                                                     param(plan, "nu"));
             Report r;
             r.estimate = exact;
             r.replicas_used = 1;
             r.checks.push_back(make_check("exact_vs_asymptotic", exact, asym, 0.02));
             return r;
         }});

    add({"macro.branching", "generation sizes and PGF composition",
         {{"generations", 30}, {"runs", 100000}}, 1, [](const ExperimentPlan& plan) {
             std::vector<double> pmf{1.0 / 27, 6.0 / 27, 12.0 / 27, 8.0 / 27};
             double q = branching_extinction(pmf);
             RandomStream s = root_stream(plan);
             auto runs = u64param(plan, "runs");
             std::uint64_t extinct = 0;
             for (std::uint64_t rep = 0; rep < runs; ++rep) {
                 RandomStream rs = s.split(rep);
                 auto path = branching_sim(pmf, uparam(plan, "generations"), rs, 200);
                 extinct += path.back() == 0 ? 1 : 0;
             }
             double freq = static_cast<double>(extinct) / static_cast<double>(runs);

             // Pi_2(0) from exact polynomial composition vs direct sum.
             PowerSeries g(16);
             g.coeff(0) = BigRational(1, 5);
             g.coeff(1) = BigRational(3, 10);
             g.coeff(2) = BigRational(1, 2);
             auto pi2 = pgf_iterate(g, 2, 16);
             double direct = 0.2 + 0.3 * 0.2 + 0.5 * 0.2 * 0.2;
             Report r;
             r.estimate = freq;
             r.stderr_ = std::sqrt(freq * (1 - freq) / static_cast<double>(runs));
             r.replicas_used = runs;
             r.checks.push_back(make_check("extinction_freq", q, freq, 0.005));
             r.checks.push_back(make_check("pgf_two_generations", direct,
                                           to_double(pi2.coeff(0)), 1e-12));
             return r;
         }});

    add({"macro.chialvo", "refresh-evolution threshold and avalanche tail",
         {{"agents", 1000}, {"steps", 2000000}}, 1, [](const ExperimentPlan& plan) {
             RandomStream s = root_stream(plan);
             auto res = chialvo(uparam(plan, "agents"), u64param(plan, "steps"), s);
             Report r;
             r.estimate = res.threshold_estimate;
             r.replicas_used = u64param(plan, "steps");
             bool in_range = true;
             for (double f : res.final_fitness) in_range &= f >= 0.0 && f <= 1.0;
             r.checks.push_back(make_check("fitness_in_unit_interval", 1.0, in_range ? 1.0 : 0.0, 0.0));
             r.checks.push_back(make_check("threshold", 1.0 / 3.0, res.threshold_estimate, 0.03));
             r.checks.push_back(make_check("avalanche_exponent", 1.5, res.avalanche_exponent, 0.2));
             return r;
         }});

    add({"macro.ssa-two-state", "long-run occupancy solves the balance equations",
         {{"rate1", 1.0}, {"rate2", 2.0}, {"t", 20000.0}}, 1, [](const ExperimentPlan& plan) {
             ReactionNetwork net;
             net.species = {"a", "b"};
             net.reactions = {{{1, 0}, {0, 1}, param(plan, "rate1")},
                              {{0, 1}, {1, 0}, param(plan, "rate2")}};
             net.scale = 1;
             RandomStream s = root_stream(plan);
             PopulationState init;
             init.counts = {1, 0};
             auto traj = ssa_run(net, init, param(plan, "t"), s);
             // Time-weighted occupancy of state a.
             double t_a = 0, t_total = 0;
             for (std::size_t k = 0; k + 1 < traj.times.size(); ++k) {
                 double dt = traj.times[k + 1] - traj.times[k];
                 t_total += dt;
                 t_a += traj.states[k][0] > 0.5 ? dt : 0.0;
             }
             double occ = t_a / t_total;
             double expected = param(plan, "rate2") / (param(plan, "rate1") + param(plan, "rate2"));
             Report r;
             r.estimate = occ;
             r.replicas_used = traj.times.size();
             double sigma = 1.0 / std::sqrt(static_cast<double>(traj.times.size()));
             r.checks.push_back(make_check("occupancy_balance", expected, occ, 4 * sigma));
             return r;
         }});
}

// ---- mcmc -------------------------------------------------------------

void register_mcmc() {
    add({"mcmc.detailed-balance", "finite kernels satisfy pi_i p_ij = pi_j p_ji",
         {{"states", 5}, {"steps", 1000000}}, 1, [](const ExperimentPlan& plan) {
             auto n = uparam(plan, "states");
             std::vector<double> weights(n);
             for (unsigned i = 0; i < n; ++i) weights[i] = static_cast<double>(i + 1);
             std::vector<std::vector<double>> proposal(n, std::vector<double>(n, 1.0 / n));
             double worst = 0;
             for (auto rule : {AcceptanceRule::metropolis, AcceptanceRule::barker}) {
                 auto kernel = mh_kernel(weights, proposal, rule);
                 worst = std::max(worst, detailed_balance_residual(weights, kernel));
             }
             // Long-run occupancy of the metropolis chain.
             auto kernel = mh_kernel(weights, proposal, AcceptanceRule::metropolis);
             RandomStream s = root_stream(plan);
             auto steps = u64param(plan, "steps");
             std::vector<std::uint64_t> visits(n, 0);
             std::size_t state = 0;
             for (std::uint64_t k = 0; k < steps; ++k) {
                 double u = s.next_uniform();
                 double acc = 0;
                 for (std::size_t j = 0; j < n; ++j) {
                     acc += kernel[state][j];
                     if (u < acc) {
                         state = j;
                         break;
                     }
                 }
                 ++visits[state];
             }
             double total_w = 0;
             for (double w : weights) total_w += w;
             Report r;
             r.estimate = worst;
             r.replicas_used = steps;
             r.checks.push_back(make_upper_bound_check("detailed_balance_residual", 1e-12, worst));
             for (unsigned j = 0; j < n; ++j) {
                 double pi_j = weights[j] / total_w;
                 double freq = static_cast<double>(visits[j]) / static_cast<double>(steps);
                 // Correlated samples: allow a generous multiple of the iid sigma.
                 double sigma = std::sqrt(pi_j * (1 - pi_j) / static_cast<double>(steps));
                 r.checks.push_back(
                     make_check("occupancy_" + std::to_string(j), pi_j, freq, 20 * sigma));
             }
             return r;
         }});

    add({"mcmc.ising", "heat-bath chain: mean energy and ground-state hitting",
         {{"n", 10}, {"beta", 0.0}, {"updates", 1000000}}, 1, [](const ExperimentPlan& plan) {
             auto n = uparam(plan, "n");
             double beta = param(plan, "beta");
             auto updates = u64param(plan, "updates");
             RandomStream s = root_stream(plan);

             // Mean energy sampled along the run.
             IsingChain chain = glauber_ising_1d(n, beta, 1000, s);
             double energy_sum = 0;
             std::uint64_t samples = 0;
             for (std::uint64_t k = 0; k < updates / 100; ++k) {
                 RandomStream cs = s.split(k);
                 chain = glauber_ising_1d(n, beta, 100, cs, chain.spins[1]);
                 // Continue from scratch chains to stay unbiased at beta = 0.
                 energy_sum += ising_energy(chain);
                 ++samples;
             }
             double mean_energy = energy_sum / static_cast<double>(samples);

             Report r;
             r.estimate = mean_energy;
             r.replicas_used = samples;
             if (beta == 0) {
                 double expected = (static_cast<double>(n) - 1) / 2;
                 double sigma = std::sqrt(static_cast<double>(n) / 4.0 /
                                          static_cast<double>(samples));
                 r.checks.push_back(make_check("free_energy_beta0", expected, mean_energy,
                                               4 * sigma));
             }

             // Low-temperature hitting of the all-plus state within the
             // n^2 log2(beta e) budget.
             double beta_cold = 5.0;
             unsigned n_cold = 20;
             auto budget = static_cast<std::uint64_t>(
                 10.0 * n_cold * n_cold * std::log2(beta_cold * std::exp(1.0)));
             unsigned hits = 0;
             const unsigned trials = 100;
             for (unsigned trial = 0; trial < trials; ++trial) {
                 RandomStream ts = s.split(90000 + trial);
                 hits += glauber_hitting_time(n_cold, beta_cold, budget, ts) != UINT64_MAX ? 1 : 0;
             }
             double hit_freq = hits / static_cast<double>(trials);
             Check c{"ground_state_hitting", 0.95, hit_freq, 0.0, hit_freq >= 0.95};
             r.checks.push_back(c);
             return r;
         }});

    add({"mcmc.hit-and-run", "uniform sampling of square and ball", {{"steps", 100000}}, 1,
         [](const ExperimentPlan& plan) {
             auto steps = u64param(plan, "steps");
             RandomStream s = root_stream(plan);

             auto square = [](const std::vector<double>& x) {
                 return x[0] >= 0 && x[0] <= 1 && x[1] >= 0 && x[1] <= 1;
             };
             auto sq_samples = hit_and_run(square, {0.3, 0.7}, steps, s);
             double mx = 0, my = 0;
             for (const auto& p : sq_samples) {
                 mx += p[0];
                 my += p[1];
             }
             mx /= static_cast<double>(sq_samples.size());
             my /= static_cast<double>(sq_samples.size());

             auto ball = [](const std::vector<double>& x) {
                 return x[0] * x[0] + x[1] * x[1] + x[2] * x[2] <= 1.0;
             };
             RandomStream s2 = s.split(1);
             auto ball_samples = hit_and_run(ball, {0.1, 0.0, 0.0}, steps, s2);
             std::vector<double> radii_cubed;
             radii_cubed.reserve(ball_samples.size());
             for (const auto& p : ball_samples) {
                 double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
                 radii_cubed.push_back(std::pow(std::sqrt(r2), 3.0));
             }
             double ks = ks_distance(EmpiricalCdf(std::move(radii_cubed)),
                                     [](double x) { return std::clamp(x, 0.0, 1.0); });

             Report r;
             r.estimate = ks;
             r.replicas_used = steps;
             // Correlated chain: 4 effective-sigma band with a conservative
             // autocorrelation allowance.
             double tol = 0.02;
             r.checks.push_back(make_check("square_mean_x", 0.5, mx, tol));
             r.checks.push_back(make_check("square_mean_y", 0.5, my, tol));
             r.checks.push_back(make_upper_bound_check("ball_radial_ks", 0.02, ks));
             return r;
         }});

    add({"mcmc.annealing", "quadratic and double-well minima", {{"steps", 4000}, {"runs", 100}}, 1,
         [](const ExperimentPlan& plan) {
             auto steps = u64param(plan, "steps");
             auto runs = uparam(plan, "runs");
             RandomStream s = root_stream(plan);

             unsigned close_quad = 0;
             for (unsigned rep = 0; rep < runs; ++rep) {
                 RandomStream rs = s.split(rep);
                 auto res = simulated_annealing([](const std::vector<double>& x) { return x[0] * x[0]; },
                                                {-5.0}, {5.0}, 1.0, steps, rs);
                 close_quad += std::abs(res.best_point[0]) <= 0.1 ? 1 : 0;
             }
             double freq_quad = close_quad / static_cast<double>(runs);

             // Double well (x^2-1)^2 + 0.2 x: global minimum near -1.
             auto dw = [](const std::vector<double>& x) {
                 double q = x[0] * x[0] - 1;
                 return q * q + 0.2 * x[0];
             };
             double x_star = -1.0;
             {
                 double best = 1e300;
                 for (double x = -2; x <= 2; x += 1e-4) {
                     double v = dw({x});
                     if (v < best) {
                         best = v;
                         x_star = x;
                     }
                 }
             }
             unsigned close_dw = 0;
             for (unsigned rep = 0; rep < runs; ++rep) {
                 RandomStream rs = s.split(100000 + rep);
                 auto res = simulated_annealing(dw, {-3.0}, {3.0}, 2.0, 5 * steps, rs);
                 close_dw += std::abs(res.best_point[0] - x_star) <= 0.2 ? 1 : 0;
             }
             double freq_dw = close_dw / static_cast<double>(runs);

             Report r;
             r.estimate = freq_dw;
             r.replicas_used = runs;
             Check c1{"quadratic_hits", 0.95, freq_quad, 0.0, freq_quad >= 0.95};
             Check c2{"double_well_hits", 0.90, freq_dw, 0.0, freq_dw >= 0.90};
             r.checks.push_back(c1);
             r.checks.push_back(c2);
             return r;
         }});

    add({"mcmc.monotone-search", "objective never increases; hitting-time lower bound",
         {{"steps", 20000}, {"runs", 50}}, 1, [](const ExperimentPlan& plan) {
             auto steps = u64param(plan, "steps");
             auto runs = uparam(plan, "runs");
             RandomStream s = root_stream(plan);
             auto sphere = [](const std::vector<double>& x) {
                 return x[0] * x[0] + x[1] * x[1];
             };
             auto radial = [](RandomStream& rs) {
                 return std::exp(-3.0 + 2.5 * sample_standard_normal(rs));
             };
             const double eps = 0.01;
             const double rho = 1.0;
             std::vector<double> taus;
             for (unsigned rep = 0; rep < runs; ++rep) {
                 RandomStream rs = s.split(rep);
                 auto res = monotone_random_search(sphere, {1.0, 0.0}, radial, steps, {0.0, 0.0},
                                                   eps, rs);
                 if (res.hitting_time > 0) taus.push_back(static_cast<double>(res.hitting_time));
                 else taus.push_back(static_cast<double>(steps)); // censored
             }
             auto ms = mean_stderr(taus);
             double bound = std::log(rho / eps) + 2.0;
             Report r;
             r.estimate = ms.mean;
             r.stderr_ = ms.stderr_;
             r.replicas_used = runs;
             r.checks.push_back(make_upper_bound_check("universal_lower_bound", ms.mean, bound));

             // Shrinking epsilon can only increase the hitting time.
             RandomStream rs1 = s.split(777);
             auto res_wide =
                 monotone_random_search(sphere, {1.0, 0.0}, radial, steps, {0.0, 0.0}, 0.1, rs1);
             RandomStream rs2 = s.split(777);
             auto res_tight =
                 monotone_random_search(sphere, {1.0, 0.0}, radial, steps, {0.0, 0.0}, 0.01, rs2);
             r.checks.push_back(make_upper_bound_check(
                 "tighter_target_takes_longer", static_cast<double>(res_tight.hitting_time),
                 static_cast<double>(res_wide.hitting_time)));
             return r;
         }});

    add({"mcmc.cipher", "substitution decryption on a synthetic bigram chain",
         {{"alphabet", 15}, {"length", 10000}, {"iterations", 10000}, {"seeds", 10}}, 1,
         [](const ExperimentPlan& plan) {
             auto m = uparam(plan, "alphabet");
             auto length = u64param(plan, "length");
             auto iterations = u64param(plan, "iterations");
             auto seeds = uparam(plan, "seeds");

             auto bigram = synthetic_bigram_matrix(m, Seed{777});

             RandomStream s = root_stream(plan);
             unsigned good_seeds = 0;
             double best_ll_gain = 0;
             for (unsigned seed = 0; seed < seeds; ++seed) {
                 RandomStream rs = s.split(seed);
                 auto plain = sample_bigram_text(bigram, length, rs);
                 // Random cipher permutation.
                 std::vector<unsigned> encode(m);
                 for (unsigned i = 0; i < m; ++i) encode[i] = i;
                 for (unsigned i = m; i-- > 1;) {
                     auto j = static_cast<unsigned>(rs.next_below(i + 1));
                     std::swap(encode[i], encode[j]);
                 }
                 CipherProblem problem;
                 problem.alphabet_size = m;
                 problem.bigram = bigram;
                 problem.ciphertext.resize(length);
                 for (std::size_t k = 0; k < length; ++k) problem.ciphertext[k] = encode[plain[k]];

                 auto res = cipher_mcmc(problem, iterations, rs);
                 std::uint64_t correct = 0;
                 for (std::size_t k = 0; k < length; ++k)
                     correct += res.decode_map[problem.ciphertext[k]] == plain[k] ? 1 : 0;
                 double accuracy = static_cast<double>(correct) / static_cast<double>(length);
                 good_seeds += accuracy >= 0.9 ? 1 : 0;
                 best_ll_gain = std::max(best_ll_gain,
                                         res.best_log_likelihood - res.initial_log_likelihood);
             }
             Report r;
             r.estimate = static_cast<double>(good_seeds);
             r.replicas_used = seeds;
             Check c{"decoded_seeds", 8.0, static_cast<double>(good_seeds), 0.0,
                     good_seeds >= 8};
             r.checks.push_back(c);
             r.checks.push_back(make_upper_bound_check("likelihood_never_drops", best_ll_gain, 0.0));
             return r;
         }});
}

// ---- sde --------------------------------------------------------------

void register_sde() {
    add({"sde.gbm", "log-price drift and normality", {{"a", 0.05}, {"sigma", 0.2}, {"t", 1.0}},
         100000, [](const ExperimentPlan& plan) {
             GbmParams params{100.0, param(plan, "a"), param(plan, "sigma")};
             double t = param(plan, "t");
             auto replicas = static_cast<unsigned>(plan.replicas);
             RandomStream s = root_stream(plan);
             std::vector<double> logs(replicas);
             for (unsigned rep = 0; rep < replicas; ++rep) {
                 RandomStream rs = s.split(rep);
                 logs[rep] = std::log(gbm_exact(params, t, rs) / params.s0);
             }
             auto ms = mean_stderr(logs);
             double drift = ms.mean / t;
             double ks = ks_distance(EmpiricalCdf(logs), [&](double x) {
                 return normal_cdf((x - params.a * t) / (params.sigma * std::sqrt(t)));
             });
             Report r;
             r.estimate = drift;
             r.stderr_ = ms.stderr_ / t;
             r.replicas_used = replicas;
             r.checks.push_back(make_check("log_drift", params.a, drift, 4 * ms.stderr_ / t));
             r.checks.push_back(make_upper_bound_check("log_normality_ks", 0.01, ks));
             return r;
         }});

    add({"sde.euler-weak", "weak error halves like h", {{"paths", 3000000}}, 1,
         [](const ExperimentPlan& plan) {
             auto paths = u64param(plan, "paths");
             GbmParams params{100.0, 0.05 - 0.2 * 0.2 / 2, 0.2};
             double mu = 0.05, strike = 100.0, t = 1.0;
             auto payoff = [&](double sT) {
                 return std::exp(-mu * t) * std::max(0.0, sT - strike);
             };
             RandomStream s = root_stream(plan);
             // Coupled Richardson ladder: level means estimate successive
             // bias differences; their ratio is 2 for a first-order scheme.
             auto table = mlmc_level_table(payoff, params, mu, 2, 5, paths, s, t);
             double ratio = table[4].mean / table[5].mean;
             Report r;
             r.estimate = ratio;
             r.replicas_used = paths;
             r.checks.push_back(make_check("richardson_ratio", 2.05, ratio, 0.45));
             return r;
         }});

    add({"sde.mlmc", "level variances, accuracy, and the cost curve",
         {{"eps", 0.01}, {"m", 4}}, 1, [](const ExperimentPlan& plan) {
             double eps = param(plan, "eps");
             auto m_factor = uparam(plan, "m");
             GbmParams params{100.0, 0.05 - 0.2 * 0.2 / 2, 0.2};
             double mu = 0.05, strike = 100.0, t = 1.0;
             double bs = black_scholes_call(params.s0, strike, params.sigma, mu, t);
             auto payoff = [&](double sT) {
                 return std::exp(-mu * t) * std::max(0.0, sT - strike);
             };
             RandomStream s = root_stream(plan);

             RandomStream s_levels = s.split(1);
             auto table = mlmc_level_table(payoff, params, mu, m_factor, 5, 20000, s_levels, t);
             Report r;
             bool ratios_ok = true;
             for (unsigned l = 1; l + 1 < table.size(); ++l) {
                 double ratio = table[l + 1].variance / table[l].variance;
                 ratios_ok &= ratio >= 1.0 / (2.0 * m_factor) && ratio <= 2.0 / m_factor;
                 r.checks.push_back(make_check("variance_ratio_l" + std::to_string(l),
                                               1.0 / m_factor, ratio,
                                               1.0 / m_factor - 1.0 / (2.0 * m_factor)));
             }

             RandomStream s_price = s.split(2);
             auto priced = mlmc_price(payoff, params, mu, eps, m_factor, s_price, t);
             r.estimate = priced.estimate;
             r.stderr_ = priced.stderr_;
             r.replicas_used = priced.cost;
             r.checks.push_back(make_check("price_vs_black_scholes", bs, priced.estimate, 3 * eps));

             // Cost growth under eps halving: multilevel stays below plain MC.
             RandomStream s_half = s.split(3);
             auto priced_half = mlmc_price(payoff, params, mu, eps / 2, m_factor, s_half, t);
             double mlmc_growth = static_cast<double>(priced_half.cost) /
                                  static_cast<double>(priced.cost);
             auto mc_cost = [&](double target) {
                 // Plain MC at accuracy target: h ~ target, N ~ target^-2.
                 double h = std::max(target, 1.0 / 4096.0);
                 auto n = static_cast<std::uint64_t>(std::ceil(260.0 / (target * target)));
                 return static_cast<double>(n) * (t / h);
             };
             double mc_growth = mc_cost(eps / 2) / mc_cost(eps);
             r.checks.push_back(
                 make_upper_bound_check("cost_growth_below_mc", mc_growth * 0.999, mlmc_growth));
             return r;
         }});

    add({"sde.crr", "binomial ladder against the closed form", {{"n", 1000}}, 1,
         [](const ExperimentPlan& plan) {
             double s0 = 100, strike = 100, sigma = 0.2, mu = 0.05, t = 1.0;
             double bs = black_scholes_call(s0, strike, sigma, mu, t);
             auto errors = crr_convergence(s0, strike, sigma, mu, t, {10, 100, 1000});
             double one = crr_one_period(1.0, 0.0, 2.0, 0.5, 1.0);
             Report r;
             r.estimate = bs;
             r.replicas_used = u64param(plan, "n");
             r.checks.push_back(make_check("one_period_replication", 1.0 / 3.0, one, 1e-12));
             r.checks.push_back(
                 make_upper_bound_check("relative_error_n1000", 1e-3, errors[2] / bs));
             r.checks.push_back(make_upper_bound_check("errors_decrease_10_100", errors[0], errors[1]));
             r.checks.push_back(
                 make_upper_bound_check("errors_decrease_100_1000", errors[1], errors[2]));
             return r;
         }});
}

// ---- graph ------------------------------------------------------------

void register_graph() {
    add({"graph.er", "edge counts match the binomial mean", {{"n", 200}, {"p", 0.1}}, 200,
         [](const ExperimentPlan& plan) {
             auto n = u64param(plan, "n");
             double p = param(plan, "p");
             auto replicas = static_cast<unsigned>(plan.replicas);
             RandomStream s = root_stream(plan);
             double pairs = static_cast<double>(n) * (static_cast<double>(n) - 1) / 2;
             double mean = 0;
             for (unsigned rep = 0; rep < replicas; ++rep) {
                 RandomStream rs = s.split(rep);
                 mean += static_cast<double>(erdos_renyi(n, p, rs).edges.size());
             }
             mean /= replicas;
             double sigma = std::sqrt(pairs * p * (1 - p) / replicas);
             Report r;
             r.estimate = mean;
             r.replicas_used = replicas;
             r.checks.push_back(make_check("edge_count_mean", pairs * p, mean, 4 * sigma));
             return r;
         }});

    add({"graph.triangles", "triangle mean c^3/6 and the Poisson zero mass",
         {{"n", 2000}, {"c", 2.0}}, 1000, [](const ExperimentPlan& plan) {
             auto n = u64param(plan, "n");
             double c = param(plan, "c");
             auto replicas = static_cast<unsigned>(plan.replicas);
             RandomStream s = root_stream(plan);
             auto stats = triangle_stats(n, c, replicas, s);
             double mu = c * c * c / 6.0;
             Report r;
             r.estimate = stats.mean_triangles;
             r.replicas_used = replicas;
             r.checks.push_back(
                 make_check("triangle_mean", mu, stats.mean_triangles, 0.05 * mu));
             r.checks.push_back(
                 make_check("zero_probability", std::exp(-mu), stats.zero_frequency, 0.02));
             return r;
         }});

    add({"graph.triangle-free", "below the threshold the graph stays triangle-free",
         {{"n", 2000}}, 200, [](const ExperimentPlan& plan) {
             auto n = u64param(plan, "n");
             auto replicas = static_cast<unsigned>(plan.replicas);
             double p = std::pow(static_cast<double>(n), -1.5);
             RandomStream s = root_stream(plan);
             unsigned free_count = 0;
             for (unsigned rep = 0; rep < replicas; ++rep) {
                 RandomStream rs = s.split(rep);
                 free_count += triangle_count(erdos_renyi(n, p, rs)) == 0 ? 1 : 0;
             }
             double freq = static_cast<double>(free_count) / replicas;
             Report r;
             r.estimate = freq;
             r.replicas_used = replicas;
             Check c{"triangle_free_frequency", 0.99, freq, 0.0, freq >= 0.99};
             r.checks.push_back(c);
             return r;
         }});

    add({"graph.connectivity", "threshold at p = c ln n / n", {{"n", 10000}}, 100,
         [](const ExperimentPlan& plan) {
             auto n = u64param(plan, "n");
             auto replicas = static_cast<unsigned>(plan.replicas);
             RandomStream s = root_stream(plan);
             RandomStream s1 = s.split(1), s2 = s.split(2);
             double super = connectivity_experiment(n, 2.0, replicas, s1);
             double sub = connectivity_experiment(n, 0.5, replicas, s2);
             Report r;
             r.estimate = super;
             r.replicas_used = replicas;
             Check c1{"supercritical_connected", 0.95, super, 0.0, super >= 0.95};
             Check c2{"subcritical_disconnected", 0.05, sub, 0.0, sub <= 0.05};
             r.checks.push_back(c1);
             r.checks.push_back(c2);
             return r;
         }});

    add({"graph.buckley-osthus", "in-degree density slope -(2+a)", {{"n", 100000}, {"a", 1.0}}, 16,
         [](const ExperimentPlan& plan) {
             auto n = u64param(plan, "n");
             double a = param(plan, "a");
             auto replicas = static_cast<unsigned>(plan.replicas);
             RandomStream s = root_stream(plan);
             // The density at fixed n is estimated by pooling independent
             // graphs; depletion sets the window, pooling kills the noise.
             std::vector<std::uint64_t> pooled;
             std::uint64_t in_sum = 0, edges = 0;
             for (unsigned rep = 0; rep < replicas; ++rep) {
                 RandomStream rs = s.split(rep);
                 auto g = buckley_osthus(n, a, rs);
                 auto hist = in_degree_histogram(g);
                 if (hist.size() > pooled.size()) pooled.resize(hist.size(), 0);
                 for (std::size_t k = 0; k < hist.size(); ++k) pooled[k] += hist[k];
                 edges += g.target.size();
                 if (rep == 0) {
                     for (std::size_t k = 1; k < hist.size(); ++k) in_sum += k * hist[k];
                 }
             }
             double slope = degree_powerlaw_fit(pooled);
             Report r;
             r.estimate = slope;
             r.replicas_used = replicas;
             r.checks.push_back(make_check("edge_count", static_cast<double>(n) * replicas,
                                           static_cast<double>(edges), 0.0));
             r.checks.push_back(make_check("in_degrees_sum_to_n", static_cast<double>(n),
                                           static_cast<double>(in_sum), 0.0));
             r.checks.push_back(make_check("density_slope", -(2.0 + a), slope, 0.15));
             return r;
         }});

    add({"graph.zipf", "monkey-corpus rank-frequency law",
         {{"letters", 26}, {"keystrokes", 10000000}}, 1, [](const ExperimentPlan& plan) {
             auto letters = uparam(plan, "letters");
             auto keystrokes = u64param(plan, "keystrokes");
             RandomStream s = root_stream(plan);
             auto corpus = monkey_corpus(letters, keystrokes, s);
             auto fit = zipf_fit(corpus);
             double alpha = std::log(letters + 1.0) / std::log(static_cast<double>(letters));
             Report r;
             r.estimate = fit.alpha;
             r.replicas_used = corpus.tokens.size();
             r.checks.push_back(make_check("alpha", alpha, fit.alpha, 0.05));
             if (letters == 2) {
                 r.checks.push_back(make_check("shift_B", 2.0, fit.shift, 0.5));
             }
             return r;
         }});

    add({"graph.heaps", "distinct-word growth exponent 1/alpha",
         {{"letters", 26}, {"keystrokes", 10000000}}, 1, [](const ExperimentPlan& plan) {
             auto letters = uparam(plan, "letters");
             auto keystrokes = u64param(plan, "keystrokes");
             RandomStream s = root_stream(plan);
             auto corpus = monkey_corpus(letters, keystrokes, s);
             std::vector<std::uint64_t> prefixes;
             for (double f = 0.01; f <= 1.0; f *= 1.6)
                 prefixes.push_back(static_cast<std::uint64_t>(f * corpus.tokens.size()));
             auto res = heaps_check(corpus, prefixes);
             double alpha = std::log(letters + 1.0) / std::log(static_cast<double>(letters));
             Report r;
             r.estimate = res.slope;
             r.replicas_used = corpus.tokens.size();
             bool nondecreasing = true;
             for (std::size_t i = 1; i < res.distinct.size(); ++i)
                 nondecreasing &= res.distinct[i] >= res.distinct[i - 1];
             r.checks.push_back(make_check("distinct_nondecreasing", 1.0,
                                           nondecreasing ? 1.0 : 0.0, 0.0));
             r.checks.push_back(make_check("heaps_slope", 1.0 / alpha, res.slope, 0.1));
             return r;
         }});
}

} // namespace

void register_all_experiments() {
    static std::once_flag flag;
    std::call_once(flag, [] {
        register_sample();
        register_exact();
        register_limits();
        register_macro();
        register_mcmc();
        register_sde();
        register_graph();
    });
}

} // namespace stochlab
