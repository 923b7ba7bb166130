#include "stochlab/models.hpp"

#include "stochlab/exact.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

using namespace stochlab;

namespace {

// Reference Kac ring that physically moves the balls between sites, for
// cross-checking the offset-indexed implementation.
std::vector<double> kac_ring_naive(const std::vector<std::uint8_t>& marked,
                                   std::uint64_t t_steps) {
    const std::size_t n = marked.size();
    std::vector<std::int8_t> site_color(n, 1);
    std::vector<double> diff;
    auto record = [&]() {
        long sum = 0;
        for (auto c : site_color) sum += c;
        diff.push_back(static_cast<double>(sum) / static_cast<double>(n));
    };
    record();
    for (std::uint64_t t = 0; t < t_steps; ++t) {
        std::vector<std::int8_t> next(n);
        for (std::size_t k = 0; k < n; ++k) {
            // The ball at site k moves to site k+1, flipping if k is marked.
            std::int8_t c = site_color[k];
            if (marked[k]) c = -c;
            next[(k + 1) % n] = c;
        }
        site_color = std::move(next);
        record();
    }
    return diff;
}

} // namespace

TEST_CASE("ehrenfest return time matches 2^N on the embedded chain") {
    RandomStream s{Seed{11}};
    auto r = ehrenfest_return_time_check(10, 10000, s);
    CHECK(r.all_pass());
    CHECK(std::abs(r.estimate - 1024.0) < 0.10 * 1024.0);
}

TEST_CASE("ehrenfest stationary chi-square against Binomial(20, 1/2)") {
    RandomStream s{Seed{12}};
    auto r = ehrenfest_stationary_check(20, 1000000, s);
    CHECK(r.all_pass());
}

TEST_CASE("ehrenfest concentration at t = 10N") {
    RandomStream s{Seed{13}};
    auto r = ehrenfest_concentration_check(100, 400, s);
    CHECK(r.all_pass());
    CHECK(r.estimate >= 0.99);
}

TEST_CASE("money exchange conserves coins and reaches the exponential profile") {
    RandomStream s{Seed{14}};
    auto hist = money_exchange(1000, 3, 200000, s);
    std::uint64_t coins = 0, agents = 0;
    for (std::size_t w = 0; w < hist.size(); ++w) {
        coins += w * hist[w];
        agents += hist[w];
    }
    CHECK(coins == 3000);
    CHECK(agents == 1000);

    RandomStream s2{Seed{15}};
    auto r = money_exchange_check(10000, 5, s2);
    CHECK(r.all_pass());

    CHECK_THROWS_AS(money_exchange(11, 3, 10, s2), std::invalid_argument);
}

TEST_CASE("kac ring equals the site-moving reference and is 2n-periodic") {
    RandomStream s{Seed{16}};
    const std::uint64_t n = 64;
    // A fixed mark set drives both implementations.
    std::vector<std::uint8_t> marked(n, 0);
    for (std::size_t k = 0; k < n; ++k) marked[k] = s.next_uniform() < 0.25 ? 1 : 0;

    auto naive = kac_ring_naive(marked, 2 * n);
    // Deterministic dynamics returns to the start after 2n steps.
    CHECK(naive.front() == naive.back());

    // The library draws its own marks; compare statistically instead at a
    // matched density via the mean-difference law in kac_ring_check below.
    RandomStream s2{Seed{17}};
    auto traj = kac_ring(n, 0.0, 5, s2);
    for (double d : traj.difference) CHECK(d == doctest::Approx(1.0)); // no marks, no flips
}

TEST_CASE("kac ring offset implementation matches the reference exactly") {
    // Zero density never marks; mu = 1 marks everything: both are
    // deterministic and comparable step by step.
    RandomStream s{Seed{18}};
    auto all_marked = kac_ring(10, 1.0, 4, s);
    std::vector<std::uint8_t> marks(10, 1);
    auto reference = kac_ring_naive(marks, 4);
    for (std::size_t k = 0; k < all_marked.difference.size(); ++k)
        CHECK(all_marked.difference[k] == doctest::Approx(reference[k]));
}

TEST_CASE("kac ring mean difference decays like (1-2mu)^t") {
    RandomStream s{Seed{19}};
    auto r = kac_ring_check(10000, 0.1, 20, 1000, s);
    CHECK(r.all_pass());
    CHECK(std::abs(r.estimate - std::pow(0.8, 20)) < 4 * r.stderr_ + 1e-12);
}

TEST_CASE("majority rule absorbs and respects symmetry") {
    RandomStream s{Seed{20}};
    // All-plus start stays plus and absorbs immediately.
    auto unanimous = majority_rule(51, 1.0, s);
    CHECK(unanimous.consensus == 1);
    CHECK(unanimous.steps == 0);

    unsigned plus = 0;
    const unsigned runs = 2000;
    for (unsigned rep = 0; rep < runs; ++rep) {
        RandomStream rs = s.split(rep);
        plus += majority_rule(101, 0.5, rs).consensus > 0 ? 1 : 0;
    }
    double freq = plus / static_cast<double>(runs);
    CHECK(std::abs(freq - 0.5) < 4 * std::sqrt(0.25 / runs));
}

TEST_CASE("power iteration solves small chains and detects reducibility") {
    // Doubly stochastic: uniform stationary vector.
    std::vector<std::vector<double>> doubly{{0.5, 0.5}, {0.5, 0.5}};
    auto p = power_iteration(doubly);
    CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-10));

    // Two-state chain with jump rates (a, b) = (1, 2): p = (2/3, 1/3).
    std::vector<std::vector<double>> chain{{0.0, 1.0}, {1.0, 0.0}};
    chain[0] = {0.5, 0.5};
    chain[1] = {1.0, 0.0};
    // Embedded law of rates a=1 out of state 0, b=2 out of state 1 with
    // uniformization rate 2: P = [[1/2, 1/2], [1, 0]] has pi = (2/3, 1/3).
    auto pi = power_iteration(chain);
    CHECK(pi[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(pi[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-9));

    std::vector<std::vector<double>> reducible{{1.0, 0.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(power_iteration(reducible), std::runtime_error);
}

TEST_CASE("pagerank walkers concentrate on the stationary vector") {
    std::vector<std::vector<double>> p{{0.5, 0.5}, {0.25, 0.75}};
    auto pi = power_iteration(p);
    RandomStream s{Seed{21}};
    auto occ = pagerank_walkers(p, 20000, 50.0, s);
    CHECK(std::abs(occ[0] - pi[0]) < 0.02);
}

TEST_CASE("taxi exact formula agrees with the event simulation") {
    RandomStream s{Seed{22}};
    auto res = taxi_network(5, 10, 1.0, 1.0, 1000000, s);
    CHECK(std::abs(res.exact - res.simulated) < 0.01);

    // No taxis: every client is rejected.
    RandomStream s2{Seed{23}};
    auto none = taxi_network(5, 0, 1.0, 1.0, 10000, s2);
    CHECK(none.exact == doctest::Approx(1.0));
    CHECK(none.simulated == doctest::Approx(1.0));

    double exact100 = taxi_rejection_exact(100, 100, 1.0, 1.0);
    double asym100 = taxi_rejection_asymptotic(100, 100, 1.0, 1.0);
    CHECK(std::abs(exact100 - asym100) <= 0.02);
}

TEST_CASE("branching simulation matches the exact extinction probability") {
    std::vector<double> pmf{1.0 / 27, 6.0 / 27, 12.0 / 27, 8.0 / 27};
    double q = branching_extinction(pmf);
    RandomStream s{Seed{24}};
    unsigned extinct = 0;
    const unsigned runs = 100000;
    for (unsigned rep = 0; rep < runs; ++rep) {
        RandomStream rs = s.split(rep);
        extinct += branching_sim(pmf, 30, rs, 200).back() == 0 ? 1 : 0;
    }
    double freq = extinct / static_cast<double>(runs);
    CHECK(std::abs(freq - q) < 0.005);

    RandomStream s2{Seed{25}};
    CHECK(branching_sim({1.0}, 5, s2).back() == 0);
}

TEST_CASE("pgf iteration composes the offspring polynomial") {
    PowerSeries g(16);
    g.coeff(0) = BigRational(1, 5);
    g.coeff(1) = BigRational(3, 10);
    g.coeff(2) = BigRational(1, 2);
    auto pi2 = pgf_iterate(g, 2, 16);

    // Direct two-generation enumeration of P(X_2 = 0) for pmf (.2, .3, .5):
    // G(G(0)) with G(0) = 0.2.
    double direct = 0.2 + 0.3 * 0.2 + 0.5 * 0.04;
    CHECK(to_double(pi2.coeff(0)) == doctest::Approx(direct).epsilon(1e-15));
    CHECK(pgf_iterate(g, 1, 16).coeff(0) == BigRational(1, 5));
    CHECK_THROWS_AS(pgf_iterate(g, 5, 16), std::invalid_argument);
}

TEST_CASE("chialvo threshold and avalanche exponent") {
    RandomStream s{Seed{26}};
    auto res = chialvo(1000, 2000000, s);
    for (double f : res.final_fitness) {
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
    }
    CHECK(std::abs(res.threshold_estimate - 1.0 / 3.0) < 0.03);
    CHECK(std::abs(res.avalanche_exponent - 1.5) < 0.2);
}
