#include "stochlab/reaction.hpp"

#include "stochlab/models.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace stochlab;

TEST_CASE("propensity follows the falling-factorial rate law") {
    auto net = ehrenfest_network(20, 1.5);
    PopulationState state;
    state.counts = {20, 0};
    auto rates = propensity(net, state);
    // Unary reaction: K * n_i; total lambda * N at the all-on-one-dog state.
    CHECK(rates[0] == doctest::Approx(1.5 * 20));
    CHECK(rates[1] == doctest::Approx(0.0));

    // A reaction missing its inputs has zero rate.
    ReactionNetwork pair;
    pair.species = {"a", "b"};
    pair.reactions = {{{2, 0}, {0, 1}, 1.0}};
    pair.scale = 10;
    PopulationState st;
    st.counts = {1, 0};
    CHECK(propensity(pair, st)[0] == doctest::Approx(0.0));
    st.counts = {5, 0};
    // N^{1-2} K n (n-1) = 5*4/10.
    CHECK(propensity(pair, st)[0] == doctest::Approx(2.0));
}

TEST_CASE("ssa preserves conservation laws exactly") {
    auto net = ehrenfest_network(20);
    PopulationState init;
    init.counts = {20, 0};
    RandomStream s{Seed{5}};
    auto traj = ssa_run(net, init, 50.0, s);
    REQUIRE(traj.times.size() > 100);
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        CHECK(traj.states[k][0] + traj.states[k][1] == 20.0);
        if (k > 0) CHECK(traj.times[k] > traj.times[k - 1]);
    }
}

TEST_CASE("conservation laws come from the stoichiometry null space") {
    auto laws = conservation_laws(ehrenfest_network(10));
    REQUIRE(laws.size() == 1);
    // (1, 1) direction.
    CHECK(laws[0][0] == laws[0][1]);

    // Schlogl has no conserved linear form.
    CHECK(conservation_laws(schlogl_network(100)).empty());
}

TEST_CASE("a network with no enabled reaction is absorbing immediately") {
    ReactionNetwork net;
    net.species = {"a"};
    net.reactions = {{{1}, {0}, 1.0}};
    net.scale = 1;
    PopulationState init;
    init.counts = {0};
    RandomStream s{Seed{6}};
    auto traj = ssa_run(net, init, 10.0, s);
    CHECK(traj.times.size() == 1);
    CHECK(traj.states[0][0] == 0.0);
}

TEST_CASE("two-state chain long-run occupancy solves the balance equations") {
    ReactionNetwork net;
    net.species = {"a", "b"};
    net.reactions = {{{1, 0}, {0, 1}, 1.0}, {{0, 1}, {1, 0}, 2.0}};
    net.scale = 1;
    PopulationState init;
    init.counts = {1, 0};
    RandomStream s{Seed{7}};
    auto traj = ssa_run(net, init, 20000.0, s);
    double in_a = 0, total = 0;
    for (std::size_t k = 0; k + 1 < traj.times.size(); ++k) {
        double dt = traj.times[k + 1] - traj.times[k];
        total += dt;
        in_a += traj.states[k][0] > 0.5 ? dt : 0;
    }
    // Balance: pi_a = 2/3 for departure rates (1, 2).
    CHECK(std::abs(in_a / total - 2.0 / 3.0) < 0.02);
}

TEST_CASE("mean-field right-hand sides") {
    auto ehrenfest_rhs = mean_field(ehrenfest_network(100, 0.7));
    auto dc = ehrenfest_rhs({0.9, 0.1});
    CHECK(dc[0] == doctest::Approx(0.7 * (0.1 - 0.9)));
    CHECK(dc[1] == doctest::Approx(-dc[0]));

    // Schlogl drift factors as -(x-1)^3.
    auto schlogl_rhs = mean_field(schlogl_network(100));
    for (double x : {0.0, 0.5, 1.0, 1.7, 2.5}) {
        CHECK(schlogl_rhs({x})[0] == doctest::Approx(-std::pow(x - 1.0, 3.0)).epsilon(1e-12));
    }

    // Zero rate constants freeze the flow.
    ReactionNetwork frozen = ehrenfest_network(10);
    for (auto& rx : frozen.reactions) rx.rate_constant = 0;
    auto frozen_rhs = mean_field(frozen);
    CHECK(frozen_rhs({0.3, 0.7})[0] == doctest::Approx(0.0));
}

TEST_CASE("rk4 integrator hits the ehrenfest fixed point and conserves mass") {
    auto rhs = mean_field(ehrenfest_network(100));
    auto traj = integrate(rhs, {1.0, 0.0}, 20.0, 0.01);
    auto& last = traj.states.back();
    CHECK(std::abs(last[0] - 0.5) < 1e-8);
    for (const auto& c : traj.states) CHECK(std::abs(c[0] + c[1] - 1.0) < 1e-8);
    CHECK_THROWS_AS(integrate(rhs, {1.0, 0.0}, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("rk4 matches the exact linear solution to its order") {
    // dc/dt = -c from 1: c(t) = e^-t.
    auto rhs = [](const std::vector<double>& c) { return std::vector<double>{-c[0]}; };
    auto traj = integrate(rhs, {1.0}, 1.0, 0.01);
    CHECK(std::abs(traj.states.back()[0] - std::exp(-1.0)) < 1e-9);
}

TEST_CASE("kurtz gap is zero without reactions and shrinks with scale") {
    ReactionNetwork inert;
    inert.species = {"a"};
    inert.reactions = {{{1}, {1}, 0.0}};
    inert.scale = 10;
    RandomStream s{Seed{8}};
    CHECK(kurtz_gap(inert, 100, 1.0, {1.0}, 3, s) == doctest::Approx(0.0));

    RandomStream s2{Seed{9}};
    RandomStream sa = s2.split(1), sb = s2.split(2);
    double g100 = kurtz_gap(ehrenfest_network(100), 100, 5.0, {1.0, 0.0}, 20, sa);
    double g10000 = kurtz_gap(ehrenfest_network(100), 10000, 5.0, {1.0, 0.0}, 20, sb);
    CHECK(g10000 < g100);
    CHECK(g10000 <= 0.05);
}
