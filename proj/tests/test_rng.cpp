#include "stochlab/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

using namespace stochlab;

TEST_CASE("identical seeds give bit-identical sequences") {
    RandomStream a{Seed{42}};
    RandomStream b{Seed{42}};
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct seeds diverge") {
    RandomStream a{Seed{1}};
    RandomStream b{Seed{2}};
    int same = 0;
    for (int i = 0; i < 100; ++i) same += a.next_u64() == b.next_u64() ? 1 : 0;
    CHECK(same == 0);
}

TEST_CASE("uniform draws live in [0,1) and match the uniform mean") {
    RandomStream s{Seed{7}};
    const int n = 100000;
    double sum = 0;
    for (int i = 0; i < n; ++i) {
        double u = s.next_uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    double mean = sum / n;
    double tol = 4.0 * (1.0 / std::sqrt(12.0)) / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(mean - 0.5) < tol);
}

TEST_CASE("split children share no prefix with each other or the parent") {
    RandomStream parent{Seed{42}};
    RandomStream c0 = parent.split(0);
    RandomStream c1 = parent.split(1);
    CHECK(c0.state_key() != c1.state_key());

    std::set<std::uint64_t> seen;
    for (int i = 0; i < 1000; ++i) seen.insert(c0.next_u64());
    for (int i = 0; i < 1000; ++i) CHECK(seen.count(c1.next_u64()) == 0);
}

TEST_CASE("split does not advance the parent") {
    RandomStream a{Seed{5}};
    RandomStream b{Seed{5}};
    (void)b.split(3);
    CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("draw counter advances by one per draw") {
    RandomStream s{Seed{9}};
    CHECK(s.draw_count() == 0);
    s.next_uniform();
    s.next_u64();
    CHECK(s.draw_count() == 2);
}

TEST_CASE("next_below is unbiased over a small range") {
    RandomStream s{Seed{11}};
    std::vector<int> counts(5, 0);
    const int n = 100000;
    for (int i = 0; i < n; ++i) counts[s.next_below(5)]++;
    for (int c : counts) CHECK(std::abs(c - n / 5) < 5 * std::sqrt(n * 0.2 * 0.8));
}
