#include "stochlab/sde.hpp"

#include "stochlab/distributions.hpp"
#include "stochlab/stats.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace stochlab;

TEST_CASE("gbm with zero volatility is deterministic") {
    GbmParams params{2.0, 0.3, 0.0};
    RandomStream s{Seed{51}};
    CHECK(gbm_exact(params, 2.0, s) == doctest::Approx(2.0 * std::exp(0.6)));
    CHECK_THROWS_AS(gbm_exact(params, -1.0, s), std::invalid_argument);
}

TEST_CASE("gbm log drift and log normality") {
    GbmParams params{100.0, 0.05, 0.2};
    const double t = 2.0;
    RandomStream s{Seed{52}};
    const unsigned replicas = 100000;
    std::vector<double> logs(replicas);
    for (unsigned rep = 0; rep < replicas; ++rep) {
        RandomStream rs = s.split(rep);
        logs[rep] = std::log(gbm_exact(params, t, rs) / params.s0);
    }
    auto ms = mean_stderr(logs);
    CHECK(std::abs(ms.mean / t - params.a) <= 4 * ms.stderr_ / t);
    double ks = ks_distance(EmpiricalCdf(logs), [&](double x) {
        return normal_cdf((x - params.a * t) / (params.sigma * std::sqrt(t)));
    });
    CHECK(ks < 0.01);
}

TEST_CASE("euler path has the right length and the ode limit") {
    RandomStream s{Seed{53}};
    auto path = euler_path([](double x, double) { return 0.5 * x; },
                           [](double, double) { return 0.0; }, 1.0, 0.01, 1.0, s);
    CHECK(path.size() == 101);
    // Deterministic Euler converges at O(h) to e^{0.5}.
    CHECK(std::abs(path.back() - std::exp(0.5)) < 0.01);
    CHECK_THROWS_AS(euler_path([](double, double) { return 0.0; },
                               [](double, double) { return 0.0; }, 1.0, 0.3, 1.0, s),
                    std::invalid_argument);
}

TEST_CASE("mc price is exact for deterministic payoffs") {
    GbmParams params{100.0, 0.05, 0.0};
    RandomStream s{Seed{54}};
    auto res = mc_price([](double) { return 7.0; }, params, 0.05, 0.1, 1000, s);
    CHECK(res.estimate == doctest::Approx(7.0));
    CHECK(res.stderr_ == doctest::Approx(0.0));
    CHECK(res.cost == 10000);
}

TEST_CASE("euler weak error scales like h") {
    GbmParams params{100.0, 0.05 - 0.02, 0.2};
    const double mu = 0.05, strike = 100.0;
    auto payoff = [&](double sT) { return std::exp(-mu) * std::max(0.0, sT - strike); };
    RandomStream s{Seed{55}};
    // Coupled Richardson ladder at M = 2: the level means estimate
    // bias(h) - bias(2h) with tiny variance, so their ratio isolates the
    // first-order error term without fighting path noise.
    auto table = mlmc_level_table(payoff, params, mu, 2, 5, 3000000, s);
    double ratio = table[4].mean / table[5].mean;
    CHECK(ratio >= 1.6);
    CHECK(ratio <= 2.5);
}

TEST_CASE("mse fits the C1/N + C2 h^2 law") {
    GbmParams params{100.0, 0.05 - 0.02, 0.2};
    const double mu = 0.05, strike = 100.0;
    double bs = black_scholes_call(100.0, strike, 0.2, mu, 1.0);
    auto payoff = [&](double sT) { return std::exp(-mu) * std::max(0.0, sT - strike); };
    RandomStream s{Seed{56}};

    std::vector<double> x1, x2, y;
    unsigned cell = 0;
    for (std::uint64_t n_paths : {1000ull, 4000ull, 16000ull}) {
        for (double h : {0.25, 0.125, 0.0625}) {
            const unsigned reps = 160;
            double mse = 0;
            RandomStream cs = s.split(cell++);
            for (unsigned rep = 0; rep < reps; ++rep) {
                RandomStream rs = cs.split(rep);
                auto est = mc_price(payoff, params, mu, h, n_paths, rs);
                mse += (est.estimate - bs) * (est.estimate - bs);
            }
            mse /= reps;
            x1.push_back(1.0 / static_cast<double>(n_paths));
            x2.push_back(h * h);
            y.push_back(mse);
        }
    }
    // Two-parameter least squares y = C1 x1 + C2 x2 (no intercept).
    double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        a11 += x1[i] * x1[i];
        a12 += x1[i] * x2[i];
        a22 += x2[i] * x2[i];
        b1 += x1[i] * y[i];
        b2 += x2[i] * y[i];
    }
    double det = a11 * a22 - a12 * a12;
    double c1 = (b1 * a22 - b2 * a12) / det;
    double c2 = (a11 * b2 - a12 * b1) / det;
    CHECK(c1 > 0);
    CHECK(c2 > 0);
    double ss_res = 0, ss_tot = 0, ymean = 0;
    for (double v : y) ymean += v;
    ymean /= static_cast<double>(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        double fit = c1 * x1[i] + c2 * x2[i];
        ss_res += (y[i] - fit) * (y[i] - fit);
        ss_tot += (y[i] - ymean) * (y[i] - ymean);
    }
    CHECK(1.0 - ss_res / ss_tot >= 0.9);
}

TEST_CASE("mlmc level variances decay like h and telescoping holds") {
    GbmParams params{100.0, 0.05 - 0.02, 0.2};
    const double mu = 0.05, strike = 100.0;
    auto payoff = [&](double sT) { return std::exp(-mu) * std::max(0.0, sT - strike); };
    RandomStream s{Seed{57}};
    auto table = mlmc_level_table(payoff, params, mu, 4, 5, 20000, s);
    REQUIRE(table.size() == 6);
    for (unsigned l = 1; l + 1 < table.size(); ++l) {
        double ratio = table[l + 1].variance / table[l].variance;
        CHECK(ratio >= 1.0 / 8.0);
        CHECK(ratio <= 2.0 / 4.0);
    }

    // Telescoping identity per fixed Brownian path: evaluating one fine
    // increment sequence at every resolution makes the level differences
    // collapse onto the finest value.
    RandomStream ps{Seed{58}};
    const unsigned m_factor = 4, levels = 3;
    const std::uint64_t fine_steps = 64; // 4^3
    std::vector<double> dw(fine_steps);
    double h_fine = 1.0 / static_cast<double>(fine_steps);
    for (auto& w : dw) w = std::sqrt(h_fine) * sample_standard_normal(ps);
    auto terminal_at = [&](unsigned level) {
        auto steps = static_cast<std::uint64_t>(std::pow(m_factor, level));
        auto group = fine_steps / steps;
        double h = 1.0 / static_cast<double>(steps);
        double sVal = params.s0;
        for (std::uint64_t k = 0; k < steps; ++k) {
            double dwk = 0;
            for (std::uint64_t g = 0; g < group; ++g) dwk += dw[k * group + g];
            sVal += mu * sVal * h + params.sigma * sVal * dwk;
        }
        return payoff(sVal);
    };
    double telescoped = terminal_at(0);
    for (unsigned level = 1; level <= levels; ++level)
        telescoped += terminal_at(level) - terminal_at(level - 1);
    CHECK(telescoped == doctest::Approx(terminal_at(levels)).epsilon(1e-12));
}

TEST_CASE("mlmc hits the black-scholes price at the target accuracy") {
    GbmParams params{100.0, 0.05 - 0.02, 0.2};
    const double mu = 0.05, strike = 100.0;
    double bs = black_scholes_call(100.0, strike, 0.2, mu, 1.0);
    auto payoff = [&](double sT) { return std::exp(-mu) * std::max(0.0, sT - strike); };
    RandomStream s{Seed{59}};
    auto res = mlmc_price(payoff, params, mu, 0.01, 4, s);
    CHECK(std::abs(res.estimate - bs) <= 0.03);
    CHECK(res.cost > 0);
    REQUIRE(!res.levels.empty());
    // Level 0 at a single step reduces to plain MC at h0 = T.
    CHECK(res.levels[0].h == doctest::Approx(1.0));
}

TEST_CASE("mlmc agrees with plain mc at matched accuracy") {
    GbmParams params{100.0, 0.05 - 0.02, 0.2};
    const double mu = 0.05, strike = 100.0;
    auto payoff = [&](double sT) { return std::exp(-mu) * std::max(0.0, sT - strike); };
    RandomStream s{Seed{60}};
    RandomStream s1 = s.split(1), s2 = s.split(2);
    auto ml = mlmc_price(payoff, params, mu, 0.02, 4, s1);
    auto mc = mc_price(payoff, params, mu, 1.0 / 128, 600000, s2);
    double gap = std::abs(ml.estimate - mc.estimate);
    double band = 4 * std::sqrt(ml.stderr_ * ml.stderr_ + mc.stderr_ * mc.stderr_) + 0.02;
    CHECK(gap <= band);
}

TEST_CASE("crr replication, discounting, and call monotonicity") {
    CHECK(crr_one_period(1.0, 0.0, 2.0, 0.5, 1.0) == doctest::Approx(1.0 / 3.0));

    // Replicating-portfolio oracle: k_S S u + B r = C_u, k_S S d + B r = C_d.
    {
        double S = 1.0, u = 2.0, d = 0.5, r = 1.0, cu = 1.0, cd = 0.0;
        double k_s = (cu - cd) / (S * (u - d));
        double bond = (cd - k_s * S * d) / r;
        CHECK(crr_one_period(cu, cd, u, d, r) == doctest::Approx(k_s * S + bond));
    }

    // Constant payoff discounts to kappa / r^n.
    double kappa = crr_price([](double) { return 5.0; }, 100, 1.1, 0.9, 1.02, 7);
    CHECK(kappa == doctest::Approx(5.0 / std::pow(1.02, 7)));

    // n = 1 general claim equals the one-period formula.
    auto payoff = [](double sT) { return std::max(0.0, sT - 95.0); };
    double direct = crr_price(payoff, 100, 1.2, 0.85, 1.01, 1);
    double one = crr_one_period(payoff(120), payoff(85), 1.2, 0.85, 1.01);
    CHECK(direct == doctest::Approx(one));

    CHECK_THROWS_AS(crr_price(payoff, 100, 1.2, 1.05, 1.01, 3), std::invalid_argument);

    // Call monotonicity in s0 and strike.
    double u = std::exp(0.2 * std::sqrt(1.0 / 50)), d = 1 / u, r = std::exp(0.05 / 50);
    auto call = [&](double s0, double strike) {
        return crr_price([strike](double sT) { return std::max(0.0, sT - strike); }, s0, u, d, r,
                         50);
    };
    CHECK(call(100, 100) <= call(110, 100));
    CHECK(call(100, 100) >= call(100, 110));
    double p_tilde = (r - d) / (u - d);
    CHECK(p_tilde > 0);
    CHECK(p_tilde < 1);
}

TEST_CASE("black-scholes boundary cases and crr convergence") {
    CHECK(black_scholes_call(100, 0, 0.2, 0.05, 1.0) == doctest::Approx(100.0));
    CHECK(black_scholes_call(100, 90, 0.0, 0.05, 1.0) ==
          doctest::Approx(std::max(0.0, 100.0 - 90.0 * std::exp(-0.05))));

    auto errors = crr_convergence(100, 100, 0.2, 0.05, 1.0, {10, 100, 1000});
    double bs = black_scholes_call(100, 100, 0.2, 0.05, 1.0);
    CHECK(errors[0] > errors[1]);
    CHECK(errors[1] > errors[2]);
    CHECK(errors[2] / bs <= 1e-3);
}
