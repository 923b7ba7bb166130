#include "stochlab/sde.hpp"

#include "stochlab/distributions.hpp"
#include "stochlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stochlab {

void validate(const GbmParams& params) {
    if (!(params.s0 > 0)) throw std::invalid_argument("gbm: requires s0 > 0");
    if (!(params.sigma >= 0)) throw std::invalid_argument("gbm: requires sigma >= 0");
}

double gbm_exact(const GbmParams& params, double t, RandomStream& stream) {
    validate(params);
    if (t < 0) throw std::invalid_argument("gbm_exact: requires t >= 0");
    double z = sample_standard_normal(stream);
    return params.s0 * std::exp(params.a * t + params.sigma * std::sqrt(t) * z);
}

std::vector<double> euler_path(const std::function<double(double, double)>& drift,
                               const std::function<double(double, double)>& diffusion, double s0,
                               double h, double t_end, RandomStream& stream) {
    if (!(h > 0)) throw std::invalid_argument("euler_path: requires h > 0");
    double steps_real = t_end / h;
    auto steps = static_cast<std::uint64_t>(std::llround(steps_real));
    if (steps == 0 || std::abs(steps_real - static_cast<double>(steps)) > 1e-9)
        throw std::invalid_argument("euler_path: h must divide the horizon");
    std::vector<double> path(steps + 1);
    path[0] = s0;
    double sqrt_h = std::sqrt(h);
    for (std::uint64_t k = 0; k < steps; ++k) {
        double t = static_cast<double>(k) * h;
        double dw = sqrt_h * sample_standard_normal(stream);
        path[k + 1] = path[k] + drift(path[k], t) * h + diffusion(path[k], t) * dw;
    }
    return path;
}

namespace {

// Terminal value of one Euler path of dS = mu S dt + sigma S dW.
inline double euler_terminal(const GbmParams& params, double mu, double h, std::uint64_t steps,
                             RandomStream& stream) {
    double s = params.s0;
    double sqrt_h = std::sqrt(h);
    for (std::uint64_t k = 0; k < steps; ++k) {
        double dw = sqrt_h * sample_standard_normal(stream);
        s += mu * s * h + params.sigma * s * dw;
    }
    return s;
}

} // namespace

McPriceResult mc_price(const std::function<double(double)>& payoff, const GbmParams& params,
                       double mu, double h, std::uint64_t n_paths, RandomStream& stream,
                       double t_end) {
    validate(params);
    if (!(h > 0) || n_paths == 0) throw std::invalid_argument("mc_price: bad parameters");
    auto steps = static_cast<std::uint64_t>(std::llround(t_end / h));
    if (steps == 0) throw std::invalid_argument("mc_price: h larger than the horizon");

    double sum = 0, sum2 = 0;
    for (std::uint64_t p = 0; p < n_paths; ++p) {
        RandomStream s = stream.split(p);
        double v = payoff(euler_terminal(params, mu, h, steps, s));
        sum += v;
        sum2 += v * v;
    }
    double mean = sum / static_cast<double>(n_paths);
    double var = std::max(0.0, sum2 / static_cast<double>(n_paths) - mean * mean);
    return {mean, std::sqrt(var / static_cast<double>(n_paths)), n_paths * steps};
}

namespace {

// Coupled fine/coarse difference of payoff(S_T): the fine path uses M
// increments per coarse step and the coarse path consumes their sums.
double level_difference(const std::function<double(double)>& payoff, const GbmParams& params,
                        double mu, unsigned m_factor, unsigned level, double t_end,
                        RandomStream& stream) {
    const auto fine_steps = static_cast<std::uint64_t>(std::pow(m_factor, level));
    const double h_fine = t_end / static_cast<double>(fine_steps);
    const double sqrt_h = std::sqrt(h_fine);
    if (level == 0) {
        double s = params.s0;
        double dw = sqrt_h * sample_standard_normal(stream);
        s += mu * s * h_fine + params.sigma * s * dw;
        return payoff(s);
    }
    const double h_coarse = h_fine * m_factor;
    double fine = params.s0, coarse = params.s0;
    double dw_sum = 0;
    std::uint64_t in_block = 0;
    for (std::uint64_t k = 0; k < fine_steps; ++k) {
        double dw = sqrt_h * sample_standard_normal(stream);
        fine += mu * fine * h_fine + params.sigma * fine * dw;
        dw_sum += dw;
        if (++in_block == m_factor) {
            coarse += mu * coarse * h_coarse + params.sigma * coarse * dw_sum;
            dw_sum = 0;
            in_block = 0;
        }
    }
    return payoff(fine) - payoff(coarse);
}

} // namespace

std::vector<MlmcLevel> mlmc_level_table(const std::function<double(double)>& payoff,
                                        const GbmParams& params, double mu, unsigned m_factor,
                                        unsigned levels, std::uint64_t samples_per_level,
                                        RandomStream& stream, double t_end) {
    validate(params);
    if (m_factor < 2) throw std::invalid_argument("mlmc: requires M >= 2");
    std::vector<MlmcLevel> table;
    for (unsigned level = 0; level <= levels; ++level) {
        RandomStream ls = stream.split(level);
        double sum = 0, sum2 = 0;
        for (std::uint64_t i = 0; i < samples_per_level; ++i) {
            RandomStream ps = ls.split(i);
            double d = level_difference(payoff, params, mu, m_factor, level, t_end, ps);
            sum += d;
            sum2 += d * d;
        }
        double mean = sum / static_cast<double>(samples_per_level);
        double var = std::max(0.0, sum2 / static_cast<double>(samples_per_level) - mean * mean);
        table.push_back({t_end / std::pow(m_factor, level), mean, var, samples_per_level});
    }
    return table;
}

MlmcResult mlmc_price(const std::function<double(double)>& payoff, const GbmParams& params,
                      double mu, double eps, unsigned m_factor, RandomStream& stream,
                      double t_end) {
    validate(params);
    if (!(eps > 0) || m_factor < 2) throw std::invalid_argument("mlmc_price: bad parameters");

    const std::uint64_t pilot = 2000;
    const std::uint64_t min_samples = 100;

    struct LevelState {
        double sum = 0, sum2 = 0;
        std::uint64_t n = 0;
        std::uint64_t steps = 1;
        double mean() const { return sum / static_cast<double>(n); }
        double variance() const {
            return std::max(0.0, sum2 / static_cast<double>(n) - mean() * mean());
        }
    };
    std::vector<LevelState> levels;
    std::uint64_t cost = 0;

    auto draw = [&](unsigned level, std::uint64_t count) {
        auto& st = levels[level];
        RandomStream ls = stream.split(level);
        for (std::uint64_t i = 0; i < count; ++i) {
            RandomStream ps = ls.split(st.n + i);
            double d = level_difference(payoff, params, mu, m_factor, level, t_end, ps);
            st.sum += d;
            st.sum2 += d * d;
        }
        st.n += count;
        cost += count * st.steps;
    };

    auto add_level = [&](unsigned level) {
        levels.push_back({});
        levels[level].steps = static_cast<std::uint64_t>(std::pow(m_factor, level));
        draw(level, pilot);
    };
    add_level(0);
    add_level(1);
    add_level(2);

    const double var_budget = eps * eps / 2;
    const double bias_budget = eps / std::sqrt(2.0);
    for (;;) {
        // Optimal allocation: N_l proportional to sqrt(V_l h_l).
        double lagrange = 0;
        for (const auto& st : levels)
            lagrange += std::sqrt(st.variance() * static_cast<double>(st.steps));
        for (unsigned level = 0; level < levels.size(); ++level) {
            auto& st = levels[level];
            double target_real =
                std::ceil(lagrange * std::sqrt(st.variance() / static_cast<double>(st.steps)) /
                          var_budget);
            auto target = static_cast<std::uint64_t>(std::max(
                static_cast<double>(min_samples), std::min(target_real, 5e7)));
            if (target > st.n) draw(level, target - st.n);
        }
        // Richardson bias estimate from the deepest correction term.
        double bias = std::abs(levels.back().mean()) / (m_factor - 1);
        if (bias <= bias_budget || levels.size() >= 12) break;
        add_level(static_cast<unsigned>(levels.size()));
    }

    MlmcResult res{};
    res.cost = cost;
    double var_total = 0;
    for (const auto& st : levels) {
        res.estimate += st.mean();
        var_total += st.variance() / static_cast<double>(st.n);
        res.levels.push_back({t_end / static_cast<double>(st.steps), st.mean(), st.variance(),
                              st.n});
    }
    res.stderr_ = std::sqrt(var_total);
    return res;
}

double crr_one_period(double claim_up, double claim_down, double u, double d, double r) {
    if (!(d < r && r < u)) throw std::invalid_argument("crr: requires d < r < u (no arbitrage)");
    double p = (r - d) / (u - d);
    return (p * claim_up + (1 - p) * claim_down) / r;
}

double crr_price(const std::function<double(double)>& payoff, double s0, double u, double d,
                 double r, unsigned n) {
    if (!(d < r && r < u)) throw std::invalid_argument("crr: requires d < r < u (no arbitrage)");
    if (n == 0) throw std::invalid_argument("crr: requires n >= 1");
    double p = (r - d) / (u - d);
    // Log-space binomial weights keep n = 1000 stable.
    double log_p = std::log(p), log_q = std::log1p(-p);
    std::vector<double> log_fact(n + 1, 0.0);
    for (unsigned i = 1; i <= n; ++i) log_fact[i] = log_fact[i - 1] + std::log(static_cast<double>(i));
    double price = 0;
    for (unsigned k = 0; k <= n; ++k) {
        double log_w = log_fact[n] - log_fact[k] - log_fact[n - k] + k * log_p + (n - k) * log_q;
        double terminal = s0 * std::pow(u, k) * std::pow(d, n - k);
        price += std::exp(log_w) * payoff(terminal);
    }
    return price / std::pow(r, n);
}

double black_scholes_call(double s0, double strike, double sigma, double mu, double t) {
    if (!(s0 > 0) || !(t > 0) || sigma < 0 || strike < 0)
        throw std::invalid_argument("black_scholes_call: bad parameters");
    if (strike == 0) return s0;
    if (sigma == 0) return std::max(0.0, s0 - strike * std::exp(-mu * t));
    double vol = sigma * std::sqrt(t);
    double d1 = (std::log(s0 / strike) + (mu + sigma * sigma / 2) * t) / vol;
    double d2 = d1 - vol;
    return s0 * normal_cdf(d1) - strike * std::exp(-mu * t) * normal_cdf(d2);
}

std::vector<double> crr_convergence(double s0, double strike, double sigma, double mu, double t,
                                    const std::vector<unsigned>& n_list) {
    double bs = black_scholes_call(s0, strike, sigma, mu, t);
    std::vector<double> errors;
    errors.reserve(n_list.size());
    for (unsigned n : n_list) {
        double u = std::exp(sigma * std::sqrt(t / n));
        double d = 1.0 / u;
        double r = std::exp(mu * t / n);
        double crr = crr_price([&](double s) { return std::max(0.0, s - strike); }, s0, u, d, r, n);
        errors.push_back(std::abs(crr - bs));
    }
    return errors;
}

} // namespace stochlab
