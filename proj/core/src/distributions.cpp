#include "stochlab/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace stochlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286061;

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

} // namespace

void validate(const DistributionSpec& spec) {
    std::visit(
        [](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Uniform>) {
                require(p.a < p.b, "Uniform: requires a < b");
            } else if constexpr (std::is_same_v<T, Exponential>) {
                require(p.lambda > 0, "Exponential: requires lambda > 0");
            } else if constexpr (std::is_same_v<T, Normal>) {
                require(p.sigma2 >= 0, "Normal: requires sigma2 >= 0");
            } else if constexpr (std::is_same_v<T, Poisson>) {
                require(p.lambda > 0, "Poisson: requires lambda > 0");
            } else if constexpr (std::is_same_v<T, Gamma>) {
                require(p.scale > 0 && p.shape >= 1, "Gamma: requires scale > 0, shape >= 1");
            } else if constexpr (std::is_same_v<T, Dirichlet>) {
                require(p.alpha.size() >= 2, "Dirichlet: requires >= 2 components");
                for (double a : p.alpha) require(a > 0, "Dirichlet: requires alpha > 0");
            } else if constexpr (std::is_same_v<T, Cauchy>) {
                require(p.scale > 0, "Cauchy: requires scale > 0");
            } else if constexpr (std::is_same_v<T, Gumbel>) {
                require(p.scale > 0, "Gumbel: requires scale > 0");
            } else if constexpr (std::is_same_v<T, LogNormal>) {
                require(p.sigma2 >= 0, "LogNormal: requires sigma2 >= 0");
            } else if constexpr (std::is_same_v<T, Geometric>) {
                require(p.p > 0 && p.p <= 1, "Geometric: requires p in (0,1]");
            } else if constexpr (std::is_same_v<T, Binomial>) {
                require(p.p >= 0 && p.p <= 1, "Binomial: requires p in [0,1]");
            } else if constexpr (std::is_same_v<T, Discrete>) {
                require(!p.weights.empty(), "Discrete: requires weights");
                double sum = 0;
                for (double w : p.weights) {
                    require(w >= 0, "Discrete: weights must be nonnegative");
                    sum += w;
                }
                require(sum > 0, "Discrete: weights must have positive sum");
            }
        },
        spec);
}

double inverse_cdf_sample(double u, const std::function<double(double)>& quantile) {
    if (!(u >= 0.0 && u < 1.0)) throw std::domain_error("inverse_cdf_sample: u outside [0,1)");
    return quantile(u);
}

std::pair<double, double> box_muller(double u1, double u2) {
    if (!(u1 > 0.0 && u1 <= 1.0)) throw std::domain_error("box_muller: u1 outside (0,1]");
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * kPi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

double sample_standard_normal(RandomStream& stream) {
    // One deviate per call; the sine companion is dropped so the draw count
    // stays a fixed function of the call sequence.
    double u1 = stream.next_uniform_pos();
    double u2 = stream.next_uniform();
    return box_muller(u1, u2).first;
}

double sample_exponential(RandomStream& stream, double lambda) {
    return -std::log(stream.next_uniform_pos()) / lambda;
}

double sample_gamma(RandomStream& stream, double alpha) {
    if (alpha <= 0) throw std::invalid_argument("sample_gamma: alpha must be > 0");
    double whole = std::floor(alpha);
    double frac = alpha - whole;
    double x = 0.0;
    for (unsigned k = 0; k < static_cast<unsigned>(whole); ++k) x += sample_exponential(stream);
    if (frac > 0.0) {
        // Johnk: U1^{1/frac} / (U1^{1/frac} + U2^{1/(1-frac)}) conditioned on
        // the sum being <= 1 is Beta(frac, 1-frac); times Exp(1) gives Gamma(frac).
        for (;;) {
            double p = std::pow(stream.next_uniform_pos(), 1.0 / frac);
            double q = std::pow(stream.next_uniform_pos(), 1.0 / (1.0 - frac));
            if (p + q <= 1.0 && p + q > 0.0) {
                x += sample_exponential(stream) * p / (p + q);
                break;
            }
        }
    }
    return x;
}

std::uint64_t sample_poisson(RandomStream& stream, double lambda) {
    // Exponential race: count arrivals of a rate-lambda renewal in [0,1).
    std::uint64_t n = 0;
    double t = sample_exponential(stream, lambda);
    while (t < 1.0) {
        ++n;
        t += sample_exponential(stream, lambda);
    }
    return n;
}

std::vector<double> sample_dirichlet(const Dirichlet& d, RandomStream& stream) {
    validate(DistributionSpec{d});
    std::vector<double> y(d.alpha.size());
    double total = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] = sample_gamma(stream, d.alpha[i]);
        total += y[i];
    }
    for (double& v : y) v /= total;
    return y;
}

double sample(const DistributionSpec& spec, RandomStream& stream) {
    validate(spec);
    return std::visit(
        [&stream](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Uniform>) {
                return p.a + (p.b - p.a) * stream.next_uniform();
            } else if constexpr (std::is_same_v<T, Exponential>) {
                return sample_exponential(stream, p.lambda);
            } else if constexpr (std::is_same_v<T, Normal>) {
                return p.mu + std::sqrt(p.sigma2) * sample_standard_normal(stream);
            } else if constexpr (std::is_same_v<T, Poisson>) {
                return static_cast<double>(sample_poisson(stream, p.lambda));
            } else if constexpr (std::is_same_v<T, Gamma>) {
                double x = 0;
                for (unsigned k = 0; k < p.shape; ++k) x += sample_exponential(stream);
                return p.scale * x;
            } else if constexpr (std::is_same_v<T, Dirichlet>) {
                throw std::invalid_argument("sample: Dirichlet is vector-valued, use sample_dirichlet");
            } else if constexpr (std::is_same_v<T, Cauchy>) {
                return p.location + p.scale * std::tan(kPi * (stream.next_uniform() - 0.5));
            } else if constexpr (std::is_same_v<T, Gumbel>) {
                return -p.scale * std::log(-std::log(stream.next_uniform_pos()));
            } else if constexpr (std::is_same_v<T, LogNormal>) {
                return std::exp(p.mu + std::sqrt(p.sigma2) * sample_standard_normal(stream));
            } else if constexpr (std::is_same_v<T, Geometric>) {
                if (p.p == 1.0) return 1.0;
                double u = stream.next_uniform_pos();
                return std::ceil(std::log(u) / std::log1p(-p.p));
            } else if constexpr (std::is_same_v<T, Binomial>) {
                unsigned s = 0;
                for (unsigned k = 0; k < p.n; ++k) s += stream.next_uniform() < p.p ? 1u : 0u;
                return static_cast<double>(s);
            } else if constexpr (std::is_same_v<T, Discrete>) {
                double total = std::accumulate(p.weights.begin(), p.weights.end(), 0.0);
                double u = stream.next_uniform() * total;
                double acc = 0;
                for (std::size_t i = 0; i < p.weights.size(); ++i) {
                    acc += p.weights[i];
                    if (u < acc) return static_cast<double>(i);
                }
                return static_cast<double>(p.weights.size() - 1);
            }
        },
        spec);
}

std::pair<double, double> analytic_moments(const DistributionSpec& spec) {
    validate(spec);
    return std::visit(
        [](const auto& p) -> std::pair<double, double> {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Uniform>) {
                double w = p.b - p.a;
                return {(p.a + p.b) / 2, w * w / 12};
            } else if constexpr (std::is_same_v<T, Exponential>) {
                return {1 / p.lambda, 1 / (p.lambda * p.lambda)};
            } else if constexpr (std::is_same_v<T, Normal>) {
                return {p.mu, p.sigma2};
            } else if constexpr (std::is_same_v<T, Poisson>) {
                return {p.lambda, p.lambda};
            } else if constexpr (std::is_same_v<T, Gamma>) {
                return {p.scale * p.shape, p.scale * p.scale * p.shape};
            } else if constexpr (std::is_same_v<T, Gumbel>) {
                return {kEulerGamma * p.scale, kPi * kPi * p.scale * p.scale / 6};
            } else if constexpr (std::is_same_v<T, LogNormal>) {
                double m = std::exp(p.mu + p.sigma2 / 2);
                return {m, (std::exp(p.sigma2) - 1) * m * m};
            } else if constexpr (std::is_same_v<T, Geometric>) {
                return {1 / p.p, (1 - p.p) / (p.p * p.p)};
            } else if constexpr (std::is_same_v<T, Binomial>) {
                return {p.n * p.p, p.n * p.p * (1 - p.p)};
            } else if constexpr (std::is_same_v<T, Discrete>) {
                double total = 0, m1 = 0, m2 = 0;
                for (std::size_t i = 0; i < p.weights.size(); ++i) total += p.weights[i];
                for (std::size_t i = 0; i < p.weights.size(); ++i) {
                    double q = p.weights[i] / total;
                    m1 += q * static_cast<double>(i);
                    m2 += q * static_cast<double>(i) * static_cast<double>(i);
                }
                return {m1, m2 - m1 * m1};
            } else {
                throw std::invalid_argument("analytic_moments: not defined for this law");
            }
        },
        spec);
}

RejectionResult rejection_sample(RandomStream& stream, const std::function<double(double)>& density,
                                 double bound, double a, double b, std::uint64_t max_trials) {
    if (!(bound > 0)) throw std::invalid_argument("rejection_sample: bound must be > 0");
    if (!(a < b)) throw std::invalid_argument("rejection_sample: requires a < b");
    for (std::uint64_t t = 1; t <= max_trials; ++t) {
        double x = a + (b - a) * stream.next_uniform();
        double y = bound * stream.next_uniform();
        if (y <= density(x)) return {x, t};
    }
    throw std::runtime_error("rejection_sample: trial cap exceeded (bound likely invalid)");
}

std::vector<double> sphere_uniform(RandomStream& stream, unsigned dim) {
    if (dim == 0) throw std::invalid_argument("sphere_uniform: dimension must be >= 1");
    std::vector<double> v(dim);
    for (;;) {
        double norm2 = 0;
        for (auto& x : v) {
            x = sample_standard_normal(stream);
            norm2 += x * x;
        }
        if (norm2 > 1e-280) {
            double inv = 1.0 / std::sqrt(norm2);
            for (auto& x : v) x *= inv;
            return v;
        }
    }
}

std::vector<double> sorted_uniforms(RandomStream& stream, unsigned n) {
    if (n == 0) throw std::invalid_argument("sorted_uniforms: n must be >= 1");
    std::vector<double> gaps(n + 1);
    double total = 0;
    for (auto& g : gaps) {
        g = sample_exponential(stream);
        total += g;
    }
    std::vector<double> out(n);
    double acc = 0;
    for (unsigned i = 0; i < n; ++i) {
        acc += gaps[i];
        out[i] = acc / total;
    }
    return out;
}

} // namespace stochlab
