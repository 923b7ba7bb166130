#pragma once

#include "stochlab/rng.hpp"

#include <functional>
#include <utility>
#include <variant>
#include <vector>

namespace stochlab {

// Tagged parameter sets for the supported laws. Constructors of the sampler
// validate the domains listed with each law.
struct Uniform {
    double a, b; // a < b
};
struct Exponential {
    double lambda; // > 0
};
struct Normal {
    double mu, sigma2; // sigma2 >= 0
};
struct Poisson {
    double lambda; // > 0
};
struct Gamma {
    double scale;   // > 0
    unsigned shape; // integer n >= 1; sum of n exponentials
};
struct Dirichlet {
    std::vector<double> alpha; // all > 0
};
struct Cauchy {
    double location, scale; // scale > 0
};
struct Gumbel {
    double scale; // T > 0; cdf exp(-exp(-y/T))
};
struct LogNormal {
    double mu, sigma2;
};
struct Geometric {
    double p; // (0,1]; support {1,2,...}, P(X=k) = (1-p)^{k-1} p
};
struct Binomial {
    unsigned n;
    double p;
};
struct Discrete {
    std::vector<double> weights; // nonnegative, positive sum
};

using DistributionSpec = std::variant<Uniform, Exponential, Normal, Poisson, Gamma, Dirichlet,
                                      Cauchy, Gumbel, LogNormal, Geometric, Binomial, Discrete>;

// Throws std::invalid_argument on a parameter outside its domain.
void validate(const DistributionSpec& spec);

// Scalar draw from the named law. Dirichlet is rejected here (vector-valued);
// use sample_dirichlet.
double sample(const DistributionSpec& spec, RandomStream& stream);

std::vector<double> sample_dirichlet(const Dirichlet& d, RandomStream& stream);

// Analytic (mean, variance) where both exist; throws for Cauchy.
std::pair<double, double> analytic_moments(const DistributionSpec& spec);

// quantile(u) for a continuous strictly monotone cdf; u must lie in [0,1).
double inverse_cdf_sample(double u, const std::function<double(double)>& quantile);

// Pair of independent standard normal deviates from two uniforms, u1 in (0,1].
std::pair<double, double> box_muller(double u1, double u2);

double sample_standard_normal(RandomStream& stream);
double sample_exponential(RandomStream& stream, double lambda = 1.0);
// Gamma(shape alpha > 0, scale 1); integer part by exponential sums,
// fractional part by rejection.
double sample_gamma(RandomStream& stream, double alpha);
std::uint64_t sample_poisson(RandomStream& stream, double lambda);

struct RejectionResult {
    double value;
    std::uint64_t trials;
};

// von Neumann sampler on [a,b] under bound C >= sup density. An invalid
// bound C < sup f cannot be detected here; that check is on the caller.
// Gives up after max_trials proposals (guards an invalid C).
RejectionResult rejection_sample(RandomStream& stream, const std::function<double(double)>& density,
                                 double bound, double a, double b,
                                 std::uint64_t max_trials = 1000000);

// Unit vector uniform on the sphere in R^d (normalized Gaussian vector).
std::vector<double> sphere_uniform(RandomStream& stream, unsigned dim);

// Joint law of n uniform order statistics via n+1 exponential spacings.
std::vector<double> sorted_uniforms(RandomStream& stream, unsigned n);

} // namespace stochlab
