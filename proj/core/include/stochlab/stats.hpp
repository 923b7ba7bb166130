#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace stochlab {

// Sorted sample wrapper; the KS statistic and plotting read from it.
class EmpiricalCdf {
  public:
    explicit EmpiricalCdf(std::vector<double> sample);
    const std::vector<double>& sorted() const { return sorted_; }
    std::size_t size() const { return sorted_.size(); }
    // F_n(x), right-continuous.
    double operator()(double x) const;

  private:
    std::vector<double> sorted_;
};

// sup_x |F_n(x) - F(x)| against a continuous cdf.
double ks_distance(const EmpiricalCdf& sample, const std::function<double(double)>& cdf);

double normal_cdf(double x);
double normal_pdf(double x);

// Regularized incomplete gamma Q(s, x) = Gamma(s,x)/Gamma(s).
double gamma_q(double s, double x);
// Chi-square upper tail P(X > x) with df degrees of freedom.
double chi_square_tail(double df, double x);

struct MeanStderr {
    double mean;
    double stderr_;
    std::uint64_t count;
};
MeanStderr mean_stderr(const std::vector<double>& sample);

double sample_variance(const std::vector<double>& sample);

// Least-squares line fit y = intercept + slope * x.
struct LineFit {
    double slope;
    double intercept;
    double r_squared;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Slope of log density vs log value using logarithmic bins over
// [lo, hi]; weights allow exact synthetic histograms.
LineFit fit_loglog_density(const std::map<double, double>& value_to_weight, double lo, double hi,
                           unsigned bins_per_decade = 8);

// Tail-exponent fit of the survival function P(X > x) on a log grid over
// one decade ending below the top `exclude_top` fraction of the sample.
LineFit fit_loglog_survival(std::vector<double> sample, double exclude_top = 0.01);

// Density-slope fit over [lo, hi] from raw samples.
LineFit fit_loglog_density_samples(const std::vector<double>& sample, double lo, double hi,
                                   unsigned bins_per_decade = 8);

} // namespace stochlab
