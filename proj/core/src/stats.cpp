#include "stochlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace stochlab {

EmpiricalCdf::EmpiricalCdf(std::vector<double> sample) : sorted_(std::move(sample)) {
    if (sorted_.empty()) throw std::invalid_argument("empirical cdf: empty sample");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
    auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double ks_distance(const EmpiricalCdf& sample, const std::function<double(double)>& cdf) {
    const auto& xs = sample.sorted();
    const double n = static_cast<double>(xs.size());
    double sup = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        // Right of the jump F_n = (i+1)/n; just left of it F_n = i/n. The
        // target cdf is probed one ulp below the point so that a step cdf
        // jumping exactly at a sample point is handled correctly.
        double f_at = cdf(xs[i]);
        double f_left = cdf(std::nextafter(xs[i], -std::numeric_limits<double>::infinity()));
        sup = std::max(sup, std::abs(f_at - static_cast<double>(i + 1) / n));
        sup = std::max(sup, std::abs(f_left - static_cast<double>(i) / n));
    }
    return sup;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * 3.14159265358979323846);
}

namespace {

double gamma_p_series(double s, double x) {
    double term = 1.0 / s;
    double sum = term;
    for (int k = 1; k < 1000; ++k) {
        term *= x / (s + k);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

double gamma_q_contfrac(double s, double x) {
    // Lentz continued fraction for Q(s, x), x > s + 1.
    double tiny = 1e-300;
    double b = x + 1 - s;
    double c = 1 / tiny;
    double d = 1 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        double an = -i * (i - s);
        b += 2;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1 / d;
        double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

} // namespace

double gamma_q(double s, double x) {
    if (s <= 0 || x < 0) throw std::invalid_argument("gamma_q: requires s > 0, x >= 0");
    if (x == 0) return 1.0;
    if (x < s + 1) return 1.0 - gamma_p_series(s, x);
    return gamma_q_contfrac(s, x);
}

double chi_square_tail(double df, double x) { return gamma_q(df / 2, x / 2); }

MeanStderr mean_stderr(const std::vector<double>& sample) {
    if (sample.empty()) throw std::invalid_argument("mean_stderr: empty sample");
    double mean = 0;
    for (double v : sample) mean += v;
    mean /= static_cast<double>(sample.size());
    double var = 0;
    for (double v : sample) var += (v - mean) * (v - mean);
    if (sample.size() > 1) var /= static_cast<double>(sample.size() - 1);
    double se = std::sqrt(var / static_cast<double>(sample.size()));
    return {mean, se, sample.size()};
}

double sample_variance(const std::vector<double>& sample) {
    if (sample.size() < 2) return 0.0;
    double mean = 0;
    for (double v : sample) mean += v;
    mean /= static_cast<double>(sample.size());
    double var = 0;
    for (double v : sample) var += (v - mean) * (v - mean);
    return var / static_cast<double>(sample.size() - 1);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line: need >= 2 points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0) throw std::invalid_argument("fit_line: degenerate abscissae");
    double slope = (n * sxy - sx * sy) / denom;
    double intercept = (sy - slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    double ymean = sy / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double e = y[i] - (intercept + slope * x[i]);
        ss_res += e * e;
        ss_tot += (y[i] - ymean) * (y[i] - ymean);
    }
    double r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return {slope, intercept, r2};
}

LineFit fit_loglog_density(const std::map<double, double>& value_to_weight, double lo, double hi,
                           unsigned bins_per_decade) {
    if (!(lo > 0) || !(hi > lo)) throw std::invalid_argument("fit_loglog_density: bad range");
    const double log_lo = std::log10(lo);
    const double log_hi = std::log10(hi);
    const unsigned nbins =
        std::max(3u, static_cast<unsigned>(std::ceil((log_hi - log_lo) * bins_per_decade)));
    std::vector<double> weight(nbins, 0.0);
    double total = 0;
    for (const auto& [v, w] : value_to_weight) total += w;
    for (const auto& [v, w] : value_to_weight) {
        if (v < lo || v > hi) continue;
        auto bin = static_cast<std::size_t>((std::log10(v) - log_lo) / (log_hi - log_lo) * nbins);
        if (bin >= nbins) bin = nbins - 1;
        weight[bin] += w;
    }
    std::vector<double> xs, ys;
    for (unsigned b = 0; b < nbins; ++b) {
        if (weight[b] <= 0) continue;
        double left = std::pow(10.0, log_lo + (log_hi - log_lo) * b / nbins);
        double right = std::pow(10.0, log_lo + (log_hi - log_lo) * (b + 1) / nbins);
        double density = weight[b] / total / (right - left);
        xs.push_back(std::log10(std::sqrt(left * right)));
        ys.push_back(std::log10(density));
    }
    if (xs.size() < 3) throw std::runtime_error("fit_loglog_density: too few occupied bins");
    return fit_line(xs, ys);
}

LineFit fit_loglog_survival(std::vector<double> sample, double exclude_top) {
    if (sample.size() < 100) throw std::invalid_argument("fit_loglog_survival: sample too small");
    std::sort(sample.begin(), sample.end());
    const std::size_t n = sample.size();
    auto cutoff_idx = static_cast<std::size_t>(static_cast<double>(n) * (1.0 - exclude_top));
    if (cutoff_idx >= n) cutoff_idx = n - 1;
    double hi = sample[cutoff_idx];
    double lo = hi / 10.0;
    if (!(lo > 0)) throw std::runtime_error("fit_loglog_survival: nonpositive decade");
    std::vector<double> xs, ys;
    const unsigned kPoints = 16;
    for (unsigned i = 0; i < kPoints; ++i) {
        double x = lo * std::pow(hi / lo, (i + 0.5) / kPoints);
        auto it = std::upper_bound(sample.begin(), sample.end(), x);
        double surv = static_cast<double>(sample.end() - it) / static_cast<double>(n);
        if (surv <= 0) continue;
        xs.push_back(std::log10(x));
        ys.push_back(std::log10(surv));
    }
    if (xs.size() < 3) throw std::runtime_error("fit_loglog_survival: too few usable points");
    return fit_line(xs, ys);
}

LineFit fit_loglog_density_samples(const std::vector<double>& sample, double lo, double hi,
                                   unsigned bins_per_decade) {
    std::map<double, double> hist;
    for (double v : sample) hist[v] += 1.0;
    return fit_loglog_density(hist, lo, hi, bins_per_decade);
}

} // namespace stochlab
