#include "stochlab/knuth_yao.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace stochlab {

KnuthYaoSampler::KnuthYaoSampler(const std::vector<double>& probabilities) {
    if (probabilities.empty()) throw std::invalid_argument("knuth_yao: empty probability vector");
    double sum = 0;
    for (double p : probabilities) {
        if (!(p >= 0)) throw std::invalid_argument("knuth_yao: negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("knuth_yao: probabilities must sum to 1");

    const std::size_t n = probabilities.size();

    // A sure outcome has no finite binary tree; flag it and skip the table.
    for (std::size_t i = 0; i < n; ++i) {
        if (probabilities[i] == 1.0) {
            certain_ = i;
            mass_.assign(n, 0);
            return;
        }
    }

    mass_.assign(n, 0);

    // Snap to 64-bit fixed point, distributing the rounding deficit to the
    // largest fractional remainders so the masses sum to exactly 2^64.
    long double scale = std::ldexp(1.0L, 64);
    std::vector<long double> exact(n), frac(n);
    long double floor_sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        exact[i] = static_cast<long double>(probabilities[i]) * scale;
        long double f = std::floor(exact[i]);
        mass_[i] = static_cast<std::uint64_t>(f);
        frac[i] = exact[i] - f;
        floor_sum += f;
    }
    // The double inputs sum to 1 only within ~1e-9, so the fixed-point
    // deficit can be any small signed count; spread it over the largest
    // (or smallest) remainders, cycling when it exceeds n.
    long long deficit = std::llroundl(scale - floor_sum);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return frac[a] > frac[b] || (frac[a] == frac[b] && a < b);
    });
    for (long long k = 0; k < deficit; ++k) ++mass_[order[static_cast<std::size_t>(k) % n]];
    std::size_t pos = 0;
    for (long long k = 0; k > deficit;) {
        std::size_t i = order[n - 1 - (pos % n)];
        ++pos;
        if (mass_[i] > 0) {
            --mass_[i];
            --k;
        }
    }

    // The masses must sum to exactly 2^64, i.e. wrap to zero in uint64.
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) total += mass_[i];
    if (total != 0) throw std::logic_error("knuth_yao: fixed-point masses do not sum to one");
}

KnuthYaoDraw KnuthYaoSampler::sample_with_coin(const std::function<bool()>& flip) const {
    if (certain_ != SIZE_MAX) return {certain_, 0};
    std::uint64_t d = 0;
    for (unsigned level = 1; level <= 64; ++level) {
        d = 2 * d + (flip() ? 1u : 0u);
        for (std::size_t i = 0; i < mass_.size(); ++i) {
            if ((mass_[i] >> (64 - level)) & 1u) {
                if (d == 0) return {i, level};
                --d;
            }
        }
    }
    throw std::logic_error("knuth_yao: walk failed to terminate");
}

KnuthYaoDraw KnuthYaoSampler::sample(RandomStream& coin) const {
    return sample_with_coin([&coin]() { return coin.next_coin(); });
}

KnuthYaoDraw knuth_yao_sample(const std::vector<double>& probabilities, RandomStream& coin) {
    return KnuthYaoSampler(probabilities).sample(coin);
}

} // namespace stochlab
