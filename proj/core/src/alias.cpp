#include "stochlab/alias.hpp"

#include <stdexcept>

namespace stochlab {

AliasTable::AliasTable(const std::vector<BigRational>& weights) {
    build(weights);
}

AliasTable::AliasTable(const std::vector<double>& weights) {
    std::vector<BigRational> w;
    w.reserve(weights.size());
    for (double x : weights) {
        if (!(x >= 0)) throw std::invalid_argument("alias: weights must be nonnegative");
        w.push_back(rational_from_double(x));
    }
    build(std::move(w));
}

void AliasTable::build(std::vector<BigRational> weights) {
    if (weights.empty()) throw std::invalid_argument("alias: empty weight vector");
    BigRational total = 0;
    for (const auto& w : weights) {
        if (w < 0) throw std::invalid_argument("alias: weights must be nonnegative");
        total += w;
    }
    if (total == 0) throw std::invalid_argument("alias: weights must have positive sum");

    const std::size_t n = weights.size();
    // Scale so the average cell mass is exactly 1.
    for (auto& w : weights) w = w * BigRational(static_cast<long>(n)) / total;

    cells_.assign(n, AliasCell{BigRational(1), 0, 1.0});
    std::vector<std::size_t> small, large;
    // Ties (scaled weight exactly 1) classify as small, which pins the table layout.
    for (std::size_t i = n; i-- > 0;) {
        (weights[i] <= 1 ? small : large).push_back(i);
    }

    while (!small.empty() && !large.empty()) {
        std::size_t s = small.back();
        small.pop_back();
        std::size_t l = large.back();
        large.pop_back();
        cells_[s].threshold = weights[s];
        cells_[s].alias = l;
        weights[l] -= (1 - weights[s]);
        (weights[l] <= 1 ? small : large).push_back(l);
    }
    for (std::size_t s : small) {
        cells_[s].threshold = 1;
        cells_[s].alias = s;
    }
    for (std::size_t l : large) {
        cells_[l].threshold = 1;
        cells_[l].alias = l;
    }
    for (auto& c : cells_) c.threshold_d = to_double(c.threshold);
}

std::size_t AliasTable::sample(RandomStream& stream) const {
    std::size_t i = static_cast<std::size_t>(stream.next_below(cells_.size()));
    return stream.next_uniform() < cells_[i].threshold_d ? i : cells_[i].alias;
}

std::vector<BigRational> AliasTable::reconstruct() const {
    const std::size_t n = cells_.size();
    std::vector<BigRational> mass(n, BigRational(0));
    const BigRational inv_n(1, static_cast<long>(n));
    for (std::size_t i = 0; i < n; ++i) {
        mass[i] += cells_[i].threshold * inv_n;
        mass[cells_[i].alias] += (1 - cells_[i].threshold) * inv_n;
    }
    return mass;
}

std::size_t alias_sample(const AliasTable& table, RandomStream& stream) {
    return table.sample(stream);
}

} // namespace stochlab
