#pragma once

#include "stochlab/rational.hpp"
#include "stochlab/rng.hpp"

#include <cstddef>
#include <vector>

namespace stochlab {

// Walker/Vose table. Thresholds are kept as exact rationals so that the
// input weights can be reconstructed from the table without error; sampling
// uses the cached double image of each threshold.
struct AliasCell {
    BigRational threshold; // acceptance mass of the cell's own index, in [0,1]
    std::size_t alias;     // donor index used when the cell rejects
    double threshold_d;
};

class AliasTable {
  public:
    explicit AliasTable(const std::vector<BigRational>& weights);
    explicit AliasTable(const std::vector<double>& weights);

    std::size_t size() const { return cells_.size(); }
    const AliasCell& cell(std::size_t i) const { return cells_[i]; }

    std::size_t sample(RandomStream& stream) const;

    // Per-index mass implied by the table: threshold_i/n plus every donated
    // remainder (1 - threshold_j)/n with alias_j = i. Equals the normalized
    // input weights exactly.
    std::vector<BigRational> reconstruct() const;

  private:
    void build(std::vector<BigRational> weights);
    std::vector<AliasCell> cells_;
};

std::size_t alias_sample(const AliasTable& table, RandomStream& stream);

} // namespace stochlab
