#pragma once

#include "stochlab/rng.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace stochlab {

struct KnuthYaoDraw {
    std::size_t index;
    unsigned flips;
};

// Discrete distribution generating tree driven by fair coin flips. The
// probabilities are snapped to 64-bit fixed point (largest-remainder
// rounding), so the realized distribution is exactly m_i / 2^64; dyadic
// inputs with denominator up to 2^53 are represented with no error at all.
class KnuthYaoSampler {
  public:
    explicit KnuthYaoSampler(const std::vector<double>& probabilities);

    KnuthYaoDraw sample(RandomStream& coin) const;

    // Same walk with scripted flips; lets a test enumerate the whole tree.
    KnuthYaoDraw sample_with_coin(const std::function<bool()>& flip) const;

    // Exact mass of outcome i realized by the tree, as numerator over 2^64.
    std::uint64_t fixed_point_mass(std::size_t i) const { return mass_[i]; }
    std::size_t size() const { return mass_.size(); }

  private:
    std::vector<std::uint64_t> mass_; // sums to 2^64 (one value may be the full range flag)
    std::size_t certain_ = SIZE_MAX;  // set when one outcome has mass 1
};

KnuthYaoDraw knuth_yao_sample(const std::vector<double>& probabilities, RandomStream& coin);

} // namespace stochlab
