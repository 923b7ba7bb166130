#pragma once

#include <cstdint>

namespace stochlab {

struct Seed {
    std::uint64_t value = 0;
};

// Counter-based stream: the k-th draw is a pure function of (key, k), so a
// stream can be replayed, copied, or split without touching global state.
// The output function is the splitmix64 finalizer over a Weyl sequence
// keyed by `key`. Identical (seed, counter) give bit-identical draws.
//
// A stream must not be shared between concurrent callers; derive one child
// per replica with split().
class RandomStream {
  public:
    RandomStream() = default;
    explicit RandomStream(Seed seed) : key_(mix(seed.value ^ 0x6A09E667F3BCC909ull)) {}

    std::uint64_t next_u64() {
        std::uint64_t z = key_ + counter_ * 0x9E3779B97F4A7C15ull;
        ++counter_;
        return mix(z);
    }

    // [0,1) with 53 random bits.
    double next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // (0,1]; safe as a log() argument.
    double next_uniform_pos() { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

    bool next_coin() { return (next_u64() >> 63) != 0; }

    // Uniform integer in [0, n), n >= 1. Rejection on the top range keeps it unbiased.
    std::uint64_t next_below(std::uint64_t n) {
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // Child streams are keyed by a hash of (parent key, index); distinct
    // indices give sequences that are disjoint by construction. The parent
    // is not advanced.
    RandomStream split(std::uint64_t index) const {
        RandomStream child;
        child.key_ = mix(mix(key_ ^ 0xD2B74407B1CE6E93ull) + (index + 1) * 0x8CB92BA72F3D8DD7ull);
        return child;
    }

    std::uint64_t draw_count() const { return counter_; }
    std::uint64_t state_key() const { return key_; }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

} // namespace stochlab
