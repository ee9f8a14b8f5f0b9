#pragma once

#include <cstdint>

#include "pcsf/rational.hpp"

namespace pcsf {

// splitmix64: deterministic across platforms, unlike std:: distributions.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound), bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        // Modulo rejection keeps the draw unbiased.
        std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % bound;
    }

    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

    // Small positive rational with numerator in [1, max_num] and denominator in [1, max_den].
    Rat small_positive(long max_num, long max_den) {
        return rat_frac(range(1, max_num), range(1, max_den));
    }

  private:
    std::uint64_t state_;
};

}  // namespace pcsf
