#pragma once

#include <cstdint>
#include <random>

namespace equiroute {

// mt19937_64 with hand-rolled mappings so sampled values are identical on
// every platform (std::uniform_*_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // unbiased integer in [0, n), n > 0, by rejection
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t x;
    std::uint64_t r;
    do {
      x = gen_();
      r = x % n;
    } while (x - r > std::uint64_t(0) - n);
    return r;
  }

  // [0, 1) with 53 random bits
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace equiroute
