#pragma once

#include <cstdint>
#include <vector>

#include "hypercert/rational.hpp"

namespace hypercert {

// Deterministic, platform-independent generator (splitmix64). Every
// randomized operation in the library takes an explicit seed and routes
// through this so runs are reproducible bit for bit.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound). Rejection sampling keeps it unbiased.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw error("next_below(0)");
    std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % bound);
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % bound;
  }

  long next_int(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // Rational with numerator in [-max_num, max_num] and denominator in [1, max_den].
  Rat next_rat(long max_num = 10, long max_den = 4) {
    return rat(next_int(-max_num, max_num), next_int(1, max_den));
  }

  std::vector<Rat> next_rat_vector(int n, long max_num = 10, long max_den = 4) {
    std::vector<Rat> v(n);
    for (auto& x : v) x = next_rat(max_num, max_den);
    return v;
  }

  // Integer-valued rational vector, handy when coefficient growth matters.
  std::vector<Rat> next_int_vector(int n, long lo = -9, long hi = 9) {
    std::vector<Rat> v(n);
    for (auto& x : v) x = rat(next_int(lo, hi));
    return v;
  }

 private:
  std::uint64_t state_;
};

}  // namespace hypercert
