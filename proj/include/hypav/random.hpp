#pragma once

// Seeded, platform-independent randomness.
//
// Generator contract (fixed so identical seeds give identical output on every
// platform):
//   * engine: std::mt19937_64, whose output sequence the C++ standard pins down;
//   * seeding: the engine is seeded with splitmix64(seed ^ splitmix64(stream)),
//     so stream s of seed x is an independent, reproducible sub-stream;
//   * bounded integers: rejection sampling on raw 64-bit outputs (no
//     std::uniform_int_distribution, whose algorithm is implementation-defined);
//   * Bernoulli(p/q): below(q) < p, exact for rational probabilities.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hypav/error.hpp"
#include "hypav/rational.hpp"

namespace hypav {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31U);
}

// Probability p/q with both parts in machine range, validated to lie in [0,1].
struct Probability {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Probability from(const Rational& value) {
    require(value >= 0 && value <= 1, "probability " + to_string(value) + " is outside [0,1]");
    const BigInt p = numerator_of(value);
    const BigInt q = denominator_of(value);
    require(q <= BigInt(1) << 62, "probability denominator too large: " + to_string(value));
    return {p.convert_to<std::uint64_t>(), q.convert_to<std::uint64_t>()};
  }
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : engine_(splitmix64(seed ^ splitmix64(stream))) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t draw = 0;
    do {
      draw = engine_();
    } while (draw >= limit);
    return draw % bound;
  }

  bool bernoulli(const Probability& p) {
    if (p.num == 0) return false;
    if (p.num >= p.den) return true;
    return below(p.den) < p.num;
  }

  // Uniformly random size-r subset of {0..n-1}, returned sorted.
  std::vector<int> subset(int n, int r) {
    require(r >= 0 && r <= n, "subset size " + std::to_string(r) + " exceeds " + std::to_string(n));
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < r; ++i) {
      const auto j = static_cast<std::size_t>(i) + below(static_cast<std::uint64_t>(n - i));
      std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
    }
    pool.resize(static_cast<std::size_t>(r));
    std::sort(pool.begin(), pool.end());
    return pool;
  }

  // Fisher-Yates shuffle of 0..n-1.
  std::vector<int> permutation(int n) {
    std::vector<int> values(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) {
      std::swap(values[static_cast<std::size_t>(i)], values[below(static_cast<std::uint64_t>(i) + 1)]);
    }
    return values;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hypav
