#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace swvp {

// Deterministic pseudo-random source. All draws are hand-specified on top of
// a raw 64-bit generator so that sequences are reproducible across standard
// library implementations (std::shuffle and the distribution classes are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next() {
    // xorshift* variant; period 2^64-1, plenty for desk-scale experiments.
    std::uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545f4914f6cdd1dull;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound). Modulo bias is negligible for the small
  // bounds used here (alphabets, permutations, dataset sizes).
  int uniform_int(int bound) {
    if (bound <= 0) throw std::invalid_argument("Rng::uniform_int: bound must be positive");
    return static_cast<int>(next() % static_cast<std::uint64_t>(bound));
  }

  // Index drawn from a (row-stochastic) probability vector by CDF walk.
  int categorical(const std::vector<double>& probs) {
    double u = uniform01();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
      acc += probs[i];
      if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(probs.size()) - 1;
  }

  // Fisher-Yates.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (int i = static_cast<int>(items.size()) - 1; i > 0; --i) {
      int j = uniform_int(i + 1);
      std::swap(items[i], items[static_cast<std::size_t>(j)]);
    }
  }

 private:
  std::uint64_t state_;
};

// Stable seed derivation for independent streams (per replica, per epoch, ...).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  return mix(mix(base ^ mix(a)) ^ mix(b ^ 0x5851f42d4c957f2dull));
}

}  // namespace swvp
