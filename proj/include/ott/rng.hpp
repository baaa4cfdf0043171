#pragma once

#include <cstdint>
#include <random>

namespace ott {

/// SplitMix64 finalizer. Used to derive independent streams from a master seed.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seeded random source passed explicitly to every stochastic operation.
///
/// Stream split rule: the generator for stream `i` under master seed `s` is
/// seeded with splitmix64(s ^ splitmix64(i)). Streams are therefore a pure
/// function of (s, i) and independent of evaluation order, which keeps
/// parallel scans and batch generation reproducible.
class Rng {
 public:
  using Engine = std::mt19937_64;

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  static std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index));
  }
  static Rng stream(std::uint64_t master, std::uint64_t index) {
    return Rng(stream_seed(master, index));
  }

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next() { return engine_(); }
  int bit() { return static_cast<int>(engine_() >> 63); }
  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  double normal() { return normal_(engine_); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }

  Engine& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  Engine engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace ott
