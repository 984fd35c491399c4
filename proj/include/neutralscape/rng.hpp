#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>

namespace neutralscape {

/// SplitMix64 finalizer. Used as a stateless hash for seed derivation and
/// for counter-based instance generation.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// 64-bit FNV-1a over the bytes of a string (portable, unlike std::hash).
std::uint64_t fnv1a(std::string_view text) noexcept;

/// Deterministic child seed for a (tag, a, b) task key under `base`.
std::uint64_t derive_seed(std::uint64_t base, std::string_view tag, std::uint64_t a = 0,
                          std::uint64_t b = 0) noexcept;

/// Random stream used by every stochastic operation.
///
/// The engine is std::mt19937_64 (bit-exact across standard libraries); the
/// bounded draws and the shuffle are implemented here because the standard
/// distributions are not portable across library vendors.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  /// Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <class RandomIt>
  void shuffle(RandomIt first, RandomIt last) {
    const auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) {
      const auto j = below(i);
      using std::swap;
      swap(first[i - 1], first[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Taillard's portable linear congruential generator (a = 16807, m = 2^31 - 1,
/// Schrage decomposition). Reproduces the published benchmark matrices from
/// their time seeds.
class TaillardLcg {
 public:
  explicit TaillardLcg(std::int64_t seed) : seed_(seed) {}

  /// Integer uniform on [low, high].
  std::int64_t uniform(std::int64_t low, std::int64_t high);

  std::int64_t state() const noexcept { return seed_; }

 private:
  std::int64_t seed_;
};

}  // namespace neutralscape
