#include "neutralscape/rng.hpp"

namespace neutralscape {

std::uint64_t fnv1a(std::string_view text) noexcept {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::uint64_t derive_seed(std::uint64_t base, std::string_view tag, std::uint64_t a,
                          std::uint64_t b) noexcept {
  std::uint64_t h = splitmix64(fnv1a(tag));
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ (b + 0x632be59bd9b4e019ULL));
  return base ^ h;
}

std::uint64_t Rng::below(std::uint64_t n) {
  // Lemire's nearly-divisionless rejection method.
  std::uint64_t x = engine_();
  auto m = static_cast<unsigned __int128>(x) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      x = engine_();
      m = static_cast<unsigned __int128>(x) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::int64_t TaillardLcg::uniform(std::int64_t low, std::int64_t high) {
  constexpr std::int64_t m = 2147483647, a = 16807, b = 127773, c = 2836;
  const std::int64_t k = seed_ / b;
  seed_ = a * (seed_ % b) - k * c;
  if (seed_ < 0) seed_ += m;
  const double value01 = static_cast<double>(seed_) / static_cast<double>(m);
  return low + static_cast<std::int64_t>(value01 * static_cast<double>(high - low + 1));
}

}  // namespace neutralscape
