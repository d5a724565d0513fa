#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace wflo {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace detail

/// Seed for a named substream of a master seed. Substreams are independent,
/// so adding or removing one consumer never perturbs the draws of another.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view name) {
  return detail::splitmix64(master_seed ^ detail::fnv1a(name));
}

/// Deterministic random stream. All randomness in the library flows through
/// these; the draw primitives are fixed here rather than delegated to
/// std::*_distribution so that identical seeds give identical sequences on
/// every platform.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  static RngStream derive(std::uint64_t master_seed, std::string_view name) {
    return RngStream(derive_seed(master_seed, name));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Unbiased integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    for (;;) {
      const std::uint64_t x = next_u64();
      const std::uint64_t r = x % n;
      if (x - r <= ~std::uint64_t{0} - (n - 1)) return r;
    }
  }

  bool coin() { return (next_u64() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace wflo
