#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

namespace wflo {

/// Bit vector over candidate positions; 1 = turbine present at that index.
class Genome {
 public:
  Genome() = default;
  explicit Genome(std::size_t length) : bits_(length, 0) {}

  std::size_t size() const { return bits_.size(); }
  bool test(std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool value) { bits_[i] = value ? 1 : 0; }
  void flip(std::size_t i) { bits_[i] ^= 1; }

  /// Number of active turbines.
  std::size_t count() const {
    return std::accumulate(bits_.begin(), bits_.end(), std::size_t{0});
  }

  std::vector<std::uint32_t> active_indices() const {
    std::vector<std::uint32_t> out;
    out.reserve(bits_.size());
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) out.push_back(static_cast<std::uint32_t>(i));
    return out;
  }

  /// Positions that differ between two genomes of equal length.
  std::size_t hamming_distance(const Genome& other) const {
    std::size_t d = 0;
    for (std::size_t i = 0; i < bits_.size(); ++i) d += bits_[i] != other.bits_[i];
    return d;
  }

  friend bool operator==(const Genome&, const Genome&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace wflo
