#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "candy/errors.hpp"

namespace candy {

using Count = std::uint64_t;

// Largest total accepted at construction; keeps every intermediate count far
// from the 64-bit limit.
inline constexpr Count kMaxTotal = Count{1} << 32;

// Smallest student count for which the game is defined.
inline constexpr std::size_t kMinStudents = 3;

// Candy counts around a circle of n >= 3 students with total c >= 1.
// Student i has neighbors (i-1) mod n and (i+1) mod n. Immutable once built.
class Configuration {
 public:
  static Configuration from_counts(std::span<const Count> counts) {
    if (counts.size() < kMinStudents) {
      throw InvalidInput("too few students: need n >= 3, got n = " + std::to_string(counts.size()));
    }
    Count total = 0;
    for (Count v : counts) {
      if (v > kMaxTotal || total + v > kMaxTotal) {
        throw InvalidInput("total candy exceeds the 2^32 cap");
      }
      total += v;
    }
    if (total == 0) {
      throw InvalidInput("no candy: need c >= 1");
    }
    return Configuration(std::vector<Count>(counts.begin(), counts.end()), total);
  }

  static Configuration from_counts(std::initializer_list<Count> counts) {
    return from_counts(std::span<const Count>(counts.begin(), counts.size()));
  }

  // Skips validation. The caller guarantees the invariants (used for states
  // derived from an already valid configuration).
  static Configuration trusted(std::vector<Count> counts, Count total) {
    return Configuration(std::move(counts), total);
  }

  std::size_t n() const noexcept { return counts_.size(); }
  Count c() const noexcept { return total_; }
  std::span<const Count> counts() const noexcept { return counts_; }
  Count operator[](std::size_t i) const noexcept { return counts_[i]; }

  const std::vector<Count>& vector() const noexcept { return counts_; }

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.counts_ == b.counts_;
  }
  // Lexicographic over the count sequence.
  friend std::strong_ordering operator<=>(const Configuration& a, const Configuration& b) {
    return a.counts_ <=> b.counts_;
  }

 private:
  Configuration(std::vector<Count> counts, Count total)
      : counts_(std::move(counts)), total_(total) {}

  std::vector<Count> counts_;
  Count total_ = 0;
};

inline std::string to_string(std::span<const Count> counts) {
  std::string out = "[";
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(counts[i]);
  }
  out += ']';
  return out;
}

inline std::string to_string(const Configuration& x) { return to_string(x.counts()); }

inline std::ostream& operator<<(std::ostream& os, const Configuration& x) {
  return os << to_string(x);
}

}  // namespace candy
