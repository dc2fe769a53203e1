#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "candy/configuration.hpp"

namespace candy {

// Pile size at which a student counts as abundant.
inline constexpr Count kAbundant = 4;

// Pile size needed to pass candy in a round.
inline constexpr Count kPassThreshold = 2;

// One synchronous round on raw counts. Every give decision reads `in`, so a
// student who receives candy this round cannot pass it on until the next one.
// `out` must have the same size as `in` and must not alias it.
inline void step_into(std::span<const Count> in, std::span<Count> out) noexcept {
  const std::size_t n = in.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t left = i == 0 ? n - 1 : i - 1;
    const std::size_t right = i + 1 == n ? 0 : i + 1;
    Count v = in[i];
    if (v >= kPassThreshold) v -= 2;
    v += static_cast<Count>(in[left] >= kPassThreshold);
    v += static_cast<Count>(in[right] >= kPassThreshold);
    out[i] = v;
  }
}

inline Configuration step(const Configuration& x) {
  std::vector<Count> next(x.n());
  step_into(x.counts(), next);
  return Configuration::trusted(std::move(next), x.c());
}

// A configuration is fixed under the rule exactly when everybody passes (each
// student gives two and gets two) or nobody does. Mixed states always move: a
// passer next to a non-passer loses more than it gains.
inline bool is_fixed_point(std::span<const Count> counts) noexcept {
  const bool all_pass = std::all_of(counts.begin(), counts.end(),
                                    [](Count v) { return v >= kPassThreshold; });
  if (all_pass) return true;
  return std::all_of(counts.begin(), counts.end(),
                     [](Count v) { return v < kPassThreshold; });
}

inline bool is_fixed_point(const Configuration& x) noexcept { return is_fixed_point(x.counts()); }

struct AbundanceView {
  std::vector<std::size_t> abundant_indices;  // ascending
  std::size_t m = 0;

  friend bool operator==(const AbundanceView&, const AbundanceView&) = default;
};

inline AbundanceView abundance(std::span<const Count> counts) {
  AbundanceView view;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] >= kAbundant) view.abundant_indices.push_back(i);
  }
  view.m = view.abundant_indices.size();
  return view;
}

inline AbundanceView abundance(const Configuration& x) { return abundance(x.counts()); }

// rotate(x, r)[i] == x[(i + r) mod n]
inline Configuration rotate(const Configuration& x, std::size_t shift) {
  std::vector<Count> v = x.vector();
  std::rotate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(shift % v.size()), v.end());
  return Configuration::trusted(std::move(v), x.c());
}

inline Configuration reverse(const Configuration& x) {
  std::vector<Count> v = x.vector();
  std::reverse(v.begin(), v.end());
  return Configuration::trusted(std::move(v), x.c());
}

namespace detail {

// Compares the dihedral image starting at `start` (walking forward, or
// backward when `mirrored`) against `best`. Returns <0, 0, >0 like memcmp.
inline int compare_image(std::span<const Count> counts, std::size_t start, bool mirrored,
                         std::span<const Count> best) noexcept {
  const std::size_t n = counts.size();
  std::size_t idx = start;
  for (std::size_t k = 0; k < n; ++k) {
    const Count v = counts[idx];
    if (v != best[k]) return v < best[k] ? -1 : 1;
    if (mirrored) {
      idx = idx == 0 ? n - 1 : idx - 1;
    } else {
      idx = idx + 1 == n ? 0 : idx + 1;
    }
  }
  return 0;
}

inline void write_image(std::span<const Count> counts, std::size_t start, bool mirrored,
                        std::span<Count> out) noexcept {
  const std::size_t n = counts.size();
  std::size_t idx = start;
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = counts[idx];
    if (mirrored) {
      idx = idx == 0 ? n - 1 : idx - 1;
    } else {
      idx = idx + 1 == n ? 0 : idx + 1;
    }
  }
}

}  // namespace detail

// Lexicographically least of the 2n rotations and reflections. Brute force,
// O(n^2) comparisons.
inline std::vector<Count> canonical_counts(std::span<const Count> counts) {
  std::vector<Count> best(counts.begin(), counts.end());
  const std::size_t n = counts.size();
  for (int mirrored = 0; mirrored < 2; ++mirrored) {
    for (std::size_t start = 0; start < n; ++start) {
      if (detail::compare_image(counts, start, mirrored != 0, best) < 0) {
        detail::write_image(counts, start, mirrored != 0, best);
      }
    }
  }
  return best;
}

// True when no dihedral image is lexicographically smaller than `counts`.
inline bool is_canonical(std::span<const Count> counts) noexcept {
  const std::size_t n = counts.size();
  for (int mirrored = 0; mirrored < 2; ++mirrored) {
    for (std::size_t start = 0; start < n; ++start) {
      if (detail::compare_image(counts, start, mirrored != 0, counts) < 0) return false;
    }
  }
  return true;
}

inline Configuration canonical_form(const Configuration& x) {
  return Configuration::trusted(canonical_counts(x.counts()), x.c());
}

}  // namespace candy
