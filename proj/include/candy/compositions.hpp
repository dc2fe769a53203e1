#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "candy/configuration.hpp"
#include "candy/dynamics.hpp"
#include "candy/errors.hpp"

namespace candy {

// C(c+n-1, n-1): the number of ways to place c candies among n students.
// Throws Overflow when the value does not fit in 64 bits.
inline std::uint64_t composition_count(std::uint64_t n, std::uint64_t c) {
  if (n == 0) throw InvalidInput("composition_count needs n >= 1");
  // C(c+k, k) for k = 1..n-1; every intermediate is itself a binomial no
  // larger than the result, so checking each step suffices.
  unsigned __int128 value = 1;
  for (std::uint64_t k = 1; k < n; ++k) {
    value = value * (static_cast<unsigned __int128>(c) + k) / k;
    if (value > UINT64_MAX) {
      throw Overflow("C(" + std::to_string(c + n - 1) + ", " + std::to_string(n - 1) +
                     ") does not fit in 64 bits");
    }
  }
  return static_cast<std::uint64_t>(value);
}

inline void validate_family(std::uint64_t n, std::uint64_t c) {
  if (n < kMinStudents) throw InvalidInput("too few students: need n >= 3, got n = " + std::to_string(n));
  if (c == 0) throw InvalidInput("no candy: need c >= 1");
  if (c > kMaxTotal) throw InvalidInput("total candy exceeds the 2^32 cap");
}

// Advances `counts` to its lexicographic successor among sequences with the
// same length and sum. Returns false (leaving counts untouched) at the last one.
inline bool next_composition(std::span<Count> counts) noexcept {
  const std::size_t n = counts.size();
  std::size_t k = n;
  for (std::size_t i = n; i-- > 1;) {
    if (counts[i] != 0) {
      k = i;
      break;
    }
  }
  if (k == n) return false;
  const Count tail = counts[k];
  counts[k - 1] += 1;
  counts[k] = 0;
  counts[n - 1] = tail - 1;
  return true;
}

inline std::vector<Count> first_composition(std::size_t n, Count c) {
  std::vector<Count> v(n, 0);
  v[n - 1] = c;
  return v;
}

// Position of `counts` in the lexicographic order of all compositions with
// its length and sum.
inline std::uint64_t rank_composition(std::span<const Count> counts) {
  Count remaining = 0;
  for (Count v : counts) remaining += v;
  std::uint64_t rank = 0;
  const std::size_t n = counts.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::uint64_t parts_after = n - i - 1;
    for (Count v = 0; v < counts[i]; ++v) rank += composition_count(parts_after, remaining - v);
    remaining -= counts[i];
  }
  return rank;
}

inline Configuration unrank_composition(std::uint64_t n, std::uint64_t c, std::uint64_t index) {
  validate_family(n, c);
  const std::uint64_t total = composition_count(n, c);
  if (index >= total) {
    throw IndexOutOfRange("rank " + std::to_string(index) + " >= " + std::to_string(total) +
                          " compositions of " + std::to_string(c) + " into " + std::to_string(n));
  }
  std::vector<Count> out(n, 0);
  Count remaining = c;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::uint64_t parts_after = n - i - 1;
    Count v = 0;
    for (;; ++v) {
      const std::uint64_t block = composition_count(parts_after, remaining - v);
      if (index < block) break;
      index -= block;
    }
    out[i] = v;
    remaining -= v;
  }
  out[n - 1] = remaining;
  return Configuration::trusted(std::move(out), c);
}

// Calls visit(std::span<const Count>) for every composition of c into n parts
// in lexicographic order; with canonical_only, only for dihedral canonical
// forms. Stops early if visit returns false.
template <typename Visit>
void for_each_composition(std::uint64_t n, std::uint64_t c, bool canonical_only, Visit&& visit) {
  validate_family(n, c);
  std::vector<Count> cur = first_composition(n, c);
  do {
    if (canonical_only && !is_canonical(cur)) continue;
    if (!visit(std::span<const Count>(cur))) return;
  } while (next_composition(cur));
}

inline std::vector<Configuration> enumerate_compositions(std::uint64_t n, std::uint64_t c,
                                                         bool canonical_only) {
  std::vector<Configuration> out;
  for_each_composition(n, c, canonical_only, [&](std::span<const Count> v) {
    out.push_back(Configuration::trusted(std::vector<Count>(v.begin(), v.end()), c));
    return true;
  });
  return out;
}

}  // namespace candy
