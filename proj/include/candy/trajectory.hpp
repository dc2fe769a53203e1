#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "candy/configuration.hpp"
#include "candy/dynamics.hpp"

namespace candy {

inline constexpr std::uint64_t kDefaultMaxRounds = 1'000'000;

enum class Outcome { Frozen, ActiveFixed, Periodic };

inline constexpr std::string_view to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::Frozen: return "Frozen";
    case Outcome::ActiveFixed: return "ActiveFixed";
    case Outcome::Periodic: return "Periodic";
  }
  return "?";
}

struct TrajectorySummary {
  Configuration initial;
  std::uint64_t transient = 0;  // index of the first state that recurs
  std::uint64_t period = 1;
  Configuration attractor_canonical;  // least canonical form among the cycle states
  std::uint64_t rounds_computed = 0;
  std::uint64_t abundant_fix_round = 0;
  Outcome outcome = Outcome::Frozen;
};

struct LemmaOneViolation {
  std::uint64_t round = 0;
  std::string description;
};

struct LemmaOneReport {
  bool holds = true;
  std::uint64_t fix_round = 0;
  std::vector<std::uint64_t> set_shrink_rounds;
  std::optional<LemmaOneViolation> violation;
};

namespace detail {

inline std::uint64_t hash_counts(std::span<const Count> counts) noexcept {
  // FNV-1a over 64-bit words with a final avalanche.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Count v : counts) {
    h ^= v;
    h *= 0x100000001b3ULL;
  }
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  return h;
}

// Rounds 0..rounds_computed-1 stored back to back, plus where the cycle starts.
struct Trajectory {
  std::size_t n = 0;
  std::vector<Count> states;
  std::uint64_t transient = 0;
  std::uint64_t period = 1;

  std::uint64_t length() const noexcept { return states.size() / n; }

  // Round t of the trajectory, for any t >= 0 (wraps through the cycle).
  std::span<const Count> at(std::uint64_t t) const noexcept {
    if (t >= length()) t = transient + (t - transient) % period;
    return std::span<const Count>(states).subspan(t * n, n);
  }
};

inline Trajectory run(const Configuration& x, std::uint64_t max_rounds) {
  if (max_rounds == 0) throw InvalidInput("max_rounds must be >= 1");
  const std::size_t n = x.n();
  Trajectory tr;
  tr.n = n;
  tr.states.assign(x.counts().begin(), x.counts().end());

  std::unordered_multimap<std::uint64_t, std::uint64_t> seen;
  std::vector<Count> next(n);
  for (std::uint64_t t = 0;; ++t) {
    const std::span<const Count> cur(tr.states.data() + t * n, n);
    const std::uint64_t h = hash_counts(cur);
    auto [lo, hi] = seen.equal_range(h);
    for (auto it = lo; it != hi; ++it) {
      const std::span<const Count> old(tr.states.data() + it->second * n, n);
      if (std::equal(old.begin(), old.end(), cur.begin())) {
        tr.transient = it->second;
        tr.period = t - it->second;
        tr.states.resize(t * n);
        return tr;
      }
    }
    if (t >= max_rounds) {
      throw CapExceeded("no state recurred within " + std::to_string(max_rounds) +
                        " rounds starting from " + to_string(x),
                        x.vector());
    }
    // A fixed point recurs on the very next round.
    if (is_fixed_point(cur)) {
      tr.transient = t;
      tr.period = 1;
      return tr;
    }
    seen.emplace(h, t);
    step_into(cur, next);
    tr.states.insert(tr.states.end(), next.begin(), next.end());
  }
}

// Abundant piles agree in position and size.
inline bool same_abundant_piles(std::span<const Count> a, std::span<const Count> b) noexcept {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool ra = a[i] >= kAbundant;
    const bool rb = b[i] >= kAbundant;
    if (ra != rb) return false;
    if (ra && a[i] != b[i]) return false;
  }
  return true;
}

// Earliest round from which the abundant piles never change, scanned over the
// recorded rounds plus one more pass through the cycle.
inline std::uint64_t abundant_fix_round(const Trajectory& tr) {
  std::uint64_t r = tr.length() + tr.period - 1;
  while (r > 0 && same_abundant_piles(tr.at(r - 1), tr.at(r))) --r;
  return r;
}

}  // namespace detail

inline TrajectorySummary summarize(const Configuration& x, const detail::Trajectory& tr) {
  // Least canonical form over the cycle, so that every rotation or reflection
  // of x reports the same attractor.
  std::vector<Count> least = canonical_counts(tr.at(tr.transient));
  for (std::uint64_t t = tr.transient + 1; t < tr.transient + tr.period; ++t) {
    std::vector<Count> canon = canonical_counts(tr.at(t));
    if (canon < least) least = std::move(canon);
  }
  Outcome outcome = Outcome::Periodic;
  if (tr.period == 1) {
    outcome = least[0] >= kPassThreshold ? Outcome::ActiveFixed : Outcome::Frozen;
  }
  return TrajectorySummary{
      .initial = x,
      .transient = tr.transient,
      .period = tr.period,
      .attractor_canonical = Configuration::trusted(std::move(least), x.c()),
      .rounds_computed = tr.length(),
      .abundant_fix_round = detail::abundant_fix_round(tr),
      .outcome = outcome,
  };
}

// Iterates the rule until a state repeats. Throws CapExceeded if none does
// within max_rounds rounds.
inline TrajectorySummary analyze(const Configuration& x,
                                 std::uint64_t max_rounds = kDefaultMaxRounds) {
  return summarize(x, detail::run(x, max_rounds));
}

// Audits the abundant piles along the trajectory of x: the abundant set may
// only shrink, an abundant pile may never grow, and from some round on both
// stay fixed through the attractor cycle.
inline LemmaOneReport verify_lemma_one(const Configuration& x,
                                       std::uint64_t max_rounds = kDefaultMaxRounds) {
  const detail::Trajectory tr = detail::run(x, max_rounds);
  LemmaOneReport report;
  const std::uint64_t end = tr.length() + tr.period;
  for (std::uint64_t t = 0; t + 1 < end; ++t) {
    std::span<const Count> a = tr.at(t);
    std::span<const Count> b = tr.at(t + 1);
    bool shrank = false;
    for (std::size_t i = 0; i < tr.n && !report.violation; ++i) {
      if (b[i] >= kAbundant && a[i] < kAbundant) {
        report.violation = LemmaOneViolation{
            t + 1, "student " + std::to_string(i) + " became abundant (" + std::to_string(a[i]) +
                       " -> " + std::to_string(b[i]) + ")"};
      } else if (a[i] >= kAbundant && b[i] > a[i]) {
        report.violation = LemmaOneViolation{
            t + 1, "abundant pile of student " + std::to_string(i) + " grew (" +
                       std::to_string(a[i]) + " -> " + std::to_string(b[i]) + ")"};
      }
      if (a[i] >= kAbundant && b[i] < kAbundant) shrank = true;
    }
    if (report.violation) break;
    if (shrank && t + 1 < tr.length()) report.set_shrink_rounds.push_back(t + 1);
  }
  report.fix_round = detail::abundant_fix_round(tr);
  if (!report.violation && report.fix_round > tr.transient + tr.period) {
    report.violation = LemmaOneViolation{
        report.fix_round, "abundant piles keep changing on the attractor cycle"};
  }
  report.holds = !report.violation.has_value();
  return report;
}

// x, step(x), ..., step^rounds(x).
inline std::vector<Configuration> trace(const Configuration& x, std::uint64_t rounds) {
  std::vector<Configuration> out;
  out.reserve(rounds + 1);
  out.push_back(x);
  for (std::uint64_t t = 0; t < rounds; ++t) out.push_back(step(out.back()));
  return out;
}

}  // namespace candy
