#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "candy/compositions.hpp"
#include "candy/configuration.hpp"
#include "candy/dynamics.hpp"
#include "candy/trajectory.hpp"

namespace candy {

inline constexpr std::size_t kDefaultWitnessLimit = 16;

struct SweepOptions {
  bool canonical_only = false;
  std::uint64_t max_rounds = kDefaultMaxRounds;
  unsigned parallelism = 1;
  std::size_t witness_limit = kDefaultWitnessLimit;
};

// Runs analyze over every composition of c into n parts, split into
// contiguous rank ranges, one per worker. Each worker folds its summaries into
// an Acc built by make_acc(); the partial results are merged in rank order, so
// the outcome does not depend on the worker count as long as Acc::merge is
// associative.
//
// Acc must provide add(const TrajectorySummary&) and merge(Acc&&).
template <typename Acc, typename MakeAcc>
Acc fold_trajectories(std::uint64_t n, std::uint64_t c, const SweepOptions& options,
                      MakeAcc&& make_acc) {
  validate_family(n, c);
  if (options.max_rounds == 0) throw InvalidInput("max_rounds must be >= 1");
  const std::uint64_t total = composition_count(n, c);
  const std::uint64_t workers =
      std::clamp<std::uint64_t>(options.parallelism == 0 ? 1 : options.parallelism, 1, total);

  struct Slot {
    std::optional<Acc> acc;
    std::exception_ptr error;
  };
  std::vector<Slot> slots(workers);

  auto work = [&](std::uint64_t w) {
    const auto begin = static_cast<std::uint64_t>(static_cast<unsigned __int128>(total) * w / workers);
    const auto end =
        static_cast<std::uint64_t>(static_cast<unsigned __int128>(total) * (w + 1) / workers);
    Slot& slot = slots[w];
    try {
      Acc acc = make_acc();
      std::vector<Count> cur = unrank_composition(n, c, begin).vector();
      for (std::uint64_t r = begin; r < end; ++r) {
        if (!options.canonical_only || is_canonical(cur)) {
          const Configuration x = Configuration::trusted(cur, c);
          acc.add(analyze(x, options.max_rounds));
        }
        if (r + 1 < end) next_composition(cur);
      }
      slot.acc.emplace(std::move(acc));
    } catch (...) {
      slot.error = std::current_exception();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  // The lowest-ranked failure wins so the reported error is deterministic too.
  for (Slot& slot : slots) {
    if (slot.error) std::rethrow_exception(slot.error);
  }
  Acc result = std::move(*slots[0].acc);
  for (std::size_t w = 1; w < slots.size(); ++w) result.merge(std::move(*slots[w].acc));
  return result;
}

struct SweepReport {
  std::uint64_t n = 0;
  std::uint64_t c = 0;
  bool canonical_mode = false;
  std::uint64_t total_enumerated = 0;
  std::map<Outcome, std::uint64_t> counts_by_outcome{
      {Outcome::Frozen, 0}, {Outcome::ActiveFixed, 0}, {Outcome::Periodic, 0}};
  std::uint64_t max_transient = 0;
  std::optional<Configuration> max_transient_witness;
  std::map<std::uint64_t, std::uint64_t> period_histogram;
  std::vector<Configuration> periodic_witnesses;  // ascending, at most witness_limit
  std::size_t witness_limit = kDefaultWitnessLimit;

  std::uint64_t periodic() const { return counts_by_outcome.at(Outcome::Periodic); }

  void add(const TrajectorySummary& s) {
    ++total_enumerated;
    ++counts_by_outcome[s.outcome];
    ++period_histogram[s.period];
    if (!max_transient_witness || s.transient > max_transient ||
        (s.transient == max_transient && s.initial < *max_transient_witness)) {
      max_transient = s.transient;
      max_transient_witness = s.initial;
    }
    if (s.period >= 2) {
      if (periodic_witnesses.size() < witness_limit) {
        periodic_witnesses.push_back(s.initial);
      } else if (witness_limit > 0 && s.initial < periodic_witnesses.back()) {
        periodic_witnesses.back() = s.initial;
      }
      std::sort(periodic_witnesses.begin(), periodic_witnesses.end());
    }
  }

  void merge(SweepReport&& other) {
    total_enumerated += other.total_enumerated;
    for (const auto& [k, v] : other.counts_by_outcome) counts_by_outcome[k] += v;
    for (const auto& [k, v] : other.period_histogram) period_histogram[k] += v;
    if (other.max_transient_witness &&
        (!max_transient_witness || other.max_transient > max_transient ||
         (other.max_transient == max_transient &&
          *other.max_transient_witness < *max_transient_witness))) {
      max_transient = other.max_transient;
      max_transient_witness = std::move(other.max_transient_witness);
    }
    periodic_witnesses.insert(periodic_witnesses.end(),
                              std::make_move_iterator(other.periodic_witnesses.begin()),
                              std::make_move_iterator(other.periodic_witnesses.end()));
    std::sort(periodic_witnesses.begin(), periodic_witnesses.end());
    if (periodic_witnesses.size() > witness_limit) {
      periodic_witnesses.erase(periodic_witnesses.begin() + static_cast<std::ptrdiff_t>(witness_limit),
                               periodic_witnesses.end());
    }
  }
};

inline SweepReport sweep(std::uint64_t n, std::uint64_t c, const SweepOptions& options = {}) {
  return fold_trajectories<SweepReport>(n, c, options, [&] {
    SweepReport r;
    r.n = n;
    r.c = c;
    r.canonical_mode = options.canonical_only;
    r.witness_limit = options.witness_limit;
    return r;
  });
}

// ---------------------------------------------------------------------------
// Claim verification

enum class Claim { Theorem3nMinus2, SubcriticalTermination, EndgameShape };

inline constexpr std::string_view to_string(Claim c) noexcept {
  switch (c) {
    case Claim::Theorem3nMinus2: return "theorem_3n_minus_2";
    case Claim::SubcriticalTermination: return "subcritical_termination";
    case Claim::EndgameShape: return "endgame_shape";
  }
  return "?";
}

struct Verdict {
  Claim claim = Claim::Theorem3nMinus2;
  std::uint64_t n = 0;
  std::uint64_t c = 0;
  bool passed = true;
  std::optional<TrajectorySummary> counterexample;
};

namespace detail {

// Keeps the lexicographically least summary that fails a predicate.
template <typename Pred>
struct FirstFailure {
  Pred ok;
  std::optional<TrajectorySummary> failure;

  void add(const TrajectorySummary& s) {
    if (ok(s)) return;
    if (!failure || s.initial < failure->initial) failure = s;
  }
  void merge(FirstFailure&& other) {
    if (other.failure && (!failure || other.failure->initial < failure->initial)) {
      failure = std::move(other.failure);
    }
  }
};

template <typename Pred>
Verdict check_claim(Claim claim, std::uint64_t n, std::uint64_t c, const SweepOptions& options,
                    Pred ok) {
  auto acc = fold_trajectories<FirstFailure<Pred>>(n, c, options,
                                                   [&] { return FirstFailure<Pred>{ok, {}}; });
  return Verdict{claim, n, c, !acc.failure.has_value(), std::move(acc.failure)};
}

}  // namespace detail

// Every distribution of c >= 3n-2 candies reaches a fixed point.
inline Verdict verify_theorem(std::uint64_t n, std::uint64_t c, const SweepOptions& options = {}) {
  validate_family(n, c);
  if (c + 2 < 3 * n) {
    throw InvalidInput("theorem hypothesis c >= 3n-2 not met: n = " + std::to_string(n) +
                       ", c = " + std::to_string(c));
  }
  return detail::check_claim(Claim::Theorem3nMinus2, n, c, options,
                             [](const TrajectorySummary& s) { return s.period == 1; });
}

// Every distribution of c < n candies ends with nobody able to pass.
inline Verdict verify_subcritical(std::uint64_t n, std::uint64_t c,
                                  const SweepOptions& options = {}) {
  validate_family(n, c);
  if (c >= n) {
    throw InvalidInput("sub-critical hypothesis c < n not met: n = " + std::to_string(n) +
                       ", c = " + std::to_string(c));
  }
  return detail::check_claim(Claim::SubcriticalTermination, n, c, options,
                             [](const TrajectorySummary& s) { return s.outcome == Outcome::Frozen; });
}

// Sorted attractor a fixed point with no abundant pile must have at total c,
// for c in {3n-2, 3n-1, 3n}: all 3s with (3n - c) piles lowered to 2.
inline std::vector<Count> endgame_multiset(std::uint64_t n, std::uint64_t c) {
  if (n < kMinStudents || c > 3 * n || c + 2 < 3 * n) {
    throw InvalidInput("endgame shapes are defined for c in {3n-2, 3n-1, 3n}");
  }
  std::vector<Count> shape(n, 3);
  for (std::uint64_t k = 0; k < 3 * n - c; ++k) shape[k] = 2;
  return shape;
}

// Attractors with an abundant pile are exempt; every other attractor must be a
// fixed point with the endgame multiset.
inline Verdict verify_endgame_shape(std::uint64_t n, std::uint64_t c,
                                    const SweepOptions& options = {}) {
  validate_family(n, c);
  const std::vector<Count> expected = endgame_multiset(n, c);
  return detail::check_claim(Claim::EndgameShape, n, c, options,
                             [expected](const TrajectorySummary& s) {
                               if (s.period != 1) return false;
                               std::vector<Count> a = s.attractor_canonical.vector();
                               if (abundance(a).m > 0) return true;
                               std::sort(a.begin(), a.end());
                               return a == expected;
                             });
}

// Checks c = 3n, 3n-1, 3n-2 and reports the first failing total, or c = 3n
// when all three pass.
inline Verdict verify_endgame_shapes(std::uint64_t n, const SweepOptions& options = {}) {
  if (n < kMinStudents) throw InvalidInput("too few students: need n >= 3");
  for (std::uint64_t c : {3 * n, 3 * n - 1, 3 * n - 2}) {
    Verdict v = verify_endgame_shape(n, c, options);
    if (!v.passed) return v;
  }
  return Verdict{Claim::EndgameShape, n, 3 * n, true, std::nullopt};
}

// ---------------------------------------------------------------------------
// Tightness scan over a range of totals

struct ScanRecord {
  std::uint64_t n = 0;
  std::uint64_t c = 0;
  bool all_stabilize = true;
  std::optional<Configuration> witness;  // least periodic starting state
};

inline std::vector<ScanRecord> tightness_scan(std::uint64_t n, std::uint64_t c_min,
                                              std::uint64_t c_max,
                                              const SweepOptions& options = {}) {
  if (n < kMinStudents) throw InvalidInput("too few students: need n >= 3");
  if (c_min == 0 || c_min > c_max) throw InvalidInput("scan needs 1 <= c_min <= c_max");
  SweepOptions o = options;
  o.witness_limit = std::max<std::size_t>(o.witness_limit, 1);
  std::vector<ScanRecord> out;
  for (std::uint64_t c = c_min; c <= c_max; ++c) {
    const SweepReport r = sweep(n, c, o);
    ScanRecord rec{n, c, r.periodic() == 0, std::nullopt};
    if (!r.periodic_witnesses.empty()) rec.witness = r.periodic_witnesses.front();
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace candy
