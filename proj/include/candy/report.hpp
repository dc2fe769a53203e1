#pragma once

// Line-delimited records for the command-line tool. Field order is fixed by
// construction (ordered_json keeps insertion order) so identical runs produce
// identical bytes.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "candy/configuration.hpp"
#include "candy/sweep.hpp"
#include "candy/trajectory.hpp"

namespace candy::report {

using Record = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline Record counts_json(std::span<const Count> counts) {
  Record a = Record::array();
  for (Count v : counts) a.push_back(v);
  return a;
}

inline Record counts_json(const Configuration& x) { return counts_json(x.counts()); }

inline Record optional_counts_json(const std::optional<Configuration>& x) {
  return x ? counts_json(*x) : Record(nullptr);
}

inline Record trajectory_record(const TrajectorySummary& s) {
  Record r;
  r["n"] = s.initial.n();
  r["c"] = s.initial.c();
  r["counts"] = counts_json(s.initial);
  r["transient"] = s.transient;
  r["period"] = s.period;
  r["outcome"] = std::string(to_string(s.outcome));
  r["attractor"] = counts_json(s.attractor_canonical);
  r["rounds_computed"] = s.rounds_computed;
  r["abundant_fix_round"] = s.abundant_fix_round;
  return r;
}

inline Record sweep_record(const SweepReport& s) {
  Record r;
  r["n"] = s.n;
  r["c"] = s.c;
  r["canonical_mode"] = s.canonical_mode;
  r["total_enumerated"] = s.total_enumerated;
  Record outcomes;
  for (Outcome o : {Outcome::Frozen, Outcome::ActiveFixed, Outcome::Periodic}) {
    outcomes[std::string(to_string(o))] = s.counts_by_outcome.at(o);
  }
  r["counts_by_outcome"] = outcomes;
  r["max_transient"] = s.max_transient;
  r["max_transient_witness"] = optional_counts_json(s.max_transient_witness);
  Record hist = Record::object();
  for (const auto& [period, count] : s.period_histogram) hist[std::to_string(period)] = count;
  r["period_histogram"] = hist;
  Record witnesses = Record::array();
  for (const Configuration& w : s.periodic_witnesses) witnesses.push_back(counts_json(w));
  r["witnesses"] = witnesses;
  return r;
}

inline Record verdict_record(const Verdict& v) {
  Record r;
  r["claim"] = std::string(to_string(v.claim));
  r["n"] = v.n;
  r["c"] = v.c;
  r["passed"] = v.passed;
  if (v.counterexample) {
    const TrajectorySummary& s = *v.counterexample;
    Record ce;
    ce["counts"] = counts_json(s.initial);
    ce["transient"] = s.transient;
    ce["period"] = s.period;
    ce["outcome"] = std::string(to_string(s.outcome));
    ce["attractor"] = counts_json(s.attractor_canonical);
    r["counterexample"] = ce;
  } else {
    r["counterexample"] = nullptr;
  }
  return r;
}

inline Record scan_record(const ScanRecord& s) {
  Record r;
  r["n"] = s.n;
  r["c"] = s.c;
  r["all_stabilize"] = s.all_stabilize;
  r["witness"] = optional_counts_json(s.witness);
  return r;
}

enum class Format { Jsonl, Csv };

// Writes a header line followed by one line per record. CSV rows take their
// columns from the first record; nested values are written as quoted JSON text.
class Writer {
 public:
  Writer(std::ostream& out, Format format) : out_(out), format_(format) {}

  void header(const Record& h) {
    if (format_ == Format::Jsonl) {
      out_ << h.dump() << '\n';
    } else {
      out_ << "# " << h.dump() << '\n';
    }
  }

  void record(const Record& r) {
    if (format_ == Format::Jsonl) {
      out_ << r.dump() << '\n';
    } else {
      if (!wrote_columns_) {
        bool first = true;
        for (const auto& [key, value] : r.items()) {
          out_ << (first ? "" : ",") << key;
          first = false;
        }
        out_ << '\n';
        wrote_columns_ = true;
      }
      bool first = true;
      for (const auto& [key, value] : r.items()) {
        out_ << (first ? "" : ",") << csv_cell(value);
        first = false;
      }
      out_ << '\n';
    }
    out_.flush();
  }

 private:
  static std::string csv_cell(const Record& v) {
    if (v.is_string()) return quote(v.get<std::string>());
    if (v.is_primitive()) return v.dump();
    return quote(v.dump());
  }

  static std::string quote(const std::string& s) {
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + '"';
  }

  std::ostream& out_;
  Format format_;
  bool wrote_columns_ = false;
};

}  // namespace candy::report
