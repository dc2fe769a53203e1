#pragma once

// Command-line front end: simulate, sweep, verify, scan.
//
// Exit codes: 0 success (all claims passed), 1 a claim was refuted, 2 invalid
// input, 3 a resource cap (round cap, overflow, feasibility guard) was hit.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "candy/compositions.hpp"
#include "candy/configuration.hpp"
#include "candy/errors.hpp"
#include "candy/report.hpp"
#include "candy/sweep.hpp"
#include "candy/trajectory.hpp"

namespace candy::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRefuted = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitResource = 3;

inline constexpr std::uint64_t kFeasibleCompositions = std::uint64_t{1} << 31;
inline constexpr const char* kVersion = "1.0.0";

// ---------------------------------------------------------------------------
// Parameter syntax

inline std::uint64_t parse_uint(const std::string& text, const std::string& what) {
  static const std::regex digits("[0-9]+");
  if (!std::regex_match(text, digits)) throw InvalidInput("bad " + what + ": '" + text + "'");
  try {
    return std::stoull(text);
  } catch (const std::out_of_range&) {
    throw InvalidInput(what + " out of range: '" + text + "'");
  }
}

inline std::vector<Count> parse_counts(const std::string& text) {
  std::vector<Count> counts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    counts.push_back(parse_uint(text.substr(pos, comma - pos), "count"));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return counts;
}

// One endpoint of a total: a plain integer, or `[k]n[+-d]` relative to n.
struct Term {
  std::uint64_t coefficient = 0;
  std::int64_t offset = 0;

  std::uint64_t eval(std::uint64_t n, const std::string& source) const {
    const std::int64_t v = static_cast<std::int64_t>(coefficient * n) + offset;
    if (v < 0) {
      throw InvalidInput("'" + source + "' is negative at n = " + std::to_string(n));
    }
    return static_cast<std::uint64_t>(v);
  }
};

inline Term parse_term(const std::string& text) {
  static const std::regex relative("([0-9]*)n(([+-])([0-9]+))?");
  std::smatch m;
  if (std::regex_match(text, m, relative)) {
    Term t;
    t.coefficient = m[1].length() ? parse_uint(m[1].str(), "coefficient") : 1;
    if (m[2].matched) {
      const auto d = static_cast<std::int64_t>(parse_uint(m[4].str(), "offset"));
      t.offset = m[3].str() == "-" ? -d : d;
    }
    return t;
  }
  return Term{0, static_cast<std::int64_t>(parse_uint(text, "value"))};
}

// Comma-separated list of values or inclusive `lo..hi` ranges. For --c the
// endpoints may refer to n, e.g. `3n-2..3n+4`.
class RangeSpec {
 public:
  static RangeSpec parse(const std::string& text) {
    RangeSpec spec;
    spec.source_ = text;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = text.find(',', pos);
      const std::string piece = text.substr(pos, comma - pos);
      const std::size_t dots = piece.find("..");
      if (dots == std::string::npos) {
        const Term t = parse_term(piece);
        spec.pieces_.push_back({t, t});
      } else {
        spec.pieces_.push_back({parse_term(piece.substr(0, dots)), parse_term(piece.substr(dots + 2))});
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return spec;
  }

  bool uses_n() const {
    return std::any_of(pieces_.begin(), pieces_.end(), [](const auto& p) {
      return p.first.coefficient != 0 || p.second.coefficient != 0;
    });
  }

  std::vector<std::uint64_t> expand(std::uint64_t n) const {
    std::vector<std::uint64_t> out;
    for (const auto& [lo_term, hi_term] : pieces_) {
      const std::uint64_t lo = lo_term.eval(n, source_);
      const std::uint64_t hi = hi_term.eval(n, source_);
      if (lo > hi) throw InvalidInput("empty range '" + source_ + "' at n = " + std::to_string(n));
      for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(v);
    }
    return out;
  }

 private:
  std::string source_;
  std::vector<std::pair<Term, Term>> pieces_;
};

// ---------------------------------------------------------------------------
// Invocation

struct Common {
  std::optional<std::uint64_t> max_rounds;
  unsigned parallelism = 0;
  bool canonical = false;
  bool force = false;
  bool meta = false;
  std::string format = "jsonl";
  std::string output;
};

inline std::uint64_t resolve_max_rounds(const std::optional<std::uint64_t>& flag) {
  if (flag) {
    if (*flag == 0) throw InvalidInput("--max-rounds must be >= 1");
    return *flag;
  }
  if (const char* env = std::getenv("CANDY_MAX_ROUNDS"); env && *env) {
    const std::uint64_t v = parse_uint(env, "CANDY_MAX_ROUNDS");
    if (v == 0) throw InvalidInput("CANDY_MAX_ROUNDS must be >= 1");
    return v;
  }
  return kDefaultMaxRounds;
}

inline unsigned resolve_parallelism(unsigned flag) {
  if (flag != 0) return flag;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Every (n, c) family a command will sweep, checked before any work starts.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> families(
    const std::string& n_text, const std::string& c_text, bool force,
    const std::function<void(std::uint64_t, std::uint64_t)>& check = {}) {
  const RangeSpec n_spec = RangeSpec::parse(n_text);
  if (n_spec.uses_n()) throw InvalidInput("--n cannot refer to n");
  const RangeSpec c_spec = RangeSpec::parse(c_text);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t n : n_spec.expand(0)) {
    for (std::uint64_t c : c_spec.expand(n)) {
      validate_family(n, c);
      if (check) check(n, c);
      if (!force && composition_count(n, c) > kFeasibleCompositions) {
        throw Overflow("C(" + std::to_string(c + n - 1) + ", " + std::to_string(n - 1) +
                       ") configurations exceeds the 2^31 feasibility guard (use --force)");
      }
      out.emplace_back(n, c);
    }
  }
  return out;
}

class Session {
 public:
  Session(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(std::vector<std::string> args) {
    CLI::App app{"Candy-passing game simulator and exhaustive verifier", "candy"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // simulate
    std::string counts_text;
    bool trace_flag = false;
    Common sim;
    auto* simulate = app.add_subcommand("simulate", "Run one trajectory to its attractor");
    simulate->add_option("--counts", counts_text, "Comma-separated candy counts, e.g. 3,1,3,3")
        ->required();
    simulate->add_flag("--trace", trace_flag, "Include every state up to one full attractor period");
    add_output_options(simulate, sim);

    // sweep
    std::string sweep_n, sweep_c;
    std::size_t witness_limit = kDefaultWitnessLimit;
    Common sw;
    auto* sweep_cmd = app.add_subcommand("sweep", "Analyze every distribution of c candies among n");
    sweep_cmd->add_option("--n", sweep_n, "Students: value, list, or range like 3..6")->required();
    sweep_cmd->add_option("--c", sweep_c, "Candy totals, e.g. 9, 1..9, 3n-2..3n+4")->required();
    sweep_cmd->add_option("--witnesses", witness_limit, "Periodic witnesses kept per report");
    add_sweep_options(sweep_cmd, sw);

    // verify
    std::string claim, verify_n, verify_c;
    Common ver;
    auto* verify = app.add_subcommand("verify", "Check a claim exhaustively over (n, c) families");
    verify->add_option("claim", claim, "theorem | subcritical | endgame")
        ->required()
        ->check(CLI::IsMember({"theorem", "subcritical", "endgame"}));
    verify->add_option("--n", verify_n, "Students: value, list, or range")->required();
    verify->add_option("--c", verify_c,
                       "Candy totals (default: 3n-2..3n+4, 1..n-1, 3n-2..3n by claim)");
    add_sweep_options(verify, ver);

    // scan
    std::string scan_n, scan_c;
    Common sc;
    auto* scan = app.add_subcommand("scan", "Report which totals let every distribution stabilize");
    scan->add_option("--n", scan_n, "Students: value, list, or range")->required();
    scan->add_option("--c", scan_c, "Candy totals, e.g. 1..9")->required();
    add_sweep_options(scan, sc);

    try {
      std::reverse(args.begin(), args.end());
      app.parse(args);
    } catch (const CLI::CallForHelp&) {
      const CLI::App* target = &app;
      for (const CLI::App* sub : app.get_subcommands()) target = sub;
      out_ << target->help();
      return kExitOk;
    } catch (const CLI::CallForVersion&) {
      out_ << kVersion << '\n';
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      err_ << "error: " << e.what() << '\n';
      return kExitInvalid;
    }

    try {
      if (*simulate) return run_simulate(counts_text, trace_flag, sim);
      if (*sweep_cmd) return run_sweep(sweep_n, sweep_c, witness_limit, sw);
      if (*verify) return run_verify(claim, verify_n, verify_c, ver);
      if (*scan) return run_scan(scan_n, scan_c, sc);
    } catch (const InvalidInput& e) {
      err_ << "error: " << e.what() << '\n';
      return kExitInvalid;
    } catch (const IndexOutOfRange& e) {
      err_ << "error: " << e.what() << '\n';
      return kExitInvalid;
    } catch (const CapExceeded& e) {
      err_ << "error: " << e.what() << '\n';
      return kExitResource;
    } catch (const Overflow& e) {
      err_ << "error: " << e.what() << '\n';
      return kExitResource;
    } catch (const std::bad_alloc&) {
      err_ << "error: out of memory\n";
      return kExitResource;
    }
    return kExitInvalid;
  }

 private:
  static void add_output_options(CLI::App* cmd, Common& common) {
    cmd->add_option("--max-rounds", common.max_rounds,
                    "Round cap per trajectory (default 1000000, or CANDY_MAX_ROUNDS)");
    cmd->add_option("--format", common.format, "jsonl or csv")
        ->check(CLI::IsMember({"jsonl", "csv"}));
    cmd->add_option("--output", common.output, "Write the report here instead of stdout");
    cmd->add_flag("--meta", common.meta, "Add provenance fields to the header line");
  }

  static void add_sweep_options(CLI::App* cmd, Common& common) {
    add_output_options(cmd, common);
    cmd->add_option("--parallelism", common.parallelism, "Worker threads (default: all cores)");
    cmd->add_flag("--canonical", common.canonical, "One representative per rotation/reflection class");
    cmd->add_flag("--force", common.force, "Allow sweeps beyond 2^31 configurations");
  }

  SweepOptions sweep_options(const Common& common, std::size_t witness_limit = kDefaultWitnessLimit) {
    SweepOptions o;
    o.canonical_only = common.canonical;
    o.max_rounds = resolve_max_rounds(common.max_rounds);
    o.parallelism = resolve_parallelism(common.parallelism);
    o.witness_limit = witness_limit;
    return o;
  }

  // Opens the destination and writes the header line; subsequent records go
  // through the returned writer.
  report::Writer open(const std::string& command, const Common& common, std::uint64_t max_rounds,
                      std::optional<unsigned> parallelism) {
    std::ostream* dest = &out_;
    if (!common.output.empty()) {
      file_.open(common.output, std::ios::out | std::ios::trunc);
      if (!file_) throw InvalidInput("cannot open output file '" + common.output + "'");
      dest = &file_;
    }
    report::Writer w(*dest, common.format == "csv" ? report::Format::Csv : report::Format::Jsonl);
    report::Record h;
    h["schema"] = report::kSchemaVersion;
    h["command"] = command;
    if (common.meta) {
      h["tool"] = "candy";
      h["version"] = kVersion;
      h["max_rounds"] = max_rounds;
      if (parallelism) h["parallelism"] = *parallelism;
      h["canonical_mode"] = common.canonical;
      const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
      char stamp[32];
      std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
      h["generated_at"] = stamp;
    }
    w.header(h);
    return w;
  }

  int run_simulate(const std::string& counts_text, bool trace_flag, const Common& common) {
    const Configuration x = Configuration::from_counts(parse_counts(counts_text));
    const std::uint64_t max_rounds = resolve_max_rounds(common.max_rounds);
    const TrajectorySummary s = analyze(x, max_rounds);
    report::Record r = report::trajectory_record(s);
    if (trace_flag) {
      report::Record states = report::Record::array();
      for (const Configuration& state : trace(x, s.transient + s.period)) {
        states.push_back(report::counts_json(state));
      }
      r["trace"] = states;
    }
    report::Writer w = open("simulate", common, max_rounds, std::nullopt);
    w.record(r);
    return kExitOk;
  }

  int run_sweep(const std::string& n_text, const std::string& c_text, std::size_t witness_limit,
                const Common& common) {
    const auto todo = families(n_text, c_text, common.force);
    const SweepOptions o = sweep_options(common, witness_limit);
    report::Writer w = open("sweep", common, o.max_rounds, o.parallelism);
    for (const auto& [n, c] : todo) w.record(report::sweep_record(sweep(n, c, o)));
    return kExitOk;
  }

  int run_verify(const std::string& claim, const std::string& n_text, std::string c_text,
                 const Common& common) {
    std::function<void(std::uint64_t, std::uint64_t)> check;
    std::function<Verdict(std::uint64_t, std::uint64_t, const SweepOptions&)> verify;
    if (claim == "theorem") {
      if (c_text.empty()) c_text = "3n-2..3n+4";
      check = [](std::uint64_t n, std::uint64_t c) {
        if (c + 2 < 3 * n) {
          throw InvalidInput("theorem hypothesis c >= 3n-2 not met at n = " + std::to_string(n) +
                             ", c = " + std::to_string(c));
        }
      };
      verify = [](std::uint64_t n, std::uint64_t c, const SweepOptions& o) {
        return verify_theorem(n, c, o);
      };
    } else if (claim == "subcritical") {
      if (c_text.empty()) c_text = "1..n-1";
      check = [](std::uint64_t n, std::uint64_t c) {
        if (c >= n) {
          throw InvalidInput("sub-critical hypothesis c < n not met at n = " + std::to_string(n) +
                             ", c = " + std::to_string(c));
        }
      };
      verify = [](std::uint64_t n, std::uint64_t c, const SweepOptions& o) {
        return verify_subcritical(n, c, o);
      };
    } else {
      if (c_text.empty()) c_text = "3n-2..3n";
      check = [](std::uint64_t n, std::uint64_t c) { endgame_multiset(n, c); };
      verify = [](std::uint64_t n, std::uint64_t c, const SweepOptions& o) {
        return verify_endgame_shape(n, c, o);
      };
    }
    const auto todo = families(n_text, c_text, common.force, check);
    const SweepOptions o = sweep_options(common);
    report::Writer w = open("verify", common, o.max_rounds, o.parallelism);
    bool all_passed = true;
    for (const auto& [n, c] : todo) {
      const Verdict v = verify(n, c, o);
      all_passed = all_passed && v.passed;
      w.record(report::verdict_record(v));
    }
    return all_passed ? kExitOk : kExitRefuted;
  }

  int run_scan(const std::string& n_text, const std::string& c_text, const Common& common) {
    const auto todo = families(n_text, c_text, common.force);
    const SweepOptions o = sweep_options(common, 1);
    report::Writer w = open("scan", common, o.max_rounds, o.parallelism);
    for (const auto& [n, c] : todo) {
      for (const ScanRecord& rec : tightness_scan(n, c, c, o)) w.record(report::scan_record(rec));
    }
    return kExitOk;
  }

  std::ostream& out_;
  std::ostream& err_;
  std::ofstream file_;
};

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  return Session(out, err).run(args);
}

}  // namespace candy::cli
