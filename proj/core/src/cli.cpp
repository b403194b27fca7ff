#include "multiperm/cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "multiperm/analysis.hpp"
#include "multiperm/existence.hpp"
#include "multiperm/problem.hpp"
#include "multiperm/solution_io.hpp"
#include "multiperm/solver.hpp"
#include "multiperm/verifier.hpp"
#include "multiperm/version.hpp"

namespace multiperm::cli {
namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnsupportedSize = 3;

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return ec == std::errc{} ? std::string(buf, ptr) : std::to_string(value);
}

// The one report schema every subcommand emits in --json mode; fields a
// subcommand does not compute stay null.
struct RunReport {
  int m = 0;
  int n = 0;
  std::optional<std::uint64_t> raw_count;
  std::optional<std::uint64_t> canonical_count;
  std::optional<std::uint64_t> palindrome_count;
  std::optional<std::uint64_t> nodes_visited;
  std::optional<double> elapsed_seconds;
  std::optional<std::string> verdict;
  std::optional<double> estimate;
  std::optional<double> ratio;
  std::string version{kVersion};

  ordered_json to_json() const {
    ordered_json j;
    j["m"] = m;
    j["n"] = n;
    set(j, "raw_count", raw_count);
    set(j, "canonical_count", canonical_count);
    set(j, "palindrome_count", palindrome_count);
    set(j, "nodes_visited", nodes_visited);
    set(j, "elapsed_seconds", elapsed_seconds);
    set(j, "verdict", verdict);
    set(j, "estimate", estimate);
    set(j, "ratio", ratio);
    j["version"] = version;
    return j;
  }

 private:
  template <class T>
  static void set(ordered_json& j, const char* key, const std::optional<T>& value) {
    if (value) {
      j[key] = *value;
    } else {
      j[key] = nullptr;
    }
  }
};

struct CommonArgs {
  int m = 0;
  int n = 0;
  bool json = false;
};

void add_problem_flags(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("-m,--multiplicity", args.m, "copies of each value")->required();
  cmd->add_option("-n,--max-value", args.n, "largest value")->required();
  cmd->add_flag("--json", args.json, "emit the machine-readable report");
}

void fill_existence(RunReport& report, const Problem& p,
                    std::optional<std::uint64_t> canonical) {
  report.verdict = to_string(necessary_condition(p.multiplicity, p.max_value).status);
  if (p.multiplicity == 2 || p.multiplicity == 3) {
    const double estimate = asymptotic_estimate(p.multiplicity, p.max_value);
    report.estimate = estimate;
    if (canonical && estimate > 0.0) {
      report.ratio = estimate_ratio(*canonical, estimate);
    }
  }
}

int run_count(const CommonArgs& args, const SolveOptions& options, std::ostream& out) {
  const Problem p = make_problem(args.m, args.n);
  const CountReport counts = count(p, options);

  RunReport report;
  report.m = p.multiplicity;
  report.n = p.max_value;
  report.raw_count = counts.raw_count;
  report.canonical_count = counts.canonical_count;
  report.palindrome_count = counts.palindrome_count;
  report.nodes_visited = counts.nodes_visited;
  report.elapsed_seconds = counts.elapsed_seconds;
  fill_existence(report, p, counts.canonical_count);

  if (args.json) {
    out << report.to_json().dump() << '\n';
    return kExitOk;
  }
  out << "p(" << p.multiplicity << "," << p.max_value
      << ") = " << counts.canonical_count << '\n';
  out << "raw = " << counts.raw_count << ", palindromes = " << counts.palindrome_count
      << ", nodes = " << counts.nodes_visited
      << ", elapsed = " << format_double(counts.elapsed_seconds) << "s\n";
  out << "existence: " << *report.verdict << '\n';
  if (report.estimate) {
    out << "estimate = " << format_double(*report.estimate);
    if (report.ratio) out << ", ratio = " << format_double(*report.ratio);
    out << '\n';
  }
  return kExitOk;
}

int run_enumerate(const CommonArgs& args, const EnumerateOptions& options,
                  const std::string& out_path, std::ostream& out, std::ostream& err) {
  const Problem p = make_problem(args.m, args.n);
  if (args.json && out_path.empty()) {
    err << "enumerate --json needs --out FILE so the report and the solution "
           "stream do not interleave\n";
    return kExitUsage;
  }

  std::ofstream file;
  std::ostream* sink_stream = &out;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) {
      err << "cannot open " << out_path << " for writing\n";
      return kExitUsage;
    }
    sink_stream = &file;
  }

  std::uint64_t palindromes = 0;
  std::uint64_t emitted = enumerate(
      p,
      [&](const Sequence& s) {
        *sink_stream << to_string(s) << '\n';
        if (s == reversed(s)) ++palindromes;
      },
      options);
  sink_stream->flush();
  if (!*sink_stream) {
    err << "write failure while emitting solutions\n";
    return kExitVerification;
  }

  if (args.json) {
    RunReport report;
    report.m = p.multiplicity;
    report.n = p.max_value;
    report.canonical_count = emitted;
    report.palindrome_count = palindromes;
    fill_existence(report, p, emitted);
    out << report.to_json().dump() << '\n';
  } else {
    err << emitted << " canonical solutions\n";
  }
  return kExitOk;
}

int run_verify(const CommonArgs& args, const std::string& path, bool strict,
               std::ostream& out, std::ostream& err) {
  const Problem p = make_problem(args.m, args.n);
  if (!std::filesystem::exists(path)) {
    err << "error: no such file: " << path << '\n';
    return kExitUsage;
  }
  const ParseResult parsed = load_solution_file(path, p);
  for (const ParseDiagnostic& d : parsed.diagnostics) {
    err << path << ":" << d.line << ": " << d.message << '\n';
  }
  if (strict && !parsed.diagnostics.empty()) {
    err << "strict mode: " << parsed.diagnostics.size() << " malformed line(s)\n";
    return kExitVerification;
  }

  std::uint64_t valid = 0;
  std::uint64_t invalid = 0;
  std::uint64_t canonical = 0;
  std::uint64_t palindromes = 0;
  for (const ParsedRecord& record : parsed.records) {
    const auto violations = verify(p, record.values);
    if (violations.empty()) {
      ++valid;
      if (is_canonical(p, record.values)) ++canonical;
      if (record.values == reversed(record.values)) ++palindromes;
    } else {
      ++invalid;
      for (const Violation& v : violations) {
        err << path << ":" << record.line << ": " << to_string(v) << '\n';
      }
    }
  }

  const bool ok = invalid == 0;
  if (args.json) {
    RunReport report;
    report.m = p.multiplicity;
    report.n = p.max_value;
    report.raw_count = static_cast<std::uint64_t>(parsed.records.size());
    report.canonical_count = canonical;
    report.palindrome_count = palindromes;
    report.verdict = ok ? "valid" : "invalid";
    out << report.to_json().dump() << '\n';
  } else {
    out << valid << " valid";
    if (invalid > 0) out << ", " << invalid << " invalid";
    out << '\n';
  }
  return ok ? kExitOk : kExitVerification;
}

int run_analyze(const CommonArgs& args, const std::string& path, bool strict,
                std::ostream& out, std::ostream& err) {
  const Problem p = make_problem(args.m, args.n);
  if (!std::filesystem::exists(path)) {
    err << "error: no such file: " << path << '\n';
    return kExitUsage;
  }
  const ParseResult parsed = load_solution_file(path, p);
  for (const ParseDiagnostic& d : parsed.diagnostics) {
    err << path << ":" << d.line << ": " << d.message << '\n';
  }
  if (strict && !parsed.diagnostics.empty()) {
    err << "strict mode: " << parsed.diagnostics.size() << " malformed line(s)\n";
    return kExitVerification;
  }

  std::vector<Sequence> solutions;
  solutions.reserve(parsed.records.size());
  for (const ParsedRecord& record : parsed.records) {
    const auto violations = verify(p, record.values);
    if (!violations.empty()) {
      err << path << ":" << record.line << ": " << to_string(violations.front())
          << '\n';
      return kExitVerification;
    }
    solutions.push_back(record.values);
  }
  const BatchReport batch = analyze_batch(p, solutions);

  if (args.json) {
    RunReport report;
    report.m = p.multiplicity;
    report.n = p.max_value;
    report.raw_count = batch.analyzed;
    report.verdict =
        batch.weight_failures == 0 && batch.residue_failures == 0 &&
                batch.phi_failures == 0
            ? "valid"
            : "invalid";
    ordered_json j = report.to_json();
    j["analysis"] = {{"analyzed", batch.analyzed},
                     {"weight_failures", batch.weight_failures},
                     {"residue_failures", batch.residue_failures},
                     {"phi_failures", batch.phi_failures},
                     {"peak_value_ok", batch.peak_value_ok},
                     {"unimodal_ok", batch.unimodal_ok},
                     {"mu_checked", batch.mu_checked}};
    out << j.dump() << '\n';
  } else {
    out << "analyzed " << batch.analyzed << " solutions of (" << p.multiplicity
        << "," << p.max_value << ")\n";
    out << "residue distribution: " << batch.analyzed - batch.residue_failures << "/"
        << batch.analyzed << " ok\n";
    out << "phi permutations: " << batch.analyzed - batch.phi_failures << "/"
        << batch.analyzed << " ok\n";
    if (batch.mu_checked) {
      out << "mu weight identity: " << batch.analyzed - batch.weight_failures << "/"
          << batch.analyzed << " ok\n";
      out << "conjectured peak value: " << batch.peak_value_ok << "/" << batch.analyzed
          << '\n';
      out << "conjectured unimodality: " << batch.unimodal_ok << "/" << batch.analyzed
          << '\n';
    } else {
      out << "mu-sequence: skipped (defined for multiplicity 2 only)\n";
    }
  }
  const bool identities_hold = batch.weight_failures == 0 &&
                               batch.residue_failures == 0 && batch.phi_failures == 0;
  return identities_hold ? kExitOk : kExitVerification;
}

int run_exists(const CommonArgs& args, std::ostream& out) {
  const ExistenceVerdict verdict = necessary_condition(args.m, args.n);
  if (args.json) {
    RunReport report;
    report.m = args.m;
    report.n = args.n;
    report.verdict = to_string(verdict.status);
    out << report.to_json().dump() << '\n';
  } else {
    out << "(" << args.m << "," << args.n << "): " << to_string(verdict) << '\n';
    if (verdict.status == ExistenceStatus::Possible) {
      out << "note: the condition is necessary, not sufficient; (3,8) satisfies "
             "it and still has zero solutions\n";
    }
  }
  return kExitOk;
}

int run_estimate(const CommonArgs& args, std::ostream& out) {
  const double estimate = asymptotic_estimate(args.m, args.n);
  if (args.json) {
    RunReport report;
    report.m = args.m;
    report.n = args.n;
    report.estimate = estimate;
    out << report.to_json().dump() << '\n';
  } else {
    const char* formula = args.m == 2 ? "n!/2^n" : "n!/2^(2n+1)";
    out << "p(" << args.m << "," << args.n << ") ~ " << formula << " = "
        << format_double(estimate) << " (conjectural)\n";
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact enumeration of multiplicity-m Langford-type sequences"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CommonArgs count_args;
  SolveOptions solve_options;
  std::string strategy = "raw-halving";
  auto* count_cmd = app.add_subcommand("count", "count all solutions of (m, n)");
  add_problem_flags(count_cmd, count_args);
  count_cmd->add_option("--jobs", solve_options.jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  count_cmd->add_option("--split-depth", solve_options.split_depth,
                        "values fixed per work unit (0 = auto)");
  count_cmd->add_option("--strategy", strategy, "counting strategy")
      ->check(CLI::IsMember({"raw-halving", "canonical-filter"}));

  CommonArgs enum_args;
  EnumerateOptions enum_options;
  std::uint64_t limit = 0;
  std::string out_path;
  auto* enum_cmd =
      app.add_subcommand("enumerate", "stream every canonical solution of (m, n)");
  add_problem_flags(enum_cmd, enum_args);
  enum_cmd->add_option("--jobs", enum_options.jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  enum_cmd->add_option("--split-depth", enum_options.split_depth,
                       "values fixed per work unit (0 = auto)");
  auto* limit_opt = enum_cmd->add_option("--limit", limit, "emit at most K solutions");
  enum_cmd->add_flag("--sort", enum_options.sorted,
                     "ascending lexicographic emission order");
  enum_cmd->add_option("--out", out_path, "write solutions to FILE instead of stdout");

  CommonArgs verify_args;
  std::string verify_path;
  bool verify_strict = false;
  auto* verify_cmd = app.add_subcommand("verify", "check every record of a solution file");
  verify_cmd->add_option("file", verify_path, "solution file")->required();
  add_problem_flags(verify_cmd, verify_args);
  verify_cmd->add_flag("--strict", verify_strict, "malformed lines are fatal");

  CommonArgs analyze_args;
  std::string analyze_path;
  bool analyze_strict = false;
  auto* analyze_cmd = app.add_subcommand(
      "analyze", "derived structure of every solution in a file");
  analyze_cmd->add_option("file", analyze_path, "solution file")->required();
  add_problem_flags(analyze_cmd, analyze_args);
  analyze_cmd->add_flag("--strict", analyze_strict, "malformed lines are fatal");

  CommonArgs exists_args;
  auto* exists_cmd = app.add_subcommand(
      "exists", "necessary-condition verdict for (m, n); necessary only — "
                "(3,8) passes the test yet p(3,8) = 0");
  add_problem_flags(exists_cmd, exists_args);

  CommonArgs estimate_args;
  auto* estimate_cmd = app.add_subcommand(
      "estimate", "conjectured asymptotic size of p(m, n) for m in {2, 3}");
  add_problem_flags(estimate_cmd, estimate_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (count_cmd->parsed()) {
      solve_options.strategy = strategy == "canonical-filter"
                                   ? CountStrategy::CanonicalFilter
                                   : CountStrategy::RawHalving;
      return run_count(count_args, solve_options, out);
    }
    if (enum_cmd->parsed()) {
      if (limit_opt->count() > 0) enum_options.limit = limit;
      return run_enumerate(enum_args, enum_options, out_path, out, err);
    }
    if (verify_cmd->parsed()) {
      return run_verify(verify_args, verify_path, verify_strict, out, err);
    }
    if (analyze_cmd->parsed()) {
      return run_analyze(analyze_args, analyze_path, analyze_strict, out, err);
    }
    if (exists_cmd->parsed()) {
      return run_exists(exists_args, out);
    }
    if (estimate_cmd->parsed()) {
      return run_estimate(estimate_args, out);
    }
  } catch (const UnsupportedSizeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUnsupportedSize;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {
    err << "internal consistency failure: " << e.what() << '\n';
    return kExitVerification;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerification;
  }
  err << "no subcommand given\n";
  return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("multiperm");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace multiperm::cli
