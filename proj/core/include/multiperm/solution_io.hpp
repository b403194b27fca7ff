#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "multiperm/problem.hpp"
#include "multiperm/sequence.hpp"

namespace multiperm {

struct ParsedRecord {
  int line = 0;  // 1-based source line
  Sequence values;
};

struct ParseDiagnostic {
  int line = 0;
  std::string message;
};

struct ParseResult {
  std::vector<ParsedRecord> records;
  std::vector<ParseDiagnostic> diagnostics;
};

// Solution file format: UTF-8 text, one solution per line, tokens separated by
// runs of spaces/tabs; lines starting with '#' and blank lines are skipped.
// Every record must hold exactly m*n integers in 1..n; failures become
// per-line diagnostics and the offending line yields no record. Spacing is
// not checked here; that is verify()'s job.
ParseResult parse_solution_file(std::string_view text, const Problem& p);

// Reads and parses; throws std::runtime_error on I/O failure.
ParseResult load_solution_file(const std::filesystem::path& path, const Problem& p);

// One line per solution, single-space separated, newline-terminated.
// Returns the number of bytes written. parse(write(x)) == x.
std::uint64_t write_solution_file(std::span<const Sequence> solutions, std::ostream& out);
std::uint64_t write_solution_file(std::span<const Sequence> solutions,
                                  const std::filesystem::path& path);

}  // namespace multiperm
