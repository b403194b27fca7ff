#include "multiperm/solution_io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace multiperm {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

ParseResult parse_solution_file(std::string_view text, const Problem& p) {
  ParseResult result;
  const int expected = p.positions();
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find('\n', start);
    std::string_view raw_line = text.substr(
        start, end == std::string_view::npos ? text.size() - start : end - start);
    ++line_no;
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;

    const std::string_view line = trim(raw_line);
    if (line.empty() || line.front() == '#') continue;

    Sequence values;
    values.reserve(static_cast<std::size_t>(expected));
    bool bad = false;
    std::size_t i = 0;
    while (i < line.size() && !bad) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      const std::string_view token = line.substr(i, j - i);
      int value = 0;
      const char* const first = token.data();
      const char* const last = token.data() + token.size();
      const auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc{} || ptr != last) {
        result.diagnostics.push_back(
            {line_no, "token '" + std::string(token) + "' is not an integer"});
        bad = true;
        break;
      }
      if (value < 1 || value > p.max_value) {
        result.diagnostics.push_back(
            {line_no, "value " + std::to_string(value) + " outside 1.." +
                          std::to_string(p.max_value)});
        bad = true;
        break;
      }
      values.push_back(value);
      i = j;
    }
    if (bad) continue;
    if (static_cast<int>(values.size()) != expected) {
      result.diagnostics.push_back(
          {line_no, "record has " + std::to_string(values.size()) +
                        " integers, expected " + std::to_string(expected)});
      continue;
    }
    result.records.push_back({line_no, std::move(values)});
  }
  return result;
}

ParseResult load_solution_file(const std::filesystem::path& path, const Problem& p) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_solution_file(buffer.str(), p);
}

std::uint64_t write_solution_file(std::span<const Sequence> solutions,
                                  std::ostream& out) {
  std::uint64_t bytes = 0;
  for (const Sequence& s : solutions) {
    std::string line = to_string(s);
    line.push_back('\n');
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
    bytes += line.size();
  }
  if (!out) {
    throw std::runtime_error("write failure while emitting solutions");
  }
  return bytes;
}

std::uint64_t write_solution_file(std::span<const Sequence> solutions,
                                  const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  return write_solution_file(solutions, out);
}

}  // namespace multiperm
