#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "multiperm/problem.hpp"
#include "multiperm/sequence.hpp"

namespace multiperm {

struct CountReport {
  std::uint64_t raw_count = 0;        // solutions with both reversal mates counted
  std::uint64_t canonical_count = 0;  // p(m, n)
  std::uint64_t palindrome_count = 0;
  std::uint64_t nodes_visited = 0;    // attempted placements of a full occurrence set
  double elapsed_seconds = 0.0;
};

/// Fixes the first `depth` values (n, n-1, ...) to concrete first positions.
/// Prefixes produced by split_jobs are pairwise incompatible and jointly
/// exhaustive: every raw solution extends exactly one of them, so per-prefix
/// counts add up to the whole search.
struct JobPrefix {
  std::vector<std::pair<int, int>> placements;  // (value, 1-based first position)

  int depth() const { return static_cast<int>(placements.size()); }
};

enum class CountStrategy {
  RawHalving,       // canonical = (raw + palindromes) / 2
  CanonicalFilter,  // classify every leaf with the canonical rule
};

struct SolveOptions {
  int jobs = 1;
  int split_depth = 0;  // 0 = auto (no split single-threaded, depth 2 when jobs > 1)
  CountStrategy strategy = CountStrategy::RawHalving;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Exhaustive backtracking count. Deterministic for fixed (m, n) regardless of
// jobs or split depth. Throws UnsupportedSizeError over capacity and
// DeadlineExceeded if the optional deadline expires.
CountReport count(const Problem& p, const SolveOptions& options = {});

struct EnumerateOptions {
  int jobs = 1;
  int split_depth = 0;
  bool sorted = false;  // ascending lexicographic emission order
  std::optional<std::uint64_t> limit;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

using SolutionSink = std::function<void(const Sequence&)>;

// Calls sink exactly once per canonical solution of p; returns the number
// emitted. Emission order is deterministic; with options.sorted it is
// ascending lexicographic.
std::uint64_t enumerate(const Problem& p, const SolutionSink& sink,
                        const EnumerateOptions& options = {});

// depth must lie in [0, n]; depth 0 yields the single empty prefix.
std::vector<JobPrefix> split_jobs(const Problem& p, int depth);

// Independent correctness oracle: naive recursion that fills the leftmost
// empty cell, no bitmasks, canonical solutions classified one by one instead
// of halving. Restricted to m*n <= 30. Counts must match count() exactly.
CountReport brute_force_oracle(
    const Problem& p,
    std::optional<std::chrono::steady_clock::time_point> deadline = {});

}  // namespace multiperm
