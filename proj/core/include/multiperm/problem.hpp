#pragma once

#include <stdexcept>
#include <string>

namespace multiperm {

// Occupancy masks are one or two 64-bit words; larger boards are rejected
// instead of silently truncated.
inline constexpr int kMaxPositions = 128;

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Malformed input shape (e.g. a sequence whose length does not match m*n).
struct StructuralError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnsupportedSizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised by the solver when a caller-supplied deadline expires mid-search.
struct DeadlineExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An instance (m, n): arrange the multiset {1..n} with every value repeated
// m times so that consecutive copies of k are exactly k+1 positions apart.
struct Problem {
  int multiplicity = 2;  // m, copies of each value
  int max_value = 1;     // n, largest value

  int positions() const { return multiplicity * max_value; }

  friend bool operator==(const Problem&, const Problem&) = default;
};

// Validates m >= 2, n >= 1 and the engine capacity.
Problem make_problem(int multiplicity, int max_value);

}  // namespace multiperm
