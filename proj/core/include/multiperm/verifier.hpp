#pragma once

#include <string>
#include <vector>

#include "multiperm/problem.hpp"
#include "multiperm/sequence.hpp"

namespace multiperm {

enum class ViolationKind {
  WrongLength,
  ValueOutOfRange,
  WrongMultiplicity,
  BadSpacing,
};

struct Violation {
  ViolationKind kind;
  int value = 0;               // offending value, 0 when not applicable
  std::vector<int> positions;  // involved 1-based indices
  std::string detail;
};

// Accepts arbitrary integer arrays and reports every violation, not just the
// first: wrong length, out-of-range values, wrong multiplicities, and for each
// adjacent pair of occurrences of k a gap other than k+1. Spacing is skipped
// for values whose multiplicity is already wrong. Empty result == solution.
std::vector<Violation> verify(const Problem& p, const Sequence& s);

inline bool is_solution(const Problem& p, const Sequence& s) {
  return verify(p, s).empty();
}

std::string to_string(const Violation& v);

}  // namespace multiperm
