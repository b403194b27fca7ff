#pragma once

#include <compare>
#include <string>
#include <vector>

#include "multiperm/problem.hpp"

namespace multiperm {

// A candidate or verified arrangement. Values are in 1..n; positions are
// 1-based in every report and file format.
using Sequence = std::vector<int>;

Sequence reversed(const Sequence& s);

// Same, but checks the length against p first (StructuralError on mismatch).
Sequence reversed(const Problem& p, const Sequence& s);

/// Total order on the two members of a reversal pair. The smaller key wins:
/// first the 1-based index of the first occurrence of the largest value, then
/// the greater initial element (stored negated so smaller-is-preferred holds
/// componentwise), then the whole sequence as a lexicographic fallback. The
/// fallback makes the order total; for m in {2,3} it never decides a
/// non-palindromic pair, since a tie would force equal end elements.
struct CanonicalKey {
  int first_max_index = 0;
  int neg_initial = 0;
  Sequence lex_tiebreak;

  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

// Requires max_value to occur in s (DomainError otherwise).
CanonicalKey canonical_key(const Sequence& s, int max_value);

// True iff s is the preferred representative of {s, reversed(s)}.
// Palindromes compare equal to their reversal and are canonical.
// Assumes s is a solution of p; only the shape is re-checked.
bool is_canonical(const Problem& p, const Sequence& s);

// theta[k] = 1-based index of the first occurrence of k, for k in 1..n
// (slot 0 unused). In a valid solution the other copies of k sit at
// theta[k] + j*(k+1), j = 1..m-1. DomainError if some value is missing.
std::vector<int> first_occurrences(const Sequence& s, int max_value);

// Single-space separated, e.g. "4 1 3 1 2 4 3 2".
std::string to_string(const Sequence& s);

}  // namespace multiperm
