#include "multiperm/sequence.hpp"

#include <algorithm>
#include <sstream>

namespace multiperm {

Problem make_problem(int multiplicity, int max_value) {
  if (multiplicity < 2) {
    throw DomainError("multiplicity must be at least 2, got " +
                      std::to_string(multiplicity));
  }
  if (max_value < 1) {
    throw DomainError("largest value must be at least 1, got " +
                      std::to_string(max_value));
  }
  const long long total =
      static_cast<long long>(multiplicity) * static_cast<long long>(max_value);
  if (total > kMaxPositions) {
    throw UnsupportedSizeError("board of " + std::to_string(total) +
                               " positions exceeds the supported maximum of " +
                               std::to_string(kMaxPositions));
  }
  return Problem{multiplicity, max_value};
}

Sequence reversed(const Sequence& s) { return Sequence(s.rbegin(), s.rend()); }

Sequence reversed(const Problem& p, const Sequence& s) {
  if (static_cast<int>(s.size()) != p.positions()) {
    throw StructuralError("sequence has " + std::to_string(s.size()) +
                          " terms, expected " + std::to_string(p.positions()));
  }
  return reversed(s);
}

CanonicalKey canonical_key(const Sequence& s, int max_value) {
  const auto it = std::find(s.begin(), s.end(), max_value);
  if (it == s.end()) {
    throw DomainError("value " + std::to_string(max_value) +
                      " does not occur in the sequence");
  }
  CanonicalKey key;
  key.first_max_index = static_cast<int>(it - s.begin()) + 1;
  key.neg_initial = -s.front();
  key.lex_tiebreak = s;
  return key;
}

bool is_canonical(const Problem& p, const Sequence& s) {
  if (static_cast<int>(s.size()) != p.positions()) {
    throw StructuralError("sequence has " + std::to_string(s.size()) +
                          " terms, expected " + std::to_string(p.positions()));
  }
  return canonical_key(s, p.max_value) <= canonical_key(reversed(s), p.max_value);
}

std::vector<int> first_occurrences(const Sequence& s, int max_value) {
  std::vector<int> theta(static_cast<std::size_t>(max_value) + 1, 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const int v = s[i];
    if (v >= 1 && v <= max_value && theta[v] == 0) {
      theta[v] = static_cast<int>(i) + 1;
    }
  }
  for (int k = 1; k <= max_value; ++k) {
    if (theta[k] == 0) {
      throw DomainError("value " + std::to_string(k) +
                        " does not occur in the sequence");
    }
  }
  return theta;
}

std::string to_string(const Sequence& s) {
  std::ostringstream out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) out << ' ';
    out << s[i];
  }
  return out.str();
}

}  // namespace multiperm
