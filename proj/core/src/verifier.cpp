#include "multiperm/verifier.hpp"

#include <sstream>

namespace multiperm {

std::vector<Violation> verify(const Problem& p, const Sequence& s) {
  std::vector<Violation> out;
  const int total = p.positions();
  const int n = p.max_value;
  const int m = p.multiplicity;

  if (static_cast<int>(s.size()) != total) {
    out.push_back({ViolationKind::WrongLength,
                   0,
                   {},
                   "length " + std::to_string(s.size()) + ", expected " +
                       std::to_string(total)});
  }

  std::vector<std::vector<int>> positions(static_cast<std::size_t>(n) + 1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const int v = s[i];
    const int pos = static_cast<int>(i) + 1;
    if (v < 1 || v > n) {
      out.push_back({ViolationKind::ValueOutOfRange,
                     v,
                     {pos},
                     "value " + std::to_string(v) + " at position " +
                         std::to_string(pos) + " outside 1.." + std::to_string(n)});
      continue;
    }
    positions[v].push_back(pos);
  }

  for (int k = 1; k <= n; ++k) {
    const auto& ps = positions[k];
    if (static_cast<int>(ps.size()) != m) {
      out.push_back({ViolationKind::WrongMultiplicity,
                     k,
                     ps,
                     "value " + std::to_string(k) + " occurs " +
                         std::to_string(ps.size()) + " times, expected " +
                         std::to_string(m)});
      continue;  // spacing of a miscounted value would only mislead
    }
    for (std::size_t j = 0; j + 1 < ps.size(); ++j) {
      const int gap = ps[j + 1] - ps[j];
      if (gap != k + 1) {
        out.push_back({ViolationKind::BadSpacing,
                       k,
                       {ps[j], ps[j + 1]},
                       "copies of " + std::to_string(k) + " at positions " +
                           std::to_string(ps[j]) + " and " + std::to_string(ps[j + 1]) +
                           " are " + std::to_string(gap - 1) +
                           " apart, expected " + std::to_string(k)});
      }
    }
  }
  return out;
}

std::string to_string(const Violation& v) {
  std::ostringstream out;
  switch (v.kind) {
    case ViolationKind::WrongLength: out << "wrong-length"; break;
    case ViolationKind::ValueOutOfRange: out << "value-out-of-range"; break;
    case ViolationKind::WrongMultiplicity: out << "wrong-multiplicity"; break;
    case ViolationKind::BadSpacing: out << "bad-spacing"; break;
  }
  out << ": " << v.detail;
  return out.str();
}

}  // namespace multiperm
