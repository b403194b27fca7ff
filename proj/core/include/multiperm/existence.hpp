#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "multiperm/problem.hpp"

namespace multiperm {

using BigInt = boost::multiprecision::cpp_int;

enum class ExistenceStatus { RuledOut, Possible, Unknown };
enum class ExistenceRule { PrimeModulus, MFourModulus, None };

// RuledOut only ever comes from a proven necessary condition. Possible never
// asserts a solution exists: (3,8) satisfies the prime condition and still
// has none.
struct ExistenceVerdict {
  ExistenceStatus status = ExistenceStatus::Unknown;
  ExistenceRule rule = ExistenceRule::None;
  std::string detail;
};

// Prime m: possible iff n mod m^2 is in {m^2-1, 0, 1, ..., m-2}.
// m = 4: possible iff n mod 8 is in {0, 7} and n >= 15.
// Other composite m: unknown, no proven condition.
ExistenceVerdict necessary_condition(int multiplicity, int max_value);

// Exact n!/2 (requires n >= 2). Upper bound: p(m,n) < n!/2 for all m.
BigInt factorial_bound(int max_value);

// Conjectured asymptotics, computed exactly then converted: n!/2^n for m = 2,
// n!/2^(2n+1) for m = 3. Other multiplicities are unsupported. The m = 3 form
// is weakly supported by data; callers should label it conjectural.
double asymptotic_estimate(int multiplicity, int max_value);

// actual / estimate; requires estimate > 0.
double estimate_ratio(std::uint64_t actual, double estimate);

std::string to_string(ExistenceStatus status);
std::string to_string(const ExistenceVerdict& verdict);

}  // namespace multiperm
