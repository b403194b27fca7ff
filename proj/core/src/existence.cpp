#include "multiperm/existence.hpp"

#include <cmath>
#include <sstream>

namespace multiperm {
namespace {

bool is_prime(int x) {
  if (x < 2) return false;
  for (int d = 2; d * d <= x; ++d) {
    if (x % d == 0) return false;
  }
  return true;
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

ExistenceVerdict necessary_condition(int multiplicity, int max_value) {
  if (multiplicity < 2) {
    throw DomainError("multiplicity must be at least 2, got " +
                      std::to_string(multiplicity));
  }
  if (max_value < 1) {
    throw DomainError("largest value must be at least 1, got " +
                      std::to_string(max_value));
  }
  const int m = multiplicity;
  const int n = max_value;

  if (is_prime(m)) {
    const int modulus = m * m;
    const int r = n % modulus;  // n >= 1, so this is the non-negative residue
    const bool allowed = r == modulus - 1 || r <= m - 2;
    std::ostringstream detail;
    detail << "n mod " << modulus << " = " << r << "; admissible residues are "
           << modulus - 1 << ", 0.." << m - 2;
    return {allowed ? ExistenceStatus::Possible : ExistenceStatus::RuledOut,
            ExistenceRule::PrimeModulus, detail.str()};
  }
  if (m == 4) {
    const int r = n % 8;
    const bool allowed = (r == 0 || r == 7) && n >= 15;
    std::ostringstream detail;
    detail << "n mod 8 = " << r << "; admissible are n = 8t or 8t-1 with t >= 2 "
           << "(n >= 15)";
    return {allowed ? ExistenceStatus::Possible : ExistenceStatus::RuledOut,
            ExistenceRule::MFourModulus, detail.str()};
  }
  return {ExistenceStatus::Unknown, ExistenceRule::None,
          "no proven condition for composite multiplicity " + std::to_string(m)};
}

BigInt factorial_bound(int max_value) {
  if (max_value < 2) {
    throw DomainError("factorial bound needs n >= 2 (n!/2 is not integral below)");
  }
  return factorial(max_value) / 2;
}

double asymptotic_estimate(int multiplicity, int max_value) {
  if (multiplicity != 2 && multiplicity != 3) {
    throw DomainError("asymptotic estimate is available for multiplicity 2 or 3 only");
  }
  if (max_value < 1) {
    throw DomainError("largest value must be at least 1, got " +
                      std::to_string(max_value));
  }
  const BigInt numerator = factorial(max_value);
  const int exponent = multiplicity == 2 ? max_value : 2 * max_value + 1;
  // n! exactly, then one binary-point shift; the only rounding is the final
  // conversion to double.
  return std::ldexp(numerator.convert_to<double>(), -exponent);
}

double estimate_ratio(std::uint64_t actual, double estimate) {
  if (!(estimate > 0.0)) {
    throw DomainError("estimate must be positive");
  }
  return static_cast<double>(actual) / estimate;
}

std::string to_string(ExistenceStatus status) {
  switch (status) {
    case ExistenceStatus::RuledOut: return "ruled-out";
    case ExistenceStatus::Possible: return "possible";
    case ExistenceStatus::Unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(const ExistenceVerdict& verdict) {
  return to_string(verdict.status) + " (" + verdict.detail + ")";
}

}  // namespace multiperm
