#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "multiperm/problem.hpp"
#include "multiperm/sequence.hpp"

namespace multiperm {

/// Split of a solution into m subsequences by 1-based index residue mod m,
/// classes ordered r = 1, 2, ..., m-1, 0 (the class of index 1 first).
/// Interleaving the classes back together reconstructs the solution.
struct CongruentialPartition {
  std::vector<Sequence> classes;
  // per_class_value_counts[c][k] = occurrences of value k in class c
  // (k in 1..n, slot 0 unused).
  std::vector<std::vector<int>> per_class_value_counts;
};

// Requires s to be a solution of p (DomainError otherwise).
CongruentialPartition congruential_partition(const Problem& p, const Sequence& s);

struct ResidueCheckResult {
  bool ok = false;
  std::string detail;
};

// For a valid solution: each value k with k+1 not divisible by m lands exactly
// once in every class; each k with m | k+1 lands with all m copies in exactly
// one class.
ResidueCheckResult residue_distribution_check(const CongruentialPartition& part,
                                              const Problem& p);

// The n distinct values in order of first appearance; always a permutation of
// 1..n for a valid solution.
struct PhiSequence {
  std::vector<int> order;
};

PhiSequence phi_sequence(const Sequence& s, int max_value);

/// Coverage profile of a (2,n) solution: mu[i-1] counts the values k whose
/// closed index span [theta_k, theta_k + k + 1] contains i, for i = 1..2n.
/// Each value covers a span of length k+2, which forces the total weight
/// sum(mu) = (n^2 + 5n) / 2.
struct MuSequence {
  std::vector<int> mu;
  int weight = 0;
  int peak_value = 0;
  int peak_index = 0;             // smallest attaining index, 1-based
  std::vector<int> peak_indices;  // every attaining index
};

// Requires s to be a valid (2, n) solution: any other length is unsupported
// (DomainError mentioning the multiplicity), an invalid sequence of the right
// shape is a DomainError.
MuSequence mu_sequence(const Sequence& s, int max_value);

// weight_ok is an identity and must hold for every valid (2,n) solution; the
// peak and unimodality flags are conjecture checks and may be false.
struct ConjectureVerdict {
  bool weight_ok = false;
  bool peak_value_ok = false;  // peak == floor((n+3)/2) with an attaining index <= n
  bool unimodal_ok = false;    // mu1 < mu2 <= ... <= peak >= ... >= mu_{2n-1} > mu_{2n}
  std::string counterexample_detail;
};

ConjectureVerdict conjecture_check(const MuSequence& mu, int max_value);

// Everything derived from one solution. mu and verdict are absent for m != 2.
struct AnalysisReport {
  std::vector<int> theta;
  CongruentialPartition partition;
  ResidueCheckResult residue;
  PhiSequence phi;
  std::optional<MuSequence> mu;
  std::optional<ConjectureVerdict> verdict;
};

AnalysisReport analyze(const Problem& p, const Sequence& s);

struct BatchReport {
  std::uint64_t analyzed = 0;
  std::uint64_t weight_failures = 0;   // must stay 0
  std::uint64_t residue_failures = 0;  // must stay 0
  std::uint64_t phi_failures = 0;      // must stay 0
  std::uint64_t peak_value_ok = 0;
  std::uint64_t unimodal_ok = 0;
  bool mu_checked = false;  // false when m != 2 (mu tallies skipped)
  std::vector<AnalysisReport> reports;
};

// Analyzes every solution; a verification failure aborts with a DomainError
// naming the offending 1-based record index.
BatchReport analyze_batch(const Problem& p, std::span<const Sequence> solutions);

}  // namespace multiperm
