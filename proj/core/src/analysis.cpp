#include "multiperm/analysis.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "multiperm/verifier.hpp"

namespace multiperm {
namespace {

void require_solution(const Problem& p, const Sequence& s, const char* what) {
  const auto violations = verify(p, s);
  if (!violations.empty()) {
    throw DomainError(std::string(what) + " requires a valid solution: " +
                      to_string(violations.front()));
  }
}

}  // namespace

CongruentialPartition congruential_partition(const Problem& p, const Sequence& s) {
  require_solution(p, s, "congruential partition");
  const int m = p.multiplicity;
  const int n = p.max_value;

  CongruentialPartition part;
  part.classes.resize(static_cast<std::size_t>(m));
  part.per_class_value_counts.assign(static_cast<std::size_t>(m),
                                     std::vector<int>(static_cast<std::size_t>(n) + 1, 0));
  // 1-based index i belongs to residue class i mod m; classes are listed in
  // the order 1, 2, ..., m-1, 0, i.e. the class containing index 1 first.
  for (int i = 1; i <= p.positions(); ++i) {
    const int r = i % m;
    const int slot = r == 0 ? m - 1 : r - 1;
    const int value = s[static_cast<std::size_t>(i - 1)];
    part.classes[static_cast<std::size_t>(slot)].push_back(value);
    ++part.per_class_value_counts[static_cast<std::size_t>(slot)]
                                 [static_cast<std::size_t>(value)];
  }
  return part;
}

ResidueCheckResult residue_distribution_check(const CongruentialPartition& part,
                                              const Problem& p) {
  const int m = p.multiplicity;
  const int n = p.max_value;
  for (int k = 1; k <= n; ++k) {
    if ((k + 1) % m != 0) {
      // indices of the m copies form a complete residue system mod m
      for (std::size_t c = 0; c < part.classes.size(); ++c) {
        const int got = part.per_class_value_counts[c][static_cast<std::size_t>(k)];
        if (got != 1) {
          std::ostringstream detail;
          detail << "value " << k << " occurs " << got << " times in class " << c + 1
                 << ", expected exactly 1";
          return {false, detail.str()};
        }
      }
    } else {
      // all copies share one index residue, so one class holds all of them
      int full_classes = 0;
      for (std::size_t c = 0; c < part.classes.size(); ++c) {
        const int got = part.per_class_value_counts[c][static_cast<std::size_t>(k)];
        if (got == m) {
          ++full_classes;
        } else if (got != 0) {
          std::ostringstream detail;
          detail << "value " << k << " is split across classes (" << got
                 << " copies in class " << c + 1 << ")";
          return {false, detail.str()};
        }
      }
      if (full_classes != 1) {
        std::ostringstream detail;
        detail << "value " << k << " concentrated in " << full_classes
               << " classes, expected exactly 1";
        return {false, detail.str()};
      }
    }
  }
  return {true, ""};
}

PhiSequence phi_sequence(const Sequence& s, int max_value) {
  const std::vector<int> theta = first_occurrences(s, max_value);
  std::vector<std::pair<int, int>> by_first;  // (first index, value)
  by_first.reserve(static_cast<std::size_t>(max_value));
  for (int k = 1; k <= max_value; ++k) by_first.emplace_back(theta[k], k);
  std::sort(by_first.begin(), by_first.end());
  PhiSequence phi;
  phi.order.reserve(by_first.size());
  for (const auto& [idx, value] : by_first) phi.order.push_back(value);
  return phi;
}

MuSequence mu_sequence(const Sequence& s, int max_value) {
  const int n = max_value;
  if (static_cast<int>(s.size()) != 2 * n) {
    throw DomainError("mu-sequence is defined for multiplicity 2 only (expected " +
                      std::to_string(2 * n) + " terms, got " +
                      std::to_string(s.size()) + ")");
  }
  require_solution(Problem{2, n}, s, "mu-sequence");

  const std::vector<int> theta = first_occurrences(s, n);
  // value k covers the closed index span [theta_k, theta_k + k + 1]; sweep the
  // span endpoints instead of testing every (i, k) pair
  std::vector<int> diff(static_cast<std::size_t>(2 * n) + 2, 0);
  for (int k = 1; k <= n; ++k) {
    const int lo = theta[k];
    const int hi = theta[k] + k + 1;  // second copy's index; <= 2n in a solution
    diff[static_cast<std::size_t>(lo)] += 1;
    diff[static_cast<std::size_t>(hi) + 1] -= 1;
  }
  MuSequence out;
  out.mu.resize(static_cast<std::size_t>(2 * n));
  int running = 0;
  for (int i = 1; i <= 2 * n; ++i) {
    running += diff[static_cast<std::size_t>(i)];
    out.mu[static_cast<std::size_t>(i - 1)] = running;
  }
  out.weight = std::accumulate(out.mu.begin(), out.mu.end(), 0);
  out.peak_value = *std::max_element(out.mu.begin(), out.mu.end());
  for (int i = 1; i <= 2 * n; ++i) {
    if (out.mu[static_cast<std::size_t>(i - 1)] == out.peak_value) {
      out.peak_indices.push_back(i);
    }
  }
  out.peak_index = out.peak_indices.front();
  return out;
}

ConjectureVerdict conjecture_check(const MuSequence& mu, int max_value) {
  const int n = max_value;
  const auto& v = mu.mu;
  const int len = static_cast<int>(v.size());
  ConjectureVerdict out;
  std::ostringstream detail;

  out.weight_ok = mu.weight == (n * n + 5 * n) / 2;
  if (!out.weight_ok) {
    detail << "weight " << mu.weight << " != " << (n * n + 5 * n) / 2 << "; ";
  }

  const int expected_peak = (n + 3) / 2;
  const bool attained_early =
      std::any_of(mu.peak_indices.begin(), mu.peak_indices.end(),
                  [n](int i) { return i <= n; });
  out.peak_value_ok = mu.peak_value == expected_peak && attained_early;
  if (!out.peak_value_ok) {
    detail << "peak " << mu.peak_value << " at index " << mu.peak_index
           << " (expected " << expected_peak << " attained at some index <= " << n
           << "); ";
  }

  // Pattern: mu1 < mu2 <= ... <= peak (plateau) >= ... >= mu_{2n-1} > mu_{2n}.
  bool unimodal = len >= 2 && v.front() < v[1] && v[static_cast<std::size_t>(len) - 2] > v.back();
  const int first_peak = mu.peak_indices.front();
  const int last_peak = mu.peak_indices.back();
  for (int i = first_peak; i < last_peak && unimodal; ++i) {
    unimodal = v[static_cast<std::size_t>(i) - 1] == mu.peak_value &&
               v[static_cast<std::size_t>(i)] == mu.peak_value;
  }
  for (int i = 1; i < first_peak && unimodal; ++i) {
    unimodal = v[static_cast<std::size_t>(i) - 1] <= v[static_cast<std::size_t>(i)];
  }
  for (int i = last_peak; i < len && unimodal; ++i) {
    unimodal = v[static_cast<std::size_t>(i) - 1] >= v[static_cast<std::size_t>(i)];
  }
  out.unimodal_ok = unimodal;
  if (!unimodal) detail << "mu-sequence is not unimodal; ";

  out.counterexample_detail = detail.str();
  return out;
}

AnalysisReport analyze(const Problem& p, const Sequence& s) {
  require_solution(p, s, "analysis");
  AnalysisReport report;
  report.theta = first_occurrences(s, p.max_value);
  report.partition = congruential_partition(p, s);
  report.residue = residue_distribution_check(report.partition, p);
  report.phi = phi_sequence(s, p.max_value);
  if (p.multiplicity == 2) {
    report.mu = mu_sequence(s, p.max_value);
    report.verdict = conjecture_check(*report.mu, p.max_value);
  }
  return report;
}

BatchReport analyze_batch(const Problem& p, std::span<const Sequence> solutions) {
  BatchReport batch;
  batch.mu_checked = p.multiplicity == 2;
  batch.reports.reserve(solutions.size());
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    const auto violations = verify(p, solutions[i]);
    if (!violations.empty()) {
      throw DomainError("record " + std::to_string(i + 1) +
                        " is not a valid solution: " + to_string(violations.front()));
    }
    AnalysisReport report = analyze(p, solutions[i]);
    ++batch.analyzed;
    if (!report.residue.ok) ++batch.residue_failures;

    std::vector<int> sorted_phi = report.phi.order;
    std::sort(sorted_phi.begin(), sorted_phi.end());
    bool phi_is_permutation = static_cast<int>(sorted_phi.size()) == p.max_value;
    for (int k = 1; k <= p.max_value && phi_is_permutation; ++k) {
      phi_is_permutation = sorted_phi[static_cast<std::size_t>(k - 1)] == k;
    }
    if (!phi_is_permutation) ++batch.phi_failures;

    if (report.verdict) {
      if (!report.verdict->weight_ok) ++batch.weight_failures;
      if (report.verdict->peak_value_ok) ++batch.peak_value_ok;
      if (report.verdict->unimodal_ok) ++batch.unimodal_ok;
    }
    batch.reports.push_back(std::move(report));
  }
  return batch;
}

}  // namespace multiperm
