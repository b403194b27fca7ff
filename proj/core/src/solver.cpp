#include "multiperm/solver.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cassert>
#include <chrono>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <type_traits>

#include "multiperm/sequence.hpp"

namespace multiperm {
namespace {

using Clock = std::chrono::steady_clock;

// Values are placed in descending order n..1: large values are the most
// constrained, so conflicts surface early. A value k whose first copy sits at
// 0-based position theta occupies theta + j*(k+1) for j = 0..m-1; the whole
// occurrence set is one precomputed bit pattern shifted left by theta, and a
// placement is feasible iff pattern & occupancy == 0.
template <class Bits>
class Engine {
 public:
  explicit Engine(const Problem& p)
      : multiplicity_(p.multiplicity), max_value_(p.max_value), total_(p.positions()) {
    pattern_.assign(static_cast<std::size_t>(max_value_) + 1, Bits{0});
    last_theta_.assign(static_cast<std::size_t>(max_value_) + 1, -1);
    for (int k = 1; k <= max_value_; ++k) {
      const int span = (multiplicity_ - 1) * (k + 1);
      if (span >= total_) continue;  // k cannot be placed at all
      Bits pat{0};
      for (int j = 0; j < multiplicity_; ++j) {
        pat |= Bits{1} << (j * (k + 1));
      }
      pattern_[k] = pat;
      last_theta_[k] = total_ - 1 - span;
    }
    board_.fill(0);
  }

  void set_cancellation(const std::atomic<bool>* flag,
                        std::optional<Clock::time_point> deadline) {
    cancel_flag_ = flag;
    deadline_ = deadline;
  }

  void reset_counters() { raw_ = palindromes_ = canonical_ = nodes_ = 0; }

  std::uint64_t raw() const { return raw_; }
  std::uint64_t palindromes() const { return palindromes_; }
  std::uint64_t canonical() const { return canonical_; }
  std::uint64_t nodes() const { return nodes_; }

  // Runs the search below `prefix`, counting raw solutions and palindromes;
  // with classify_canonical each leaf is also classified by the canonical
  // rule. The emit callback (nullable) receives every canonical leaf and
  // returns false to stop the whole run early.
  template <class Emit>
  void run(const JobPrefix& prefix, bool classify_canonical, Emit&& emit) {
    occupied_ = Bits{0};
    board_.fill(0);
    for (const auto& [value, first_pos] : prefix.placements) {
      ++nodes_;
      const int theta = first_pos - 1;
      assert(value >= 1 && value <= max_value_);
      assert(theta >= 0 && theta <= last_theta_[value]);
      const Bits mask = pattern_[value] << theta;
      assert((occupied_ & mask) == Bits{0});
      occupied_ |= mask;
      stamp(value, theta, static_cast<std::int8_t>(value));
    }
    descend(max_value_ - prefix.depth(), classify_canonical, emit);
  }

 private:
  template <class Emit>
  bool descend(int k, bool classify_canonical, Emit&& emit) {
    if (k == 0) return handle_leaf(classify_canonical, emit);
    const Bits pat = pattern_[k];
    const int top = last_theta_[k];
    for (int theta = 0; theta <= top; ++theta) {
      ++nodes_;
      if ((nodes_ & kCancelCheckMask) == 0) check_cancelled();
      const Bits mask = pat << theta;
      if ((occupied_ & mask) != Bits{0}) continue;
      occupied_ |= mask;
      stamp(k, theta, static_cast<std::int8_t>(k));
      const bool keep_going = descend(k - 1, classify_canonical, emit);
      occupied_ &= ~mask;
      stamp(k, theta, 0);
      if (!keep_going) return false;
    }
    return true;
  }

  template <class Emit>
  bool handle_leaf(bool classify_canonical, Emit&& emit) {
    ++raw_;
    const bool palindrome = board_is_palindrome();
    if (palindrome) ++palindromes_;
    if (classify_canonical) {
      if (board_is_canonical()) {
        ++canonical_;
        if constexpr (!std::is_same_v<std::decay_t<Emit>, std::nullptr_t>) {
          return emit(board_.data(), total_);
        }
      }
    }
    return true;
  }

  void stamp(int value, int theta, std::int8_t mark) {
    for (int j = 0; j < multiplicity_; ++j) {
      board_[static_cast<std::size_t>(theta + j * (value + 1))] = mark;
    }
  }

  bool board_is_palindrome() const {
    for (int i = 0, j = total_ - 1; i < j; ++i, --j) {
      if (board_[i] != board_[j]) return false;
    }
    return true;
  }

  // Inline version of the canonical rule on the raw board: smaller index of
  // the first n wins, then greater initial element, then lexicographically
  // smaller sequence.
  bool board_is_canonical() const {
    int first = 0;
    while (board_[first] != max_value_) ++first;
    int last = total_ - 1;
    while (board_[last] != max_value_) --last;
    const int reverse_first = total_ - 1 - last;
    if (first != reverse_first) return first < reverse_first;
    if (board_[0] != board_[total_ - 1]) return board_[0] > board_[total_ - 1];
    for (int i = 0, j = total_ - 1; i < total_; ++i, --j) {
      if (board_[i] != board_[j]) return board_[i] < board_[j];
    }
    return true;  // palindrome
  }

  void check_cancelled() const {
    if (cancel_flag_ != nullptr && cancel_flag_->load(std::memory_order_relaxed)) {
      throw DeadlineExceeded("search cancelled");
    }
    if (deadline_ && Clock::now() > *deadline_) {
      throw DeadlineExceeded("search deadline exceeded");
    }
  }

  static constexpr std::uint64_t kCancelCheckMask = 0x3FFF;

  int multiplicity_;
  int max_value_;
  int total_;
  std::vector<Bits> pattern_;
  std::vector<int> last_theta_;
  Bits occupied_{0};
  std::array<std::int8_t, kMaxPositions> board_{};
  std::uint64_t raw_ = 0;
  std::uint64_t palindromes_ = 0;
  std::uint64_t canonical_ = 0;
  std::uint64_t nodes_ = 0;
  const std::atomic<bool>* cancel_flag_ = nullptr;
  std::optional<Clock::time_point> deadline_;
};

using WideBits = unsigned __int128;

struct ShardResult {
  std::uint64_t raw = 0;
  std::uint64_t palindromes = 0;
  std::uint64_t canonical = 0;
  std::uint64_t nodes = 0;
  std::vector<Sequence> emitted;
};

template <class Bits>
std::vector<JobPrefix> split_jobs_impl(const Problem& p, int depth) {
  std::vector<Bits> pattern(static_cast<std::size_t>(p.max_value) + 1, Bits{0});
  std::vector<int> last_theta(static_cast<std::size_t>(p.max_value) + 1, -1);
  for (int k = 1; k <= p.max_value; ++k) {
    const int span = (p.multiplicity - 1) * (k + 1);
    if (span >= p.positions()) continue;
    Bits pat{0};
    for (int j = 0; j < p.multiplicity; ++j) pat |= Bits{1} << (j * (k + 1));
    pattern[k] = pat;
    last_theta[k] = p.positions() - 1 - span;
  }

  struct Partial {
    Bits occupied;
    JobPrefix prefix;
  };
  std::vector<Partial> level{{Bits{0}, JobPrefix{}}};
  for (int d = 0; d < depth; ++d) {
    const int k = p.max_value - d;
    std::vector<Partial> next;
    for (const Partial& partial : level) {
      for (int theta = 0; theta <= last_theta[k]; ++theta) {
        const Bits mask = pattern[k] << theta;
        if ((partial.occupied & mask) != Bits{0}) continue;
        Partial extended = partial;
        extended.occupied |= mask;
        extended.prefix.placements.emplace_back(k, theta + 1);
        next.push_back(std::move(extended));
      }
    }
    level = std::move(next);
    if (level.empty()) break;
  }
  std::vector<JobPrefix> out;
  out.reserve(level.size());
  for (Partial& partial : level) out.push_back(std::move(partial.prefix));
  return out;
}

// Runs every prefix on `jobs` worker threads; results land in prefix order so
// downstream consumers are schedule-independent.
template <class Bits, class MakeEmit>
std::vector<ShardResult> run_sharded(const Problem& p,
                                     const std::vector<JobPrefix>& prefixes,
                                     int jobs, bool classify_canonical,
                                     std::optional<Clock::time_point> deadline,
                                     MakeEmit&& make_emit) {
  std::vector<ShardResult> shards(prefixes.size());
  std::atomic<bool> cancel{false};
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&]() {
    Engine<Bits> engine(p);
    engine.set_cancellation(&cancel, deadline);
    try {
      for (;;) {
        const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= prefixes.size()) return;
        engine.reset_counters();
        auto emit = make_emit(shards[i]);
        engine.run(prefixes[i], classify_canonical, emit);
        shards[i].raw = engine.raw();
        shards[i].palindromes = engine.palindromes();
        shards[i].canonical = engine.canonical();
        shards[i].nodes = engine.nodes();
      }
    } catch (...) {
      {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
      cancel.store(true, std::memory_order_relaxed);
    }
  };

  const int worker_count =
      std::max(1, std::min<int>(jobs, static_cast<int>(prefixes.size())));
  if (worker_count == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(worker_count));
    for (int t = 0; t < worker_count; ++t) threads.emplace_back(worker);
    for (auto& thread : threads) thread.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return shards;
}

int effective_split_depth(const Problem& p, int jobs, int split_depth) {
  if (split_depth > 0) return std::min(split_depth, p.max_value);
  if (jobs > 1) return std::min(2, p.max_value);
  return 0;
}

void validate_options(const Problem& p, int jobs, int split_depth) {
  make_problem(p.multiplicity, p.max_value);  // capacity / domain gate
  if (jobs < 1) throw DomainError("jobs must be at least 1");
  if (split_depth < 0 || split_depth > p.max_value) {
    throw DomainError("split depth " + std::to_string(split_depth) +
                      " outside 0.." + std::to_string(p.max_value));
  }
}

struct NoEmit {
  std::nullptr_t operator()(ShardResult&) const { return nullptr; }
};

template <class Bits>
CountReport count_impl(const Problem& p, const SolveOptions& options) {
  const int depth = effective_split_depth(p, options.jobs, options.split_depth);
  const std::vector<JobPrefix> prefixes =
      depth == 0 ? std::vector<JobPrefix>{JobPrefix{}} : split_jobs_impl<Bits>(p, depth);
  const bool classify = options.strategy == CountStrategy::CanonicalFilter;
  const auto shards = run_sharded<Bits>(p, prefixes, options.jobs, classify,
                                        options.deadline, NoEmit{});
  CountReport report;
  std::uint64_t filtered = 0;
  for (const ShardResult& shard : shards) {
    report.raw_count += shard.raw;
    report.palindrome_count += shard.palindromes;
    report.nodes_visited += shard.nodes;
    filtered += shard.canonical;
  }
  if ((report.raw_count + report.palindrome_count) % 2 != 0) {
    throw std::logic_error("raw + palindrome count is odd; reversal pairing broken");
  }
  report.canonical_count = (report.raw_count + report.palindrome_count) / 2;
  if (classify && filtered != report.canonical_count) {
    throw std::logic_error("canonical filter disagrees with raw halving: " +
                           std::to_string(filtered) + " vs " +
                           std::to_string(report.canonical_count));
  }
  if ((p.multiplicity == 2 || p.multiplicity == 3) && p.max_value > 3 &&
      report.palindrome_count != 0) {
    // spacing forbids equal end elements for these multiplicities
    throw std::logic_error("unexpected palindromic solution for (m, n) = (" +
                           std::to_string(p.multiplicity) + ", " +
                           std::to_string(p.max_value) + ")");
  }
  return report;
}

template <class Bits>
std::uint64_t enumerate_impl(const Problem& p, const SolutionSink& sink,
                             const EnumerateOptions& options) {
  const int depth = effective_split_depth(p, options.jobs, options.split_depth);
  const std::vector<JobPrefix> prefixes =
      depth == 0 ? std::vector<JobPrefix>{JobPrefix{}} : split_jobs_impl<Bits>(p, depth);

  const std::uint64_t limit =
      options.limit.value_or(std::numeric_limits<std::uint64_t>::max());
  if (limit == 0) return 0;

  // Streaming fast path: single worker, natural order, early stop at limit.
  if (!options.sorted && options.jobs <= 1) {
    Engine<Bits> engine(p);
    std::atomic<bool> cancel{false};
    engine.set_cancellation(&cancel, options.deadline);
    std::uint64_t emitted = 0;
    Sequence scratch(static_cast<std::size_t>(p.positions()));
    auto emit = [&](const std::int8_t* board, int total) {
      scratch.assign(board, board + total);
      sink(scratch);
      ++emitted;
      return emitted < limit;
    };
    for (const JobPrefix& prefix : prefixes) {
      engine.run(prefix, /*classify_canonical=*/true, emit);
      if (emitted >= limit) break;
    }
    return emitted;
  }

  auto make_emit = [&](ShardResult& shard) {
    return [&shard](const std::int8_t* board, int total) {
      shard.emitted.emplace_back(board, board + total);
      return true;
    };
  };
  auto shards = run_sharded<Bits>(p, prefixes, options.jobs,
                                  /*classify_canonical=*/true, options.deadline,
                                  make_emit);
  std::vector<Sequence> all;
  for (ShardResult& shard : shards) {
    all.insert(all.end(), std::make_move_iterator(shard.emitted.begin()),
               std::make_move_iterator(shard.emitted.end()));
  }
  if (options.sorted) std::sort(all.begin(), all.end());
  std::uint64_t emitted = 0;
  for (const Sequence& s : all) {
    if (emitted >= limit) break;
    sink(s);
    ++emitted;
  }
  return emitted;
}

}  // namespace

std::vector<JobPrefix> split_jobs(const Problem& p, int depth) {
  make_problem(p.multiplicity, p.max_value);
  if (depth < 0 || depth > p.max_value) {
    throw DomainError("split depth " + std::to_string(depth) + " outside 0.." +
                      std::to_string(p.max_value));
  }
  if (p.positions() <= 64) return split_jobs_impl<std::uint64_t>(p, depth);
  return split_jobs_impl<WideBits>(p, depth);
}

CountReport count(const Problem& p, const SolveOptions& options) {
  validate_options(p, options.jobs, options.split_depth);
  const auto start = Clock::now();
  CountReport report = p.positions() <= 64 ? count_impl<std::uint64_t>(p, options)
                                           : count_impl<WideBits>(p, options);
  report.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

std::uint64_t enumerate(const Problem& p, const SolutionSink& sink,
                        const EnumerateOptions& options) {
  validate_options(p, options.jobs, options.split_depth);
  if (p.positions() <= 64) return enumerate_impl<std::uint64_t>(p, sink, options);
  return enumerate_impl<WideBits>(p, sink, options);
}

CountReport brute_force_oracle(const Problem& p,
                               std::optional<Clock::time_point> deadline) {
  make_problem(p.multiplicity, p.max_value);
  if (p.positions() > 30) {
    throw DomainError("oracle is restricted to m*n <= 30, got " +
                      std::to_string(p.positions()));
  }
  const auto start = Clock::now();
  const int total = p.positions();
  const int n = p.max_value;
  const int m = p.multiplicity;

  Sequence board(static_cast<std::size_t>(total), 0);
  std::vector<bool> placed(static_cast<std::size_t>(n) + 1, false);
  CountReport report;

  auto leaf = [&]() {
    ++report.raw_count;
    if (board == reversed(board)) ++report.palindrome_count;
    if (is_canonical(p, board)) ++report.canonical_count;
  };

  // Fill the leftmost empty cell with some still-unplaced value; every
  // solution assigns that cell exactly one value, so each is reached once.
  auto recurse = [&](auto&& self, int filled) -> void {
    if (filled == total) {
      leaf();
      return;
    }
    int cell = 0;
    while (board[cell] != 0) ++cell;
    for (int k = 1; k <= n; ++k) {
      if (placed[k]) continue;
      ++report.nodes_visited;
      if ((report.nodes_visited & 0x3FFF) == 0 && deadline &&
          Clock::now() > *deadline) {
        throw DeadlineExceeded("oracle deadline exceeded");
      }
      const int span = (m - 1) * (k + 1);
      if (cell + span >= total) continue;
      bool free = true;
      for (int j = 1; j < m && free; ++j) {
        free = board[cell + j * (k + 1)] == 0;
      }
      if (!free) continue;
      for (int j = 0; j < m; ++j) board[cell + j * (k + 1)] = k;
      placed[k] = true;
      self(self, filled + m);
      placed[k] = false;
      for (int j = 0; j < m; ++j) board[cell + j * (k + 1)] = 0;
    }
  };
  recurse(recurse, 0);

  if (report.raw_count + report.palindrome_count != 2 * report.canonical_count) {
    throw std::logic_error("oracle reversal pairing identity failed");
  }
  report.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

}  // namespace multiperm
