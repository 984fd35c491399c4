#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "neutralscape/instance.hpp"

namespace neutralscape {

class Rng;

using Fitness = std::int64_t;
using JobIndex = std::int32_t;

/// An ordering of the N jobs; position k holds the k-th scheduled job.
class Permutation {
 public:
  Permutation() = default;
  /// Throws ContractViolation unless `order` is a bijection on [0, N).
  explicit Permutation(std::vector<JobIndex> order);

  static Permutation identity(std::size_t n);
  static Permutation random(std::size_t n, Rng& rng);

  std::size_t size() const noexcept { return order_.size(); }
  JobIndex operator[](std::size_t pos) const noexcept { return order_[pos]; }
  std::span<const JobIndex> jobs() const noexcept { return order_; }
  const std::vector<JobIndex>& order() const noexcept { return order_; }

  /// Position of `job`; linear scan.
  std::size_t position_of(JobIndex job) const;

  /// Remove the job at `from` and reinsert it so that it ends at `to`.
  void insert(std::size_t from, std::size_t to);
  void swap_positions(std::size_t a, std::size_t b);

  std::uint64_t fingerprint() const noexcept;
  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<JobIndex> order_;
};

/// Completion-time recurrence C[k][j] = max(C[k-1][j], C[k][j-1]) + p.
Fitness makespan(const Instance& instance, const Permutation& perm);

/// Same recurrence over an arbitrary (possibly partial) job sequence.
Fitness makespan(const Instance& instance, std::span<const JobIndex> sequence);

/// Head and tail completion matrices of a full permutation.
///
/// heads(k, j): completion time on machine j of the first k scheduled jobs.
/// tails(k, j): completion time of the reversed problem on the suffix that starts
/// at position k, measured from machine j to the last machine.
/// heads row 0 and tails row N are zero; fitness = heads(N, M-1) = tails(0, 0).
struct EvalState {
  std::size_t n_jobs = 0;
  std::size_t n_machines = 0;
  std::vector<Fitness> heads;  // (N+1) x M, row major
  std::vector<Fitness> tails;  // (N+1) x M, row major
  Fitness fitness = 0;

  Fitness head(std::size_t k, std::size_t j) const { return heads[k * n_machines + j]; }
  Fitness tail(std::size_t k, std::size_t j) const { return tails[k * n_machines + j]; }
};

EvalState build_eval_state(const Instance& instance, const Permutation& perm);

/// Exact makespans of every reinsertion of the job at `remove_pos`: entry t is the
/// fitness when that job ends at position t. Entry remove_pos reproduces the
/// current fitness. O(N*M) in total.
std::vector<Fitness> scan_insertions(const Instance& instance, const Permutation& perm,
                                     std::size_t remove_pos);

/// Makespans of inserting `job` at every position 0..|sequence| of a partial
/// sequence. Used by NEH.
std::vector<Fitness> insertion_costs(const Instance& instance, std::span<const JobIndex> sequence,
                                     JobIndex job);

/// Reusable workspace for repeated insertion scans around one permutation.
///
/// reset() builds the head/tail state once; scan() then reuses the unchanged
/// head prefix and tail suffix so each removal costs about N*M operations.
/// Every scan() adds N to evaluations().
class InsertionScanner {
 public:
  explicit InsertionScanner(const Instance& instance);

  void reset(const Permutation& perm);

  const Permutation& permutation() const noexcept { return perm_; }
  Fitness fitness() const noexcept { return state_.fitness; }
  const EvalState& state() const noexcept { return state_; }

  /// `costs` must have room for N entries.
  void scan(std::size_t remove_pos, std::span<Fitness> costs);

  std::uint64_t evaluations() const noexcept { return evaluations_; }
  void add_evaluations(std::uint64_t n) noexcept { evaluations_ += n; }

 private:
  const Instance* instance_;
  Permutation perm_;
  EvalState state_;
  std::vector<Fitness> reduced_heads_;
  std::vector<Fitness> reduced_tails_;
  std::vector<Fitness> front_;
  std::uint64_t evaluations_ = 0;
};

/// max(max machine load, max job length); no permutation can beat it.
Fitness makespan_lower_bound(const Instance& instance);

}  // namespace neutralscape

template <>
struct std::hash<neutralscape::Permutation> {
  std::size_t operator()(const neutralscape::Permutation& p) const noexcept {
    return static_cast<std::size_t>(p.fingerprint());
  }
};
