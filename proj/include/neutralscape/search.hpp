#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "neutralscape/evaluation.hpp"

namespace neutralscape {

class Rng;

enum class Acceptance : std::uint8_t { better, metropolis, better_or_equal };

std::string_view to_string(Acceptance a) noexcept;
std::optional<Acceptance> parse_acceptance(std::string_view text) noexcept;

struct SearchConfig {
  std::uint64_t seed = 1;
  std::uint64_t max_evaluations = 1'000'000;
  /// Number of random transpose/exchange moves per perturbation.
  std::uint32_t perturbation_strength = 3;
  /// Constant Metropolis temperature; unset means default_temperature(instance).
  std::optional<double> metropolis_temperature;
  std::uint32_t max_neutral_steps = 10;
  Acceptance acceptance = Acceptance::metropolis;
  /// 0: exact evolvability over the whole neighborhood; k > 0: mean of k samples.
  std::uint32_t sampled_evolvability = 0;
  bool record_trajectory = false;
};

/// Throws ContractViolation on max_evaluations == 0, perturbation_strength == 0,
/// max_neutral_steps == 0 or a negative temperature.
void validate(const SearchConfig& config);

/// sum(p_ij) / (10 * N * M).
double default_temperature(const Instance& instance);

/// Metropolis rule: always true for delta <= 0, else true with probability
/// exp(-delta / temperature). `uniform01` is the random draw in [0, 1).
bool metropolis_accepts(Fitness delta, double temperature, double uniform01) noexcept;

struct TrajectoryEvent {
  std::uint64_t iteration = 0;
  std::uint64_t evaluations = 0;
  Fitness fitness = 0;
  Fitness best = 0;
  std::string event;
};

struct SearchResult {
  Permutation best_perm;
  Fitness best_fitness = 0;
  std::uint64_t evaluations_used = 0;
  std::vector<std::uint64_t> descent_lengths;
  std::vector<TrajectoryEvent> trajectory;
  /// Fitness of every accepted incumbent, in order.
  std::vector<Fitness> incumbents;
  /// False when the budget cut the last descent short.
  bool complete = true;
  /// best_perm was certified by a full scan without an improving neighbor.
  bool local_optimum = false;
};

inline constexpr std::uint64_t unlimited_evaluations = std::numeric_limits<std::uint64_t>::max();

/// Repeatedly moves to the best strictly improving insertion neighbor
/// (uniform tie-break among equally good ones).
SearchResult steepest_descent(const Instance& instance, const Permutation& start, Rng& rng,
                              std::uint64_t max_evaluations = unlimited_evaluations);

/// Passes over the jobs in a fresh random order; each job is reinserted at its
/// best position when that strictly improves. Stops after a pass without improvement.
SearchResult first_improvement_descent(const Instance& instance, const Permutation& start,
                                       Rng& rng,
                                       std::uint64_t max_evaluations = unlimited_evaluations);

/// NEH: jobs by decreasing total processing time (stable), each inserted at the
/// leftmost position of minimum partial makespan. Adds the number of insertion
/// evaluations to *evaluations when given.
Permutation neh_construct(const Instance& instance, std::uint64_t* evaluations = nullptr);

/// Applies `strength` moves, each a uniformly chosen transpose or exchange.
void perturb(Permutation& perm, std::uint32_t strength, Rng& rng);

/// Iterated local search: NEH, first-improvement descent, then
/// perturb / descend / accept until the budget is spent.
SearchResult ils_stutzle(const Instance& instance, const SearchConfig& config);

/// Random restarts of first-improvement descent until the budget is spent.
SearchResult restart_descent(const Instance& instance, const SearchConfig& config);

/// Descends from a random start, then repeatedly walks the neutral network toward
/// lower evolvability until a portal is found (take it and descend) or
/// max_neutral_steps pass (perturb and descend). Accepted incumbents never worsen.
SearchResult neutral_guided_search(const Instance& instance, const SearchConfig& config);

}  // namespace neutralscape
