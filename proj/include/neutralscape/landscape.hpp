#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "neutralscape/evaluation.hpp"
#include "neutralscape/neighborhood.hpp"

namespace neutralscape {

class Rng;

/// Everything one full insertion-neighborhood scan reveals about a solution.
struct NeighborhoodSummary {
  Fitness fitness = 0;
  std::uint64_t neutral_degree = 0;
  std::uint64_t improving_degree = 0;
  /// Evolvability as an exact rational: neighbor_fitness_sum / neighbor_count.
  std::int64_t neighbor_fitness_sum = 0;
  std::uint64_t neighbor_count = 0;
  std::vector<Move> neutral_moves;
  /// Lowest-fitness improving neighbor (leftmost in enumeration order on ties).
  std::optional<Move> best_improving_move;
  Fitness best_improving_fitness = 0;
  /// False when the scan stopped early; counts then cover a prefix of the neighborhood.
  bool complete = true;

  double mean_neighbor_fitness() const noexcept {
    return neighbor_count == 0 ? 0.0
                               : static_cast<double>(neighbor_fitness_sum) /
                                     static_cast<double>(neighbor_count);
  }
  bool is_portal() const noexcept { return improving_degree > 0; }
};

/// Exact counts over the (N-1)^2 canonical insertion neighbors.
NeighborhoodSummary summarize_neighborhood(const Instance& instance, const Permutation& perm);

/// Summarizes the scanner's current permutation (scanner.reset() must have run).
/// With `stop_at_improvement`, returns as soon as a strictly improving neighbor is
/// found; the counts are then partial but best_improving_move is set. With
/// `abandon_above`, returns once neighbor_fitness_sum plus the current fitness for
/// every unscanned neighbor exceeds that value (a lower bound on the full sum
/// unless an improving neighbor is still unscanned).
NeighborhoodSummary summarize_neighborhood(InsertionScanner& scanner,
                                           bool stop_at_improvement = false,
                                           std::optional<std::int64_t> abandon_above = {});

enum class Typology : std::uint8_t { T1, T2, T3 };

std::string_view to_string(Typology t) noexcept;
std::optional<Typology> parse_typology(std::string_view text) noexcept;

struct WalkStep {
  std::uint64_t step = 0;
  Fitness fitness = 0;
  std::uint64_t neutral_degree = 0;
  /// Not persisted in the step CSV.
  std::uint64_t improving_degree = 0;
  double evolvability = 0.0;
  bool is_portal = false;
  bool revisited = false;
  /// Witness for is_portal: an improving move from this step's solution.
  std::optional<Move> improving_move;
  Fitness improving_fitness = 0;
};

struct WalkRecord {
  std::string instance_id;
  std::uint64_t walk_id = 0;
  std::size_t n_jobs = 0;
  std::size_t n_machines = 0;
  std::vector<WalkStep> steps;
  std::uint64_t start_descent_length = 0;
  Typology typology = Typology::T2;
  std::optional<std::uint64_t> first_portal_step;
};

struct WalkLabels {
  std::string instance_id;
  std::uint64_t walk_id = 0;
  std::uint64_t start_descent_length = 0;
};

/// Uniform random neutral walk of at most `max_steps` moves from a local optimum.
/// Records s_0 .. s_m (m <= max_steps); stops early when a solution has no neutral
/// neighbor. Revisits are allowed and flagged. Throws ContractViolation when `start`
/// has an improving neighbor or max_steps is zero. When `trace` is given it receives
/// the visited permutations, one per recorded step.
WalkRecord neutral_walk(const Instance& instance, const Permutation& start,
                        std::uint64_t max_steps, Rng& rng, const WalkLabels& labels = {},
                        std::vector<Permutation>* trace = nullptr);

Typology classify_typology(const WalkRecord& record) noexcept;
std::optional<std::uint64_t> steps_to_first_portal(const WalkRecord& record) noexcept;

/// (evolvability, forward distance to the nearest portal at or after the step)
/// for every step up to the last portal. Empty when the walk saw no portal.
std::vector<std::pair<double, std::uint64_t>> portal_distance_series(const WalkRecord& record);

/// Fraction of recorded steps whose solution already appeared earlier in the walk.
double revisit_rate(const WalkRecord& record) noexcept;

}  // namespace neutralscape
