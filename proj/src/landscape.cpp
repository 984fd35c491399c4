#include "neutralscape/landscape.hpp"

#include <unordered_map>

#include "neutralscape/error.hpp"
#include "neutralscape/rng.hpp"

namespace neutralscape {

NeighborhoodSummary summarize_neighborhood(InsertionScanner& scanner, bool stop_at_improvement,
                                           std::optional<std::int64_t> abandon_above) {
  const std::size_t n = scanner.permutation().size();
  NeighborhoodSummary summary;
  summary.fitness = scanner.fitness();
  if (n < 2) return summary;

  std::vector<Fitness> costs(n);
  for (std::size_t a = 0; a < n; ++a) {
    scanner.scan(a, costs);
    for (std::size_t b = 0; b < n; ++b) {
      if (!is_canonical_insertion(a, b)) continue;
      const Fitness f = costs[b];
      summary.neighbor_fitness_sum += f;
      ++summary.neighbor_count;
      const Move move{MoveKind::insertion, static_cast<std::uint32_t>(a),
                      static_cast<std::uint32_t>(b)};
      if (f == summary.fitness) {
        ++summary.neutral_degree;
        summary.neutral_moves.push_back(move);
      } else if (f < summary.fitness) {
        ++summary.improving_degree;
        if (!summary.best_improving_move || f < summary.best_improving_fitness) {
          summary.best_improving_move = move;
          summary.best_improving_fitness = f;
        }
      }
    }
    const auto unscanned = static_cast<std::int64_t>(insertion_neighborhood_size(n) -
                                                     summary.neighbor_count);
    const bool stop =
        (stop_at_improvement && summary.improving_degree > 0) ||
        (abandon_above &&
         summary.neighbor_fitness_sum + unscanned * summary.fitness > *abandon_above);
    if (stop && a + 1 < n) {
      summary.complete = false;
      break;
    }
  }
  return summary;
}

NeighborhoodSummary summarize_neighborhood(const Instance& instance, const Permutation& perm) {
  InsertionScanner scanner(instance);
  scanner.reset(perm);
  return summarize_neighborhood(scanner);
}

std::string_view to_string(Typology t) noexcept {
  switch (t) {
    case Typology::T1: return "T1";
    case Typology::T2: return "T2";
    case Typology::T3: return "T3";
  }
  return "?";
}

std::optional<Typology> parse_typology(std::string_view text) noexcept {
  if (text == "T1") return Typology::T1;
  if (text == "T2") return Typology::T2;
  if (text == "T3") return Typology::T3;
  return std::nullopt;
}

namespace {

// Exact-identity set of the solutions seen in one walk.
class VisitedSet {
 public:
  /// Returns true when `perm` was already present.
  bool visit(const Permutation& perm) {
    auto& bucket = buckets_[perm.fingerprint()];
    for (const auto& seen : bucket) {
      if (seen == perm) return true;
    }
    bucket.push_back(perm);
    return false;
  }

 private:
  std::unordered_map<std::uint64_t, std::vector<Permutation>> buckets_;
};

}  // namespace

WalkRecord neutral_walk(const Instance& instance, const Permutation& start,
                        std::uint64_t max_steps, Rng& rng, const WalkLabels& labels,
                        std::vector<Permutation>* trace) {
  if (max_steps == 0) throw ContractViolation("neutral walk needs max_steps >= 1");
  if (start.size() != instance.n_jobs()) {
    throw ContractViolation("start permutation does not match the instance");
  }

  WalkRecord record;
  record.instance_id = labels.instance_id;
  record.walk_id = labels.walk_id;
  record.start_descent_length = labels.start_descent_length;
  record.n_jobs = instance.n_jobs();
  record.n_machines = instance.n_machines();

  InsertionScanner scanner(instance);
  VisitedSet visited;
  Permutation current = start;
  for (std::uint64_t step = 0;; ++step) {
    scanner.reset(current);
    const NeighborhoodSummary summary = summarize_neighborhood(scanner);
    if (step == 0 && summary.is_portal()) {
      throw ContractViolation("neutral walk must start from a local optimum");
    }
    WalkStep entry;
    entry.step = step;
    entry.fitness = summary.fitness;
    entry.neutral_degree = summary.neutral_degree;
    entry.improving_degree = summary.improving_degree;
    entry.evolvability = summary.mean_neighbor_fitness();
    entry.is_portal = summary.is_portal();
    entry.revisited = visited.visit(current);
    entry.improving_move = summary.best_improving_move;
    entry.improving_fitness = summary.best_improving_fitness;
    record.steps.push_back(entry);
    if (trace) trace->push_back(current);

    if (step == max_steps || summary.neutral_moves.empty()) break;
    const Move& move = summary.neutral_moves[rng.below(summary.neutral_moves.size())];
    apply_move_in_place(current, move);
  }

  record.first_portal_step = steps_to_first_portal(record);
  record.typology = classify_typology(record);
  return record;
}

Typology classify_typology(const WalkRecord& record) noexcept {
  for (const auto& s : record.steps) {
    if (s.is_portal) return Typology::T3;
  }
  if (record.steps.size() == 1 && record.steps.front().neutral_degree == 0) return Typology::T1;
  return Typology::T2;
}

std::optional<std::uint64_t> steps_to_first_portal(const WalkRecord& record) noexcept {
  for (std::size_t i = 0; i < record.steps.size(); ++i) {
    if (record.steps[i].is_portal) return i;
  }
  return std::nullopt;
}

std::vector<std::pair<double, std::uint64_t>> portal_distance_series(const WalkRecord& record) {
  std::vector<std::pair<double, std::uint64_t>> series;
  std::optional<std::size_t> last_portal;
  for (std::size_t i = record.steps.size(); i-- > 0;) {
    if (record.steps[i].is_portal) {
      last_portal = i;
      break;
    }
  }
  if (!last_portal) return series;

  series.resize(*last_portal + 1);
  std::size_t next_portal = *last_portal;
  for (std::size_t i = *last_portal + 1; i-- > 0;) {
    if (record.steps[i].is_portal) next_portal = i;
    series[i] = {record.steps[i].evolvability, next_portal - i};
  }
  return series;
}

double revisit_rate(const WalkRecord& record) noexcept {
  if (record.steps.empty()) return 0.0;
  std::size_t revisited = 0;
  for (const auto& s : record.steps) revisited += s.revisited ? 1 : 0;
  return static_cast<double>(revisited) / static_cast<double>(record.steps.size());
}

}  // namespace neutralscape
