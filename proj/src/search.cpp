#include "neutralscape/search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "neutralscape/error.hpp"
#include "neutralscape/landscape.hpp"
#include "neutralscape/neighborhood.hpp"
#include "neutralscape/rng.hpp"

namespace neutralscape {

std::string_view to_string(Acceptance a) noexcept {
  switch (a) {
    case Acceptance::better: return "better";
    case Acceptance::metropolis: return "metropolis";
    case Acceptance::better_or_equal: return "better_or_equal";
  }
  return "?";
}

std::optional<Acceptance> parse_acceptance(std::string_view text) noexcept {
  if (text == "better") return Acceptance::better;
  if (text == "metropolis") return Acceptance::metropolis;
  if (text == "better_or_equal") return Acceptance::better_or_equal;
  return std::nullopt;
}

void validate(const SearchConfig& config) {
  if (config.max_evaluations == 0) throw ContractViolation("max_evaluations must be >= 1");
  if (config.perturbation_strength == 0) {
    throw ContractViolation("perturbation_strength must be >= 1");
  }
  if (config.max_neutral_steps == 0) throw ContractViolation("max_neutral_steps must be >= 1");
  if (config.metropolis_temperature && !(*config.metropolis_temperature >= 0.0)) {
    throw ContractViolation("metropolis temperature must be non-negative");
  }
}

double default_temperature(const Instance& instance) {
  return static_cast<double>(instance.total_processing_time()) /
         (10.0 * static_cast<double>(instance.n_jobs() * instance.n_machines()));
}

bool metropolis_accepts(Fitness delta, double temperature, double uniform01) noexcept {
  if (delta <= 0) return true;
  if (temperature <= 0.0) return false;
  return uniform01 < std::exp(-static_cast<double>(delta) / temperature);
}

namespace {

struct DescentOutcome {
  std::uint64_t steps = 0;
  bool complete = true;
};

// Both descents start from the scanner's permutation and leave the result in it.
// They stop (incomplete) rather than start a scan that would cross `limit`.
DescentOutcome first_improvement(InsertionScanner& scanner, Rng& rng, std::uint64_t limit) {
  const std::size_t n = scanner.permutation().size();
  DescentOutcome out;
  if (n < 2) return out;
  std::vector<Fitness> costs(n);
  std::vector<JobIndex> jobs(n);
  std::iota(jobs.begin(), jobs.end(), 0);
  for (;;) {
    rng.shuffle(jobs.begin(), jobs.end());
    bool improved = false;
    for (JobIndex job : jobs) {
      if (scanner.evaluations() + n + 1 > limit) {
        out.complete = false;
        return out;
      }
      const std::size_t a = scanner.permutation().position_of(job);
      scanner.scan(a, costs);
      std::size_t best_t = a;
      Fitness best = scanner.fitness();
      for (std::size_t t = 0; t < n; ++t) {
        if (t != a && costs[t] < best) {
          best = costs[t];
          best_t = t;
        }
      }
      if (best_t != a) {
        Permutation next = scanner.permutation();
        next.insert(a, best_t);
        scanner.reset(next);
        ++out.steps;
        improved = true;
      }
    }
    if (!improved) return out;
  }
}

DescentOutcome steepest(InsertionScanner& scanner, Rng& rng, std::uint64_t limit) {
  const std::size_t n = scanner.permutation().size();
  DescentOutcome out;
  if (n < 2) return out;
  std::vector<Fitness> costs(n);
  for (;;) {
    if (scanner.evaluations() + n * n + 1 > limit) {
      out.complete = false;
      return out;
    }
    Fitness best = scanner.fitness();
    std::optional<Move> chosen;
    std::uint64_t ties = 0;
    for (std::size_t a = 0; a < n; ++a) {
      scanner.scan(a, costs);
      for (std::size_t b = 0; b < n; ++b) {
        if (!is_canonical_insertion(a, b)) continue;
        const Move move{MoveKind::insertion, static_cast<std::uint32_t>(a),
                        static_cast<std::uint32_t>(b)};
        if (costs[b] < best) {
          best = costs[b];
          chosen = move;
          ties = 1;
        } else if (chosen && costs[b] == best) {
          if (rng.below(++ties) == 0) chosen = move;
        }
      }
    }
    if (!chosen) return out;
    scanner.reset(apply_move(scanner.permutation(), *chosen));
    ++out.steps;
  }
}

SearchResult run_single_descent(const Instance& instance, const Permutation& start, Rng& rng,
                                std::uint64_t max_evaluations, bool use_steepest) {
  if (start.size() != instance.n_jobs()) {
    throw ContractViolation("start permutation does not match the instance");
  }
  InsertionScanner scanner(instance);
  scanner.reset(start);
  const auto outcome = use_steepest ? steepest(scanner, rng, max_evaluations)
                                    : first_improvement(scanner, rng, max_evaluations);
  SearchResult result;
  result.best_perm = scanner.permutation();
  result.best_fitness = scanner.fitness();
  result.evaluations_used = scanner.evaluations();
  result.descent_lengths.push_back(outcome.steps);
  result.incumbents.push_back(result.best_fitness);
  result.complete = outcome.complete;
  result.local_optimum = outcome.complete;
  return result;
}

// Shared bookkeeping of the iterated searches.
class RunLog {
 public:
  RunLog(SearchResult& result, const InsertionScanner& scanner, bool enabled)
      : result_(result), scanner_(scanner), enabled_(enabled) {}

  void event(std::uint64_t iteration, Fitness fitness, const char* what) {
    if (!enabled_) return;
    result_.trajectory.push_back(
        {iteration, scanner_.evaluations(), fitness, result_.best_fitness, what});
  }

  void offer_best(const Permutation& perm, Fitness fitness, bool certified) {
    if (!has_best_ || fitness < result_.best_fitness) {
      result_.best_perm = perm;
      result_.best_fitness = fitness;
      result_.local_optimum = certified;
      has_best_ = true;
    }
  }

 private:
  SearchResult& result_;
  const InsertionScanner& scanner_;
  bool enabled_;
  bool has_best_ = false;
};

}  // namespace

SearchResult steepest_descent(const Instance& instance, const Permutation& start, Rng& rng,
                              std::uint64_t max_evaluations) {
  return run_single_descent(instance, start, rng, max_evaluations, true);
}

SearchResult first_improvement_descent(const Instance& instance, const Permutation& start,
                                       Rng& rng, std::uint64_t max_evaluations) {
  return run_single_descent(instance, start, rng, max_evaluations, false);
}

Permutation neh_construct(const Instance& instance, std::uint64_t* evaluations) {
  const std::size_t n = instance.n_jobs();
  std::vector<JobIndex> jobs(n);
  std::iota(jobs.begin(), jobs.end(), 0);
  std::vector<std::int64_t> totals(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto p : instance.job_times(i)) totals[i] += p;
  }
  std::stable_sort(jobs.begin(), jobs.end(),
                   [&](JobIndex a, JobIndex b) { return totals[a] > totals[b]; });

  std::vector<JobIndex> sequence{jobs.front()};
  sequence.reserve(n);
  for (std::size_t k = 1; k < n; ++k) {
    const auto costs = insertion_costs(instance, sequence, jobs[k]);
    if (evaluations) *evaluations += costs.size();
    const auto best = std::min_element(costs.begin(), costs.end()) - costs.begin();
    sequence.insert(sequence.begin() + best, jobs[k]);
  }
  return Permutation(std::move(sequence));
}

void perturb(Permutation& perm, std::uint32_t strength, Rng& rng) {
  if (perm.size() < 2) return;
  for (std::uint32_t i = 0; i < strength; ++i) {
    const MoveKind kind = rng.below(2) == 0 ? MoveKind::transpose : MoveKind::exchange;
    apply_move_in_place(perm, random_move(kind, perm.size(), rng));
  }
}

SearchResult ils_stutzle(const Instance& instance, const SearchConfig& config) {
  validate(config);
  Rng rng(config.seed);
  const double temperature = config.metropolis_temperature.value_or(default_temperature(instance));
  const std::uint64_t limit = config.max_evaluations;

  SearchResult result;
  InsertionScanner scanner(instance);
  RunLog log(result, scanner, config.record_trajectory);

  std::uint64_t neh_evaluations = 0;
  Permutation current = neh_construct(instance, &neh_evaluations);
  scanner.add_evaluations(neh_evaluations);
  scanner.reset(current);
  auto descent = first_improvement(scanner, rng, limit);
  result.descent_lengths.push_back(descent.steps);
  current = scanner.permutation();
  Fitness current_fitness = scanner.fitness();
  result.complete = descent.complete;
  log.offer_best(current, current_fitness, descent.complete);
  result.incumbents.push_back(current_fitness);
  log.event(0, current_fitness, "init");

  std::uint64_t iteration = 0;
  while (descent.complete && instance.n_jobs() >= 2 && scanner.evaluations() < limit) {
    ++iteration;
    Permutation candidate = current;
    perturb(candidate, config.perturbation_strength, rng);
    scanner.reset(candidate);
    descent = first_improvement(scanner, rng, limit);
    result.descent_lengths.push_back(descent.steps);
    const Fitness candidate_fitness = scanner.fitness();
    log.offer_best(scanner.permutation(), candidate_fitness, descent.complete);
    if (!descent.complete) {
      log.event(iteration, candidate_fitness, "budget");
      break;
    }

    const Fitness delta = candidate_fitness - current_fitness;
    bool accept = false;
    switch (config.acceptance) {
      case Acceptance::better: accept = delta < 0; break;
      case Acceptance::better_or_equal: accept = delta <= 0; break;
      case Acceptance::metropolis:
        accept = delta <= 0 || metropolis_accepts(delta, temperature, rng.uniform01());
        break;
    }
    if (accept) {
      current = scanner.permutation();
      current_fitness = candidate_fitness;
      result.incumbents.push_back(current_fitness);
      log.event(iteration, candidate_fitness, "accept");
    } else {
      log.event(iteration, candidate_fitness, "reject");
    }
  }
  result.evaluations_used = scanner.evaluations();
  return result;
}

SearchResult restart_descent(const Instance& instance, const SearchConfig& config) {
  validate(config);
  Rng rng(config.seed);
  const std::uint64_t limit = config.max_evaluations;

  SearchResult result;
  InsertionScanner scanner(instance);
  RunLog log(result, scanner, config.record_trajectory);

  std::uint64_t iteration = 0;
  do {
    scanner.reset(Permutation::random(instance.n_jobs(), rng));
    const auto descent = first_improvement(scanner, rng, limit);
    result.descent_lengths.push_back(descent.steps);
    log.offer_best(scanner.permutation(), scanner.fitness(), descent.complete);
    if (iteration == 0) result.complete = descent.complete;
    if (!descent.complete) {
      log.event(iteration, scanner.fitness(), "budget");
      break;
    }
    result.incumbents.push_back(scanner.fitness());
    log.event(iteration, scanner.fitness(), "restart");
    ++iteration;
  } while (instance.n_jobs() >= 2 && scanner.evaluations() < limit);
  result.evaluations_used = scanner.evaluations();
  return result;
}

namespace {

// Mean neighbor fitness estimated from `samples` uniform insertion neighbors,
// returned as a sum. Sets `improving` to the first sampled neighbor better than `fitness`.
std::int64_t sampled_fitness_sum(const Instance& instance, const Permutation& perm,
                                 Fitness fitness, std::uint32_t samples, Rng& rng,
                                 InsertionScanner& counter, std::optional<Move>& improving) {
  std::int64_t sum = 0;
  for (std::uint32_t i = 0; i < samples; ++i) {
    const Move move = random_move(MoveKind::insertion, perm.size(), rng);
    const Fitness f = makespan(instance, apply_move(perm, move));
    counter.add_evaluations(1);
    sum += f;
    if (f < fitness) {
      improving = move;
      return sum;
    }
  }
  return sum;
}

}  // namespace

SearchResult neutral_guided_search(const Instance& instance, const SearchConfig& config) {
  validate(config);
  Rng rng(config.seed);
  const std::uint64_t limit = config.max_evaluations;
  const std::size_t n = instance.n_jobs();
  const std::uint64_t scan_cost = static_cast<std::uint64_t>(n) * n + 1;
  const bool sampled = config.sampled_evolvability > 0;

  SearchResult result;
  InsertionScanner scanner(instance);
  RunLog log(result, scanner, config.record_trajectory);
  auto affordable = [&](std::uint64_t cost) { return scanner.evaluations() + cost <= limit; };

  scanner.reset(Permutation::random(n, rng));
  auto descent = first_improvement(scanner, rng, limit);
  result.descent_lengths.push_back(descent.steps);
  Permutation current = scanner.permutation();
  Fitness current_fitness = scanner.fitness();
  result.complete = descent.complete;
  log.offer_best(current, current_fitness, descent.complete);
  result.incumbents.push_back(current_fitness);
  log.event(0, current_fitness, "init");

  enum class PhaseEnd { portal, stalled, budget };
  std::uint64_t iteration = 0;
  while (descent.complete && n >= 2 && scanner.evaluations() < limit) {
    ++iteration;
    if (!affordable(scan_cost)) break;
    scanner.reset(current);
    NeighborhoodSummary summary = summarize_neighborhood(scanner);
    std::unordered_set<Permutation> visited{current};
    std::uint32_t neutral_steps = 0;
    std::optional<Permutation> improved;
    PhaseEnd end = PhaseEnd::stalled;

    // Neutral phase: move along the network toward lower evolvability.
    for (;;) {
      if (summary.best_improving_move) {
        improved = apply_move(current, *summary.best_improving_move);
        end = PhaseEnd::portal;
        break;
      }
      if (neutral_steps >= config.max_neutral_steps) {
        end = PhaseEnd::stalled;
        break;
      }
      std::vector<Permutation> candidates;
      for (const Move& move : summary.neutral_moves) {
        Permutation next = apply_move(current, move);
        if (!visited.contains(next)) candidates.push_back(std::move(next));
      }
      if (candidates.empty()) {
        end = PhaseEnd::stalled;
        break;
      }

      std::optional<std::size_t> chosen;
      std::int64_t chosen_sum = 0;
      std::uint64_t ties = 0;
      NeighborhoodSummary chosen_summary;
      bool out_of_budget = false;
      for (std::size_t i = 0; i < candidates.size() && !improved; ++i) {
        std::int64_t sum = 0;
        std::optional<Move> improving;
        NeighborhoodSummary candidate_summary;
        if (sampled) {
          if (!affordable(config.sampled_evolvability)) {
            out_of_budget = true;
            break;
          }
          sum = sampled_fitness_sum(instance, candidates[i], current_fitness,
                                    config.sampled_evolvability, rng, scanner, improving);
        } else {
          if (!affordable(scan_cost)) {
            out_of_budget = true;
            break;
          }
          scanner.reset(candidates[i]);
          // Partial sums only grow, so a candidate can be dropped once it passes the best.
          candidate_summary = summarize_neighborhood(
              scanner, true, chosen ? std::optional<std::int64_t>(chosen_sum) : std::nullopt);
          improving = candidate_summary.best_improving_move;
          sum = candidate_summary.neighbor_fitness_sum;
          if (!improving && !candidate_summary.complete) continue;
        }
        if (improving) {
          // The candidate is a portal: step onto it and take the improvement.
          current = candidates[i];
          ++neutral_steps;
          log.event(iteration, sampled ? current_fitness : candidate_summary.fitness, "neutral");
          improved = apply_move(current, *improving);
          break;
        }
        if (!chosen || sum < chosen_sum) {
          chosen = i;
          chosen_sum = sum;
          ties = 1;
          if (!sampled) chosen_summary = std::move(candidate_summary);
        } else if (sum == chosen_sum && rng.below(++ties) == 0) {
          chosen = i;
          if (!sampled) chosen_summary = std::move(candidate_summary);
        }
      }
      if (improved) {
        end = PhaseEnd::portal;
        break;
      }
      if (out_of_budget || !chosen) {
        end = PhaseEnd::budget;
        break;
      }

      current = std::move(candidates[*chosen]);
      visited.insert(current);
      ++neutral_steps;
      if (sampled) {
        if (!affordable(scan_cost)) {
          end = PhaseEnd::budget;
          break;
        }
        scanner.reset(current);
        summary = summarize_neighborhood(scanner);
      } else {
        summary = std::move(chosen_summary);
      }
      log.event(iteration, summary.fitness, "neutral");
    }

    if (end == PhaseEnd::budget) break;

    const bool via_portal = end == PhaseEnd::portal;
    Permutation start = via_portal ? *improved : current;
    if (!via_portal) perturb(start, config.perturbation_strength, rng);
    scanner.reset(start);
    descent = first_improvement(scanner, rng, limit);
    result.descent_lengths.push_back(descent.steps);
    const Fitness candidate_fitness = scanner.fitness();
    log.offer_best(scanner.permutation(), candidate_fitness, descent.complete);
    if (!descent.complete) {
      log.event(iteration, candidate_fitness, "budget");
      break;
    }
    const bool accept = config.acceptance == Acceptance::better
                            ? candidate_fitness < current_fitness
                            : candidate_fitness <= current_fitness;
    if (accept) {
      current = scanner.permutation();
      current_fitness = candidate_fitness;
      result.incumbents.push_back(current_fitness);
      log.event(iteration, candidate_fitness, via_portal ? "portal" : "perturb-accept");
    } else {
      log.event(iteration, candidate_fitness, "perturb-reject");
    }
  }
  result.evaluations_used = scanner.evaluations();
  return result;
}

}  // namespace neutralscape
