#include "neutralscape/evaluation.hpp"

#include <algorithm>
#include <numeric>

#include "neutralscape/error.hpp"
#include "neutralscape/rng.hpp"

namespace neutralscape {

Permutation::Permutation(std::vector<JobIndex> order) : order_(std::move(order)) {
  std::vector<bool> seen(order_.size(), false);
  for (auto job : order_) {
    if (job < 0 || static_cast<std::size_t>(job) >= order_.size() || seen[job]) {
      throw ContractViolation("not a permutation of [0, " + std::to_string(order_.size()) + ")");
    }
    seen[job] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<JobIndex> order(n);
  std::iota(order.begin(), order.end(), 0);
  Permutation p;
  p.order_ = std::move(order);
  return p;
}

Permutation Permutation::random(std::size_t n, Rng& rng) {
  Permutation p = identity(n);
  rng.shuffle(p.order_.begin(), p.order_.end());
  return p;
}

std::size_t Permutation::position_of(JobIndex job) const {
  auto it = std::find(order_.begin(), order_.end(), job);
  if (it == order_.end()) throw ContractViolation("job not in permutation");
  return static_cast<std::size_t>(it - order_.begin());
}

void Permutation::insert(std::size_t from, std::size_t to) {
  if (from >= order_.size() || to >= order_.size()) {
    throw ContractViolation("insertion position out of range");
  }
  auto b = order_.begin();
  if (from < to) {
    std::rotate(b + from, b + from + 1, b + to + 1);
  } else if (from > to) {
    std::rotate(b + to, b + from, b + from + 1);
  }
}

void Permutation::swap_positions(std::size_t a, std::size_t b) {
  if (a >= order_.size() || b >= order_.size()) {
    throw ContractViolation("swap position out of range");
  }
  std::swap(order_[a], order_[b]);
}

std::uint64_t Permutation::fingerprint() const noexcept {
  std::uint64_t h = 0x51ed2701a3b5c4d9ULL ^ order_.size();
  for (auto job : order_) h = splitmix64(h ^ static_cast<std::uint64_t>(job));
  return h;
}

std::string Permutation::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < order_.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(order_[i]);
  }
  return s;
}

namespace {

void check_dimensions(const Instance& instance, const Permutation& perm) {
  if (perm.size() != instance.n_jobs()) {
    throw ContractViolation("permutation has " + std::to_string(perm.size()) +
                            " jobs, instance has " + std::to_string(instance.n_jobs()));
  }
}

}  // namespace

Fitness makespan(const Instance& instance, std::span<const JobIndex> sequence) {
  const std::size_t m = instance.n_machines();
  std::vector<Fitness> completion(m, 0);
  for (auto job : sequence) {
    if (job < 0 || static_cast<std::size_t>(job) >= instance.n_jobs()) {
      throw ContractViolation("job index out of range");
    }
    const auto p = instance.job_times(job);
    Fitness prev = 0;
    for (std::size_t j = 0; j < m; ++j) {
      prev = std::max(prev, completion[j]) + p[j];
      completion[j] = prev;
    }
  }
  return completion[m - 1];
}

Fitness makespan(const Instance& instance, const Permutation& perm) {
  check_dimensions(instance, perm);
  return makespan(instance, perm.jobs());
}

EvalState build_eval_state(const Instance& instance, const Permutation& perm) {
  check_dimensions(instance, perm);
  const std::size_t n = instance.n_jobs();
  const std::size_t m = instance.n_machines();
  EvalState s;
  s.n_jobs = n;
  s.n_machines = m;
  s.heads.assign((n + 1) * m, 0);
  s.tails.assign((n + 1) * m, 0);

  for (std::size_t k = 1; k <= n; ++k) {
    const auto p = instance.job_times(perm[k - 1]);
    const Fitness* above = &s.heads[(k - 1) * m];
    Fitness* row = &s.heads[k * m];
    Fitness prev = 0;
    for (std::size_t j = 0; j < m; ++j) {
      prev = std::max(prev, above[j]) + p[j];
      row[j] = prev;
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    const auto p = instance.job_times(perm[k]);
    const Fitness* below = &s.tails[(k + 1) * m];
    Fitness* row = &s.tails[k * m];
    Fitness next = 0;
    for (std::size_t j = m; j-- > 0;) {
      next = std::max(next, below[j]) + p[j];
      row[j] = next;
    }
  }
  s.fitness = s.heads[n * m + m - 1];
  return s;
}

std::vector<Fitness> insertion_costs(const Instance& instance, std::span<const JobIndex> sequence,
                                     JobIndex job) {
  const std::size_t k = sequence.size();
  const std::size_t m = instance.n_machines();
  std::vector<Fitness> heads((k + 1) * m, 0);
  std::vector<Fitness> tails((k + 1) * m, 0);
  for (std::size_t r = 1; r <= k; ++r) {
    const auto p = instance.job_times(sequence[r - 1]);
    Fitness prev = 0;
    for (std::size_t j = 0; j < m; ++j) {
      prev = std::max(prev, heads[(r - 1) * m + j]) + p[j];
      heads[r * m + j] = prev;
    }
  }
  for (std::size_t r = k; r-- > 0;) {
    const auto p = instance.job_times(sequence[r]);
    Fitness next = 0;
    for (std::size_t j = m; j-- > 0;) {
      next = std::max(next, tails[(r + 1) * m + j]) + p[j];
      tails[r * m + j] = next;
    }
  }
  const auto px = instance.job_times(job);
  std::vector<Fitness> costs(k + 1);
  for (std::size_t t = 0; t <= k; ++t) {
    Fitness f = 0;
    Fitness best = 0;
    for (std::size_t j = 0; j < m; ++j) {
      f = std::max(f, heads[t * m + j]) + px[j];
      best = std::max(best, f + tails[t * m + j]);
    }
    costs[t] = best;
  }
  return costs;
}

InsertionScanner::InsertionScanner(const Instance& instance) : instance_(&instance) {
  const std::size_t n = instance.n_jobs();
  const std::size_t m = instance.n_machines();
  reduced_heads_.assign(n * m, 0);
  reduced_tails_.assign(n * m, 0);
  front_.assign(m, 0);
}

void InsertionScanner::reset(const Permutation& perm) {
  state_ = build_eval_state(*instance_, perm);
  perm_ = perm;
  evaluations_ += 1;
}

void InsertionScanner::scan(std::size_t remove_pos, std::span<Fitness> costs) {
  const std::size_t n = state_.n_jobs;
  const std::size_t m = state_.n_machines;
  if (remove_pos >= n) throw ContractViolation("remove position out of range");
  if (costs.size() < n) throw ContractViolation("cost buffer too small");
  const Instance& inst = *instance_;
  const std::size_t a = remove_pos;

  // Reduced sequence: the original with position a removed. Heads of prefixes
  // up to a and tails of suffixes from a on are shared with the full state.
  auto reduced_head = [&](std::size_t k) -> const Fitness* {
    return k <= a ? &state_.heads[k * m] : &reduced_heads_[k * m];
  };
  auto reduced_tail = [&](std::size_t k) -> const Fitness* {
    return k >= a ? &state_.tails[(k + 1) * m] : &reduced_tails_[k * m];
  };

  for (std::size_t k = a + 1; k < n; ++k) {
    const auto p = inst.job_times(perm_[k]);
    const Fitness* above = reduced_head(k - 1);
    Fitness* row = &reduced_heads_[k * m];
    Fitness prev = 0;
    for (std::size_t j = 0; j < m; ++j) {
      prev = std::max(prev, above[j]) + p[j];
      row[j] = prev;
    }
  }
  for (std::size_t k = a; k-- > 0;) {
    const auto p = inst.job_times(perm_[k]);
    const Fitness* below = reduced_tail(k + 1);
    Fitness* row = &reduced_tails_[k * m];
    Fitness next = 0;
    for (std::size_t j = m; j-- > 0;) {
      next = std::max(next, below[j]) + p[j];
      row[j] = next;
    }
  }

  const auto px = inst.job_times(perm_[a]);
  for (std::size_t t = 0; t < n; ++t) {
    const Fitness* head = reduced_head(t);
    const Fitness* tail = reduced_tail(t);
    Fitness f = 0;
    Fitness best = 0;
    for (std::size_t j = 0; j < m; ++j) {
      f = std::max(f, head[j]) + px[j];
      best = std::max(best, f + tail[j]);
    }
    costs[t] = best;
  }
  evaluations_ += n;
}

std::vector<Fitness> scan_insertions(const Instance& instance, const Permutation& perm,
                                     std::size_t remove_pos) {
  check_dimensions(instance, perm);
  if (remove_pos >= perm.size()) throw ContractViolation("remove position out of range");
  InsertionScanner scanner(instance);
  scanner.reset(perm);
  std::vector<Fitness> costs(perm.size());
  scanner.scan(remove_pos, costs);
  return costs;
}

Fitness makespan_lower_bound(const Instance& instance) {
  const std::size_t n = instance.n_jobs();
  const std::size_t m = instance.n_machines();
  Fitness bound = 0;
  for (std::size_t j = 0; j < m; ++j) {
    Fitness load = 0;
    for (std::size_t i = 0; i < n; ++i) load += instance.time(i, j);
    bound = std::max(bound, load);
  }
  for (std::size_t i = 0; i < n; ++i) {
    Fitness length = 0;
    for (auto p : instance.job_times(i)) length += p;
    bound = std::max(bound, length);
  }
  return bound;
}

}  // namespace neutralscape
