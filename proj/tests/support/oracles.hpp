#pragma once

// Test-only reference implementations. Deliberately naive and independent of
// the library's evaluation and neighborhood code paths.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "neutralscape/instance.hpp"

namespace oracle {

using Seq = std::vector<int>;

/// Full completion-date matrix C[k][j] for the k-th scheduled job.
inline std::int64_t makespan(const neutralscape::Instance& inst, const Seq& seq) {
  const std::size_t n = seq.size();
  const std::size_t m = inst.n_machines();
  std::vector<std::vector<std::int64_t>> c(n, std::vector<std::int64_t>(m, 0));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < m; ++j) {
      const std::int64_t up = k > 0 ? c[k - 1][j] : 0;
      const std::int64_t left = j > 0 ? c[k][j - 1] : 0;
      c[k][j] = std::max(up, left) + inst.time(seq[k], j);
    }
  }
  return n == 0 ? 0 : c[n - 1][m - 1];
}

/// Remove the element at `from`, then insert it so that it sits at index `to`.
inline Seq insert(Seq s, std::size_t from, std::size_t to) {
  const int job = s[from];
  s.erase(s.begin() + static_cast<long>(from));
  s.insert(s.begin() + static_cast<long>(to), job);
  return s;
}

/// Every permutation reachable by one insertion (all ordered pairs a != b), deduplicated.
inline std::set<Seq> insertion_neighbors(const Seq& s) {
  std::set<Seq> out;
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = 0; b < s.size(); ++b) {
      if (a != b) out.insert(insert(s, a, b));
    }
  }
  return out;
}

inline std::set<Seq> transpose_neighbors(const Seq& s) {
  std::set<Seq> out;
  for (std::size_t a = 0; a + 1 < s.size(); ++a) {
    Seq t = s;
    std::swap(t[a], t[a + 1]);
    out.insert(t);
  }
  return out;
}

struct Extremes {
  std::int64_t best;
  std::int64_t worst;
};

/// Enumerates all N! permutations.
inline Extremes brute_force(const neutralscape::Instance& inst) {
  Seq s(inst.n_jobs());
  std::iota(s.begin(), s.end(), 0);
  Extremes e{INT64_MAX, INT64_MIN};
  do {
    const auto f = makespan(inst, s);
    e.best = std::min(e.best, f);
    e.worst = std::max(e.worst, f);
  } while (std::next_permutation(s.begin(), s.end()));
  return e;
}

/// Small random instance from std::mt19937 (independent of the library generator).
inline neutralscape::Instance random_instance(std::size_t n, std::size_t m, std::uint32_t seed,
                                              int max_time = 99) {
  std::mt19937 rng(seed);
  std::vector<neutralscape::ProcessingTime> t(n * m);
  for (auto& v : t) v = static_cast<neutralscape::ProcessingTime>(rng() % (max_time + 1));
  return neutralscape::Instance(n, m, std::move(t), "oracle");
}

inline Seq random_seq(std::size_t n, std::mt19937& rng) {
  Seq s(n);
  std::iota(s.begin(), s.end(), 0);
  std::shuffle(s.begin(), s.end(), rng);
  return s;
}

}  // namespace oracle
