// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
//   neutralscape_acceptance --out DIR [--workers K]

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "neutralscape/campaign.hpp"
#include "neutralscape/landscape.hpp"
#include "neutralscape/neighborhood.hpp"
#include "neutralscape/rng.hpp"
#include "neutralscape/search.hpp"
#include "neutralscape/stats.hpp"
#include "oracles.hpp"

namespace ns = neutralscape;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::uint64_t kMasterSeed = 20080301;

int g_failures = 0;
int g_checks = 0;

void check(const std::string& id, bool ok, const std::string& detail) {
  ++g_checks;
  if (!ok) ++g_failures;
  fmt::print("{} [{}] {}\n", ok ? "PASS" : "FAIL", id, detail);
  std::fflush(stdout);
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

oracle::Seq seq_of(const ns::Permutation& p) { return {p.jobs().begin(), p.jobs().end()}; }

ns::Permutation perm_of(const oracle::Seq& s) {
  return ns::Permutation(std::vector<ns::JobIndex>(s.begin(), s.end()));
}

bool certified_local_optimum(const ns::Instance& inst, const ns::Permutation& p) {
  const auto f = oracle::makespan(inst, seq_of(p));
  for (const auto& q : oracle::insertion_neighbors(seq_of(p))) {
    if (oracle::makespan(inst, q) < f) return false;
  }
  return true;
}

void correctness_oracles() {
  const auto start = Clock::now();
  std::mt19937 gen(kMasterSeed);
  std::size_t scan_mismatches = 0, degree_mismatches = 0, uncertified = 0, below_optimum = 0;
  std::size_t scan_entries = 0, descents = 0, heuristics = 0;
  for (int c = 0; c < 50; ++c) {
    const std::size_t n = 2 + gen() % 6;
    const std::size_t m = 1 + gen() % 4;
    const ns::Instance inst = oracle::random_instance(n, m, gen(), c % 2 ? 9 : 99);
    const oracle::Seq seq = oracle::random_seq(n, gen);
    const ns::Permutation perm = perm_of(seq);

    for (std::size_t r = 0; r < n; ++r) {
      const auto costs = ns::scan_insertions(inst, perm, r);
      for (std::size_t t = 0; t < n; ++t) {
        ++scan_entries;
        scan_mismatches += costs[t] != oracle::makespan(inst, oracle::insert(seq, r, t));
      }
    }

    const auto f = oracle::makespan(inst, seq);
    std::uint64_t neutral = 0;
    for (const auto& q : oracle::insertion_neighbors(seq)) neutral += oracle::makespan(inst, q) == f;
    degree_mismatches += ns::summarize_neighborhood(inst, perm).neutral_degree != neutral;

    ns::Rng rng(static_cast<std::uint64_t>(c));
    const auto steepest = ns::steepest_descent(inst, perm, rng);
    const auto first = ns::first_improvement_descent(inst, perm, rng);
    descents += 2;
    uncertified += !certified_local_optimum(inst, steepest.best_perm);
    uncertified += !certified_local_optimum(inst, first.best_perm);

    ns::SearchConfig config;
    config.seed = static_cast<std::uint64_t>(c) + 1;
    config.max_evaluations = 20'000;
    const std::vector<ns::Fitness> results{
        steepest.best_fitness,
        first.best_fitness,
        ns::makespan(inst, ns::neh_construct(inst)),
        ns::ils_stutzle(inst, config).best_fitness,
        ns::restart_descent(inst, config).best_fitness,
        ns::neutral_guided_search(inst, config).best_fitness};
    const auto optimum = oracle::brute_force(inst).best;
    for (const auto r : results) {
      ++heuristics;
      below_optimum += r < optimum;
    }
  }
  const double elapsed = seconds_since(start);
  check("1 scan", scan_mismatches == 0,
        fmt::format("scan_insertions vs naive re-evaluation: {} mismatches in {} entries",
                    scan_mismatches, scan_entries));
  check("1 degree", degree_mismatches == 0,
        fmt::format("neutral degree vs exhaustive count: {} mismatches in 50 instances",
                    degree_mismatches));
  check("1 optima", uncertified == 0,
        fmt::format("descents ending at certified local optima: {} of {} uncertified", uncertified,
                    descents));
  check("1 bound", below_optimum == 0,
        fmt::format("brute-force optimum bounds every heuristic: {} of {} results below it",
                    below_optimum, heuristics));
  check("1 runtime", elapsed < 120.0, fmt::format("oracle batch took {:.2f} s (limit 120 s)", elapsed));

  bool cardinality_ok = true;
  std::string sizes;
  ns::Rng rng(kMasterSeed);
  for (std::size_t n = 2; n <= 8; ++n) {
    const ns::Permutation p = ns::Permutation::random(n, rng);
    std::set<oracle::Seq> materialized;
    for (const auto& mv : ns::enumerate_insertion_moves(n)) {
      materialized.insert(seq_of(ns::apply_move(p, mv)));
    }
    const bool ok = materialized.size() == (n - 1) * (n - 1) &&
                    materialized == oracle::insertion_neighbors(seq_of(p));
    cardinality_ok = cardinality_ok && ok;
    sizes += fmt::format(" {}:{}", n, materialized.size());
  }
  check("1 cardinality", cardinality_ok,
        fmt::format("distinct insertion neighbors equal (N-1)^2 for N=2..8 ->{}", sizes));
}

const ns::SizeAggregate& size_of(const ns::LandscapeReport& report, std::size_t n, std::size_t m) {
  for (const auto& s : report.sizes) {
    if (s.size.n_jobs == n && s.size.n_machines == m) return s;
  }
  throw std::runtime_error(fmt::format("size {}x{} missing from report", n, m));
}

ns::CampaignConfig desk_config(const fs::path& dir, std::size_t workers) {
  ns::CampaignConfig c;
  c.sizes = {{20, 5}, {20, 10}, {20, 20}, {50, 20}, {100, 20}};
  c.instances_per_size = 10;
  c.walks_per_instance = 30;
  c.descents_for_length_calibration = 30;
  c.walk_length_multiplier = 10;
  c.master_seed = kMasterSeed;
  c.output_dir = dir;
  c.jobs = workers;
  return c;
}

void landscape_criteria(const ns::CampaignResult& desk) {
  const auto& r = desk.report;
  const auto& s20x5 = size_of(r, 20, 5);
  const auto& s20x20 = size_of(r, 20, 20);
  const auto& s50x20 = size_of(r, 50, 20);
  const auto& s100x20 = size_of(r, 100, 20);

  check("2 ratio", s20x5.neutral_degree_ratio.mean > s20x20.neutral_degree_ratio.mean,
        fmt::format("neutral degree ratio 20x5 {:.4f} > 20x20 {:.4f}",
                    s20x5.neutral_degree_ratio.mean, s20x20.neutral_degree_ratio.mean));
  check("2 degree", std::abs(s100x20.neutral_degree.mean - 382.0) <= 0.2 * 382.0,
        fmt::format("100x20 mean neutral degree {:.1f} in [305.6, 458.4]",
                    s100x20.neutral_degree.mean));

  check("3 rho", s50x20.rho1_neutral_degree.mean > 0.5,
        fmt::format("50x20 rho(1) of neutral degree {:.4f} > 0.5", s50x20.rho1_neutral_degree.mean));
  double worst_null = 0.0;
  for (const auto& s : r.sizes) worst_null = std::max(worst_null, std::abs(s.null_rho1_neutral_degree.mean));
  check("3 null", std::abs(s50x20.null_rho1_neutral_degree.mean) < 0.05 && worst_null < 0.05,
        fmt::format("shuffle null |mean rho(1)| of neutral degree: 50x20 {:.4f}, worst size {:.4f} < 0.05",
                    std::abs(s50x20.null_rho1_neutral_degree.mean), worst_null));

  check("4 T1 20x20", std::abs(s20x20.t1_frequency.mean - 0.25) <= 0.10,
        fmt::format("20x20 T1 frequency {:.1f}% in [15%, 35%]", 100.0 * s20x20.t1_frequency.mean));
  std::size_t t1_50 = 0;
  for (const auto& w : desk.walks) {
    t1_50 += w.n_jobs == 50 && w.n_machines == 20 && w.typology == ns::Typology::T1;
  }
  check("4 T1 50x20", t1_50 == 0, fmt::format("50x20 T1 walks: {}", t1_50));
  check("4 revisit", std::abs(s20x20.revisit_rate.mean - 0.20) <= 0.10,
        fmt::format("20x20 revisit rate {:.1f}% in [10%, 30%]", 100.0 * s20x20.revisit_rate.mean));

  bool portal_steps_ok = true;
  std::string portal_steps;
  for (const auto& s : r.sizes) {
    if (s.size.n_machines != 20) continue;
    portal_steps_ok = portal_steps_ok && s.steps_to_portal.count > 0 && s.steps_to_portal.mean <= 15.0;
    portal_steps += fmt::format(" {} {:.2f}", ns::to_string(s.size), s.steps_to_portal.mean);
  }
  check("5 steps", portal_steps_ok,
        fmt::format("mean steps to first portal <= 15 on 20-machine sizes:{}", portal_steps));
  check("5 T3", s50x20.t3_frequency.mean >= 0.70,
        fmt::format("50x20 T3 frequency {:.1f}% >= 70%", 100.0 * s50x20.t3_frequency.mean));

  double worst_evo_null = 0.0;
  for (const auto& s : r.sizes) worst_evo_null = std::max(worst_evo_null, std::abs(s.null_rho1_evolvability.mean));
  check("6 null", worst_evo_null < 0.05,
        fmt::format("shuffle null |mean rho(1)| of evolvability, worst size {:.4f} < 0.05", worst_evo_null));

  // Pooled over the walks of every size with 10 or 20 machines.
  ns::ReportOptions options;
  options.null_repeats = 1;
  std::vector<double> per_walk;
  std::vector<double> evolvability, improving;
  std::vector<double> per_walk_improving;
  for (const auto& w : desk.walks) {
    if (w.n_machines != 10 && w.n_machines != 20) continue;
    if (const auto c = ns::walk_metrics(w, options).portal_correlation) per_walk.push_back(*c);
    if (w.steps.size() < options.min_series_length) continue;
    evolvability.clear();
    improving.clear();
    for (const auto& s : w.steps) {
      evolvability.push_back(s.evolvability);
      improving.push_back(static_cast<double>(s.improving_degree));
    }
    const bool varies = std::adjacent_find(improving.begin(), improving.end(),
                                           std::not_equal_to<>()) != improving.end() &&
                        std::adjacent_find(evolvability.begin(), evolvability.end(),
                                           std::not_equal_to<>()) != evolvability.end();
    if (varies) per_walk_improving.push_back(ns::pearson(evolvability, improving));
  }
  const auto pooled = ns::mean_stddev(per_walk);
  check("6 portal", pooled.count > 0 && pooled.mean >= -0.7 && pooled.mean <= -0.3,
        fmt::format("Pearson(evolvability, forward steps to portal) over {} walks with M in {{10,20}}: "
                    "{:.4f} (sd {:.4f}) in [-0.7, -0.3]",
                    pooled.count, pooled.mean, pooled.stddev));
  const auto diag = ns::mean_stddev(per_walk_improving);
  fmt::print("  info: Pearson(evolvability, improving-neighbor count) over {} walks: {:.4f} (sd {:.4f})\n",
             diag.count, diag.mean, diag.stddev);
}

void solver_criteria() {
  const ns::Instance inst = ns::campaign_instance({20, 10}, 1, kMasterSeed, ns::RngMode::native);
  double ils = 0.0, restart = 0.0, guided = 0.0;
  const int seeds = 10;
  const auto start = Clock::now();
  for (int s = 1; s <= seeds; ++s) {
    ns::SearchConfig config;
    config.seed = static_cast<std::uint64_t>(s);
    config.max_evaluations = 1'000'000;
    config.acceptance = ns::Acceptance::metropolis;
    ils += static_cast<double>(ns::ils_stutzle(inst, config).best_fitness);
    restart += static_cast<double>(ns::restart_descent(inst, config).best_fitness);
    guided += static_cast<double>(ns::neutral_guided_search(inst, config).best_fitness);
  }
  ils /= seeds;
  restart /= seeds;
  guided /= seeds;
  fmt::print("  info: solver runs on {} took {:.1f} s\n", inst.id(), seconds_since(start));
  check("7 ils", ils <= restart,
        fmt::format("20x10, 10 seeds, 1e6 evaluations: ILS-metropolis mean {:.1f} <= restart-descent {:.1f}",
                    ils, restart));
  check("7 guided", guided <= restart,
        fmt::format("20x10, 10 seeds, 1e6 evaluations: neutral-guided mean {:.1f} <= restart-descent {:.1f}",
                    guided, restart));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string out = "acceptance_out";
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--out", out, "Scratch directory for campaign outputs");
  app.add_option("--workers", workers, "Worker threads for the desk campaign")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  try {
    correctness_oracles();

    const fs::path first_dir = fs::path(out) / "desk";
    const fs::path rerun_dir = fs::path(out) / "desk_rerun";
    fs::remove_all(first_dir);
    fs::remove_all(rerun_dir);

    auto start = Clock::now();
    const auto desk = ns::run_analysis_campaign(desk_config(first_dir, workers));
    const double desk_seconds = seconds_since(start);
    fmt::print("  info: desk campaign ({} walks, {} workers) took {:.1f} s\n", desk.walks.size(),
               workers, desk_seconds);

    landscape_criteria(desk);
    solver_criteria();

    const std::size_t rerun_workers = workers == 1 ? 2 : 1;
    const auto rerun = ns::run_analysis_campaign(desk_config(rerun_dir, rerun_workers));
    std::size_t differing = 0;
    for (const auto& f : desk.files) {
      const fs::path rel = fs::relative(f, first_dir);
      differing += slurp(f) != slurp(rerun_dir / rel);
    }
    check("8 determinism", differing == 0 && desk.files.size() == rerun.files.size(),
          fmt::format("rerun with {} vs {} workers: {} of {} files differ", workers, rerun_workers,
                      differing, desk.files.size()));
    check("8 runtime", desk_seconds <= 7200.0,
          fmt::format("desk campaign {:.1f} s on {} worker(s) (limit 7200 s)", desk_seconds, workers));
  } catch (const std::exception& e) {
    check("run", false, fmt::format("aborted: {}", e.what()));
  }

  fmt::print("{} of {} checks passed\n", g_checks - g_failures, g_checks);
  return g_failures == 0 ? 0 : 1;
}
