#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "neutralscape/instance.hpp"
#include "neutralscape/landscape.hpp"
#include "neutralscape/search.hpp"
#include "neutralscape/stats.hpp"

namespace neutralscape {

/// Parses "20x5,20x10" into size keys. Throws std::invalid_argument.
std::vector<SizeKey> parse_sizes(std::string_view text);

/// Instance k (1-based) of a size under a master seed; id "<N>x<M>_<k>".
Instance campaign_instance(const SizeKey& size, std::size_t k, std::uint64_t master_seed,
                           RngMode mode);

/// Writes `count` instance files <N>x<M>_<k>.txt (k = 1..count) into `output_dir`.
std::vector<std::filesystem::path> run_generate(std::size_t n_jobs, std::size_t n_machines,
                                                std::size_t count, std::uint64_t seed,
                                                RngMode mode,
                                                const std::filesystem::path& output_dir);

struct CampaignConfig {
  std::vector<SizeKey> sizes;
  std::size_t instances_per_size = 10;
  std::size_t walks_per_instance = 30;
  std::size_t descents_for_length_calibration = 30;
  std::size_t walk_length_multiplier = 10;
  std::uint64_t master_seed = 0;
  std::filesystem::path output_dir;
  RngMode rng_mode = RngMode::native;
  std::size_t jobs = 1;
  /// All walks of an instance start from the first calibration optimum.
  bool shared_start = false;
  std::size_t null_repeats = 100;
  /// Called from the coordinating thread only.
  std::function<void(const std::string&)> progress;
};

/// Throws std::invalid_argument for empty sizes, zero counts, or N < 2.
void validate(const CampaignConfig& config);

struct DescentRecord {
  std::string instance_id;
  std::uint64_t descent_id = 0;
  std::uint64_t length = 0;
  Fitness fitness = 0;
};

struct CampaignResult {
  LandscapeReport report;
  std::vector<WalkRecord> walks;       // sorted by (instance, walk)
  std::vector<DescentRecord> descents; // sorted by (instance, descent)
  std::vector<std::filesystem::path> files;
};

/// Per instance: calibration steepest descents from random solutions, walk budget =
/// multiplier x longest descent, then one neutral walk per walk id from a fresh
/// local optimum (calibration optima are reused for the first walks). Writes
/// instances/, descents.csv, walk_steps.csv, walk_summary.csv, report.json,
/// report.txt, fig_*.csv, config.json and manifest.json. Output bytes depend only
/// on the configuration, never on `jobs`.
CampaignResult run_analysis_campaign(const CampaignConfig& config);

/// Rebuilds report.json, report.txt and fig_*.csv of an existing campaign
/// directory from its CSVs. Seed and null-model repeats come from config.json
/// unless `null_repeats` overrides the latter.
LandscapeReport run_report(const std::filesystem::path& campaign_dir,
                           std::optional<std::size_t> null_repeats = std::nullopt);

enum class Algorithm { ils, neutral_guided, descent, neh };

std::optional<Algorithm> parse_algorithm(std::string_view text) noexcept;
std::string_view to_string(Algorithm a) noexcept;

struct SolveOutcome {
  SearchResult result;
  double wall_seconds = 0.0;
  std::string json;
};

/// `descent` means random-restart first-improvement descent under the budget.
SolveOutcome run_solver(const Instance& instance, Algorithm algorithm,
                        const SearchConfig& config);

}  // namespace neutralscape
