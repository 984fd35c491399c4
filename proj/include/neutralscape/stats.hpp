#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "neutralscape/landscape.hpp"

namespace neutralscape {

class Rng;

struct Autocorrelation {
  /// rho[k-1] holds rho(k) for k = 1..max_lag.
  std::vector<double> rho;
  /// Constant series: every rho is reported as 0.
  bool degenerate = false;
};

/// Global-mean estimator rho(k) = sum_i (x_i - m)(x_{i+k} - m) / sum_i (x_i - m)^2.
/// Requires series.size() > max_lag + 1 and max_lag >= 1.
Autocorrelation autocorrelation(std::span<const double> series, std::size_t max_lag);

struct NullModelSummary {
  double mean_rho1 = 0.0;
  double max_abs_rho1 = 0.0;
  std::size_t repeats = 0;
  bool degenerate = false;
};

/// rho(1) of `repeats` uniform shuffles of the series. Requires size >= 3.
NullModelSummary shuffle_null_model(std::span<const double> series, std::size_t repeats,
                                    Rng& rng);

/// Pearson coefficient. Throws ContractViolation on length mismatch, fewer than
/// two points, or a constant input.
double pearson(std::span<const double> x, std::span<const double> y);

struct MeanStd {
  double mean = 0.0;
  /// Sample standard deviation (n - 1); 0 for a single value.
  double stddev = 0.0;
  std::size_t count = 0;
};

MeanStd mean_stddev(std::span<const double> values);

struct SizeKey {
  std::size_t n_jobs = 0;
  std::size_t n_machines = 0;

  friend auto operator<=>(const SizeKey&, const SizeKey&) = default;
};

std::string to_string(const SizeKey& key);

/// Two-level aggregates for one (N, M): each value is the mean over instance
/// means, each instance mean taken over that instance's walks; stddev is
/// across instance means. Instances where a metric is undefined are skipped.
struct SizeAggregate {
  SizeKey size;
  std::size_t instances = 0;
  std::size_t walks = 0;
  MeanStd walk_length;
  MeanStd neutral_degree;
  MeanStd neutral_degree_ratio;
  MeanStd rho1_neutral_degree;
  MeanStd null_rho1_neutral_degree;
  MeanStd rho1_evolvability;
  MeanStd null_rho1_evolvability;
  MeanStd t1_frequency;
  MeanStd t2_frequency;
  MeanStd t3_frequency;
  /// Over T2/T3 walks only.
  MeanStd revisit_rate;
  /// Over T3 walks only.
  MeanStd steps_to_portal;
  MeanStd portal_correlation;
  /// Walks too short (or constant) for the autocorrelation aggregates.
  std::size_t excluded_from_autocorrelation = 0;
};

struct LandscapeReport {
  std::vector<SizeAggregate> sizes;  // ascending (N, M)
  std::vector<std::string> warnings;
};

struct ReportOptions {
  std::size_t null_repeats = 100;
  std::uint64_t seed = 0;
  /// Walks with fewer recorded steps are left out of rho and correlation aggregates.
  std::size_t min_series_length = 10;
};

/// Per-walk quantities feeding the report. Optional fields are absent when the
/// walk is too short or the series is degenerate.
struct WalkMetrics {
  double mean_neutral_degree = 0.0;
  double neutral_degree_ratio = 0.0;
  std::optional<double> rho1_neutral_degree;
  std::optional<double> null_rho1_neutral_degree;
  std::optional<double> rho1_evolvability;
  std::optional<double> null_rho1_evolvability;
  std::optional<double> revisit_rate;
  std::optional<double> steps_to_portal;
  std::optional<double> portal_correlation;
};

WalkMetrics walk_metrics(const WalkRecord& record, const ReportOptions& options);

LandscapeReport aggregate_report(std::span<const WalkRecord> records,
                                 const ReportOptions& options = {});

}  // namespace neutralscape
