#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "neutralscape/landscape.hpp"
#include "neutralscape/search.hpp"
#include "neutralscape/stats.hpp"

namespace neutralscape {

/// One row per step:
/// instance_id,walk_id,step,fitness,neutral_degree,evolvability,is_portal,revisited
void write_walk_steps_csv(std::ostream& out, std::span<const WalkRecord> records);

/// One row per walk:
/// instance_id,walk_id,typology,walk_length,first_portal_step,start_descent_length
void write_walk_summary_csv(std::ostream& out, std::span<const WalkRecord> records);

/// Rebuilds walk records from the two CSV files. `size_of` maps an instance id
/// to its (N, M). Portal witnesses are not stored in the CSV and come back empty.
std::vector<WalkRecord> read_walk_records(std::istream& steps_csv, std::istream& summary_csv,
                                          const std::function<SizeKey(const std::string&)>& size_of);

/// Machine-readable report.
std::string report_to_json(const LandscapeReport& report);
/// Aligned-column human-readable report.
std::string report_to_text(const LandscapeReport& report);

/// Writes fig2_ratio.csv, fig_rho_degree.csv, fig_typology.csv (T1),
/// fig_typology_t2.csv, fig_typology_t3.csv, fig_revisit.csv, fig_portal_steps.csv,
/// fig_rho_evolvability.csv and fig_portal_correlation.csv, each with columns
/// n_jobs,n_machines,mean,stddev. Returns the written paths.
std::vector<std::filesystem::path> write_figure_csvs(const LandscapeReport& report,
                                                     const std::filesystem::path& dir);

std::string search_result_to_json(const SearchResult& result, const std::string& algorithm,
                                  const std::string& instance_id, double wall_seconds);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Writes `content` to `path`, throwing std::runtime_error on any I/O failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace neutralscape
