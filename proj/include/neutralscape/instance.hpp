#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace neutralscape {

using ProcessingTime = std::int32_t;

/// A permutation flowshop instance: N jobs, M machines, and the N x M matrix of
/// processing times (row i = job i, column j = machine j). Immutable once built.
class Instance {
 public:
  /// Throws ContractViolation when the matrix is not n_jobs x n_machines,
  /// a dimension is zero, or a processing time is negative.
  Instance(std::size_t n_jobs, std::size_t n_machines, std::vector<ProcessingTime> row_major,
           std::string id = {}, std::optional<std::uint64_t> seed = std::nullopt);

  std::size_t n_jobs() const noexcept { return n_jobs_; }
  std::size_t n_machines() const noexcept { return n_machines_; }

  ProcessingTime time(std::size_t job, std::size_t machine) const noexcept {
    return times_[job * n_machines_ + machine];
  }

  /// Processing times of one job across machines 0..M-1.
  std::span<const ProcessingTime> job_times(std::size_t job) const noexcept {
    return {times_.data() + job * n_machines_, n_machines_};
  }

  std::span<const ProcessingTime> row_major() const noexcept { return times_; }

  const std::string& id() const noexcept { return id_; }
  const std::optional<std::uint64_t>& seed() const noexcept { return seed_; }

  std::int64_t total_processing_time() const noexcept;

  /// Equality of dimensions and matrix only; id and seed are metadata.
  friend bool operator==(const Instance& a, const Instance& b) noexcept {
    return a.n_jobs_ == b.n_jobs_ && a.n_machines_ == b.n_machines_ && a.times_ == b.times_;
  }

 private:
  std::size_t n_jobs_;
  std::size_t n_machines_;
  std::vector<ProcessingTime> times_;
  std::string id_;
  std::optional<std::uint64_t> seed_;
};

enum class RngMode { native, taillard };

/// Uniform U[0, 99] processing times from a counter-based stream keyed by
/// (seed, cell index). Pure function of its arguments.
Instance generate_instance(std::size_t n_jobs, std::size_t n_machines, std::uint64_t seed);

/// Taillard's generator: machine-major draws from the 16807 LCG on [1, 99].
/// `time_seed` must lie in [1, 2^31 - 2]. With a published time seed this
/// reproduces the corresponding benchmark matrix exactly.
Instance generate_taillard_instance(std::size_t n_jobs, std::size_t n_machines,
                                    std::int64_t time_seed);

enum class InstanceFormat { native, taillard };

/// Reads an instance. Native: "N M" then N rows of M integers.
/// Taillard: "N M [seed ub lb]" then M rows of N integers (transposed on read);
/// lines starting with a letter are treated as labels and skipped.
/// Throws ParseError naming the line on malformed input.
Instance parse_instance(std::istream& in, InstanceFormat format = InstanceFormat::native,
                        std::string id = {});
Instance parse_instance(std::string_view text, InstanceFormat format = InstanceFormat::native,
                        std::string id = {});

/// Native format, LF newlines.
void write_instance(std::ostream& out, const Instance& instance);
std::string write_instance(const Instance& instance);

Instance load_instance(const std::string& path, InstanceFormat format = InstanceFormat::native);

}  // namespace neutralscape
