#include "neutralscape/instance.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "neutralscape/error.hpp"
#include "neutralscape/rng.hpp"

namespace neutralscape {

Instance::Instance(std::size_t n_jobs, std::size_t n_machines,
                   std::vector<ProcessingTime> row_major, std::string id,
                   std::optional<std::uint64_t> seed)
    : n_jobs_(n_jobs),
      n_machines_(n_machines),
      times_(std::move(row_major)),
      id_(std::move(id)),
      seed_(seed) {
  if (n_jobs_ == 0 || n_machines_ == 0) {
    throw ContractViolation("instance needs at least one job and one machine");
  }
  if (times_.size() != n_jobs_ * n_machines_) {
    throw ContractViolation("processing-time matrix has " + std::to_string(times_.size()) +
                            " entries, expected " + std::to_string(n_jobs_ * n_machines_));
  }
  for (auto p : times_) {
    if (p < 0) throw ContractViolation("negative processing time");
  }
}

std::int64_t Instance::total_processing_time() const noexcept {
  return std::accumulate(times_.begin(), times_.end(), std::int64_t{0});
}

Instance generate_instance(std::size_t n_jobs, std::size_t n_machines, std::uint64_t seed) {
  if (n_jobs == 0 || n_machines == 0) {
    throw ContractViolation("generate_instance needs n_jobs >= 1 and n_machines >= 1");
  }
  std::vector<ProcessingTime> times(n_jobs * n_machines);
  const std::uint64_t key = splitmix64(seed);
  for (std::size_t cell = 0; cell < times.size(); ++cell) {
    // Multiply-shift maps 64 random bits onto [0, 100); the bias is < 2^-57.
    const std::uint64_t bits = splitmix64(key ^ splitmix64(cell));
    times[cell] = static_cast<ProcessingTime>(
        (static_cast<unsigned __int128>(bits) * 100U) >> 64);
  }
  std::string id = std::to_string(n_jobs) + "x" + std::to_string(n_machines);
  return Instance(n_jobs, n_machines, std::move(times), std::move(id), seed);
}

Instance generate_taillard_instance(std::size_t n_jobs, std::size_t n_machines,
                                    std::int64_t time_seed) {
  if (n_jobs == 0 || n_machines == 0) {
    throw ContractViolation("generate_taillard_instance needs n_jobs >= 1 and n_machines >= 1");
  }
  if (time_seed < 1 || time_seed > 2147483646) {
    throw ContractViolation("Taillard time seed must lie in [1, 2^31 - 2]");
  }
  TaillardLcg lcg(time_seed);
  std::vector<ProcessingTime> times(n_jobs * n_machines);
  for (std::size_t m = 0; m < n_machines; ++m) {
    for (std::size_t j = 0; j < n_jobs; ++j) {
      times[j * n_machines + m] = static_cast<ProcessingTime>(lcg.uniform(1, 99));
    }
  }
  std::string id = std::to_string(n_jobs) + "x" + std::to_string(n_machines);
  return Instance(n_jobs, n_machines, std::move(times), std::move(id),
                  static_cast<std::uint64_t>(time_seed));
}

namespace {

struct Line {
  std::size_t number;
  std::string text;
};

bool is_blank(const std::string& s) {
  for (unsigned char c : s) {
    if (!std::isspace(c)) return false;
  }
  return true;
}

bool is_label(const std::string& s) {
  for (unsigned char c : s) {
    if (std::isspace(c)) continue;
    return std::isalpha(c) != 0;
  }
  return false;
}

std::vector<std::int64_t> parse_integers(const Line& line) {
  std::vector<std::int64_t> values;
  const char* p = line.text.data();
  const char* end = p + line.text.size();
  while (p < end) {
    while (p < end && std::isspace(static_cast<unsigned char>(*p))) ++p;
    if (p == end) break;
    const char* token_end = p;
    while (token_end < end && !std::isspace(static_cast<unsigned char>(*token_end))) ++token_end;
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(p, token_end, value);
    if (ec != std::errc{} || ptr != token_end) {
      throw ParseError(line.number, "non-integer token '" + std::string(p, token_end) + "'");
    }
    values.push_back(value);
    p = token_end;
  }
  return values;
}

std::vector<Line> content_lines(std::istream& in, bool skip_labels) {
  std::vector<Line> lines;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (is_blank(text)) continue;
    if (skip_labels && is_label(text)) continue;
    lines.push_back({number, std::move(text)});
  }
  return lines;
}

std::size_t checked_dimension(std::int64_t v, const Line& line, const char* what) {
  if (v < 1) throw ParseError(line.number, std::string(what) + " must be positive");
  return static_cast<std::size_t>(v);
}

ProcessingTime checked_time(std::int64_t v, const Line& line) {
  if (v < 0) throw ParseError(line.number, "negative processing time");
  if (v > std::numeric_limits<ProcessingTime>::max()) {
    throw ParseError(line.number, "processing time out of range");
  }
  return static_cast<ProcessingTime>(v);
}

}  // namespace

Instance parse_instance(std::istream& in, InstanceFormat format, std::string id) {
  const bool taillard = format == InstanceFormat::taillard;
  const auto lines = content_lines(in, taillard);
  if (lines.empty()) throw ParseError(1, "missing header");

  const auto header = parse_integers(lines[0]);
  const bool header_ok = taillard ? (header.size() == 2 || header.size() == 5) : header.size() == 2;
  if (!header_ok) {
    throw ParseError(lines[0].number, taillard ? "expected header '<N> <M> [<seed> <ub> <lb>]'"
                                               : "expected header '<N> <M>'");
  }
  const std::size_t n = checked_dimension(header[0], lines[0], "job count");
  const std::size_t m = checked_dimension(header[1], lines[0], "machine count");
  std::optional<std::uint64_t> seed;
  if (header.size() == 5 && header[2] > 0) seed = static_cast<std::uint64_t>(header[2]);

  const std::size_t rows = taillard ? m : n;
  const std::size_t cols = taillard ? n : m;
  const std::size_t available = lines.size() - 1;
  if (available < rows) {
    const std::size_t at = lines.back().number + 1;
    throw ParseError(at, "expected " + std::to_string(rows) + " rows, found " +
                             std::to_string(available));
  }
  if (available > rows) {
    throw ParseError(lines[rows + 1].number,
                     "unexpected data after " + std::to_string(rows) + " rows");
  }

  std::vector<ProcessingTime> times(n * m);
  for (std::size_t r = 0; r < rows; ++r) {
    const Line& line = lines[r + 1];
    const auto values = parse_integers(line);
    if (values.size() != cols) {
      throw ParseError(line.number, "expected " + std::to_string(cols) + " values, found " +
                                        std::to_string(values.size()));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t job = taillard ? c : r;
      const std::size_t machine = taillard ? r : c;
      times[job * m + machine] = checked_time(values[c], line);
    }
  }
  if (id.empty()) id = std::to_string(n) + "x" + std::to_string(m);
  return Instance(n, m, std::move(times), std::move(id), seed);
}

Instance parse_instance(std::string_view text, InstanceFormat format, std::string id) {
  std::istringstream in{std::string(text)};
  return parse_instance(in, format, std::move(id));
}

void write_instance(std::ostream& out, const Instance& instance) {
  out << instance.n_jobs() << ' ' << instance.n_machines() << '\n';
  for (std::size_t j = 0; j < instance.n_jobs(); ++j) {
    const auto row = instance.job_times(j);
    for (std::size_t m = 0; m < row.size(); ++m) {
      if (m) out << ' ';
      out << row[m];
    }
    out << '\n';
  }
}

std::string write_instance(const Instance& instance) {
  std::ostringstream out;
  write_instance(out, instance);
  return out.str();
}

Instance load_instance(const std::string& path, InstanceFormat format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
  std::string id = path;
  if (auto slash = id.find_last_of('/'); slash != std::string::npos) id.erase(0, slash + 1);
  if (auto dot = id.find_last_of('.'); dot != std::string::npos && dot > 0) id.erase(dot);
  return parse_instance(in, format, std::move(id));
}

}  // namespace neutralscape
