#include "neutralscape/io.hpp"

#include <fmt/format.h>
#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "neutralscape/error.hpp"

namespace neutralscape {

void write_walk_steps_csv(std::ostream& out, std::span<const WalkRecord> records) {
  out << "instance_id,walk_id,step,fitness,neutral_degree,evolvability,is_portal,revisited\n";
  for (const auto& r : records) {
    for (const auto& s : r.steps) {
      out << fmt::format("{},{},{},{},{},{:.6f},{},{}\n", r.instance_id, r.walk_id, s.step,
                         s.fitness, s.neutral_degree, s.evolvability, s.is_portal ? 1 : 0,
                         s.revisited ? 1 : 0);
    }
  }
}

void write_walk_summary_csv(std::ostream& out, std::span<const WalkRecord> records) {
  out << "instance_id,walk_id,typology,walk_length,first_portal_step,start_descent_length\n";
  for (const auto& r : records) {
    out << fmt::format("{},{},{},{},{},{}\n", r.instance_id, r.walk_id, to_string(r.typology),
                       r.steps.size(),
                       r.first_portal_step ? std::to_string(*r.first_portal_step) : "",
                       r.start_descent_length);
  }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::uint64_t to_u64(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "expected an unsigned integer, got '" + s + "'");
  }
}

double to_double(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "expected a number, got '" + s + "'");
  }
}

}  // namespace

std::vector<WalkRecord> read_walk_records(
    std::istream& steps_csv, std::istream& summary_csv,
    const std::function<SizeKey(const std::string&)>& size_of) {
  std::map<std::pair<std::string, std::uint64_t>, WalkRecord> walks;
  std::string line;
  std::size_t number = 0;

  while (std::getline(summary_csv, line)) {
    if (++number == 1 || line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 6) throw ParseError(number, "walk summary row needs 6 fields");
    WalkRecord r;
    r.instance_id = f[0];
    r.walk_id = to_u64(f[1], number);
    const auto typology = parse_typology(f[2]);
    if (!typology) throw ParseError(number, "unknown typology '" + f[2] + "'");
    r.typology = *typology;
    if (!f[4].empty()) r.first_portal_step = to_u64(f[4], number);
    r.start_descent_length = to_u64(f[5], number);
    const SizeKey size = size_of(r.instance_id);
    r.n_jobs = size.n_jobs;
    r.n_machines = size.n_machines;
    walks[{r.instance_id, r.walk_id}] = std::move(r);
  }

  number = 0;
  while (std::getline(steps_csv, line)) {
    if (++number == 1 || line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 8) throw ParseError(number, "walk step row needs 8 fields");
    auto it = walks.find({f[0], to_u64(f[1], number)});
    if (it == walks.end()) throw ParseError(number, "step belongs to an unknown walk");
    WalkStep s;
    s.step = to_u64(f[2], number);
    s.fitness = static_cast<Fitness>(to_u64(f[3], number));
    s.neutral_degree = to_u64(f[4], number);
    s.evolvability = to_double(f[5], number);
    s.is_portal = f[6] == "1";
    s.revisited = f[7] == "1";
    it->second.steps.push_back(s);
  }

  std::vector<WalkRecord> out;
  out.reserve(walks.size());
  for (auto& [key, r] : walks) out.push_back(std::move(r));
  return out;
}

namespace {

struct Metric {
  const char* name;
  MeanStd SizeAggregate::*field;
};

constexpr std::array<Metric, 13> kMetrics{{
    {"walk_length", &SizeAggregate::walk_length},
    {"neutral_degree", &SizeAggregate::neutral_degree},
    {"neutral_degree_ratio", &SizeAggregate::neutral_degree_ratio},
    {"rho1_neutral_degree", &SizeAggregate::rho1_neutral_degree},
    {"null_rho1_neutral_degree", &SizeAggregate::null_rho1_neutral_degree},
    {"rho1_evolvability", &SizeAggregate::rho1_evolvability},
    {"null_rho1_evolvability", &SizeAggregate::null_rho1_evolvability},
    {"t1_frequency", &SizeAggregate::t1_frequency},
    {"t2_frequency", &SizeAggregate::t2_frequency},
    {"t3_frequency", &SizeAggregate::t3_frequency},
    {"revisit_rate", &SizeAggregate::revisit_rate},
    {"steps_to_portal", &SizeAggregate::steps_to_portal},
    {"portal_correlation", &SizeAggregate::portal_correlation},
}};

}  // namespace

std::string report_to_json(const LandscapeReport& report) {
  nlohmann::ordered_json root;
  root["sizes"] = nlohmann::ordered_json::array();
  for (const auto& s : report.sizes) {
    nlohmann::ordered_json entry;
    entry["n_jobs"] = s.size.n_jobs;
    entry["n_machines"] = s.size.n_machines;
    entry["instances"] = s.instances;
    entry["walks"] = s.walks;
    entry["excluded_from_autocorrelation"] = s.excluded_from_autocorrelation;
    for (const auto& metric : kMetrics) {
      const MeanStd& v = s.*metric.field;
      entry[metric.name] = {{"mean", v.mean}, {"stddev", v.stddev}, {"count", v.count}};
    }
    root["sizes"].push_back(std::move(entry));
  }
  root["warnings"] = report.warnings;
  return root.dump(2) + "\n";
}

std::string report_to_text(const LandscapeReport& report) {
  std::string out;
  for (const auto& s : report.sizes) {
    out += fmt::format("== {} jobs x {} machines ({} instances, {} walks)\n", s.size.n_jobs,
                       s.size.n_machines, s.instances, s.walks);
    out += fmt::format("  {:<26} {:>14} {:>14} {:>6}\n", "metric", "mean", "stddev", "n");
    for (const auto& metric : kMetrics) {
      const MeanStd& v = s.*metric.field;
      out += fmt::format("  {:<26} {:>14.6f} {:>14.6f} {:>6}\n", metric.name, v.mean, v.stddev,
                         v.count);
    }
  }
  for (const auto& w : report.warnings) out += "warning: " + w + "\n";
  return out;
}

std::vector<std::filesystem::path> write_figure_csvs(const LandscapeReport& report,
                                                     const std::filesystem::path& dir) {
  const std::array<std::pair<const char*, MeanStd SizeAggregate::*>, 9> figures{{
      {"fig2_ratio.csv", &SizeAggregate::neutral_degree_ratio},
      {"fig_rho_degree.csv", &SizeAggregate::rho1_neutral_degree},
      {"fig_typology.csv", &SizeAggregate::t1_frequency},
      {"fig_typology_t2.csv", &SizeAggregate::t2_frequency},
      {"fig_typology_t3.csv", &SizeAggregate::t3_frequency},
      {"fig_revisit.csv", &SizeAggregate::revisit_rate},
      {"fig_portal_steps.csv", &SizeAggregate::steps_to_portal},
      {"fig_rho_evolvability.csv", &SizeAggregate::rho1_evolvability},
      {"fig_portal_correlation.csv", &SizeAggregate::portal_correlation},
  }};
  std::vector<std::filesystem::path> written;
  for (const auto& [name, field] : figures) {
    std::string csv = "n_jobs,n_machines,mean,stddev\n";
    for (const auto& s : report.sizes) {
      const MeanStd& v = s.*field;
      csv += fmt::format("{},{},{:.6f},{:.6f}\n", s.size.n_jobs, s.size.n_machines, v.mean,
                         v.stddev);
    }
    const auto path = dir / name;
    write_text_file(path, csv);
    written.push_back(path);
  }
  return written;
}

std::string search_result_to_json(const SearchResult& result, const std::string& algorithm,
                                  const std::string& instance_id, double wall_seconds) {
  nlohmann::ordered_json j;
  j["instance"] = instance_id;
  j["algorithm"] = algorithm;
  j["best_fitness"] = result.best_fitness;
  j["best_permutation"] = result.best_perm.order();
  j["evaluations_used"] = result.evaluations_used;
  j["complete"] = result.complete;
  j["local_optimum"] = result.local_optimum;
  j["wall_seconds"] = wall_seconds;
  j["descent_lengths"] = result.descent_lengths;
  j["incumbents"] = result.incumbents;
  auto& trajectory = j["trajectory"] = nlohmann::ordered_json::array();
  for (const auto& e : result.trajectory) {
    trajectory.push_back({{"iteration", e.iteration},
                          {"evaluations", e.evaluations},
                          {"fitness", e.fitness},
                          {"best", e.best},
                          {"event", e.event}});
  }
  return j.dump(2) + "\n";
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 initialisation failed");
  }
  std::array<char, 1 << 16> buffer{};
  while (in) {
    in.read(buffer.data(), buffer.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buffer.data(), in.gcount());
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx.get(), digest.data(), &length);
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace neutralscape
