#include "neutralscape/campaign.hpp"

#include <fmt/format.h>

#include <chrono>
#include <fstream>
#include <map>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "neutralscape/error.hpp"
#include "neutralscape/io.hpp"
#include "neutralscape/rng.hpp"
#include "parallel.hpp"

namespace fs = std::filesystem;

namespace neutralscape {

std::vector<SizeKey> parse_sizes(std::string_view text) {
  std::vector<SizeKey> sizes;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    const std::size_t comma = std::min(text.find(',', begin), text.size());
    const std::string item(text.substr(begin, comma - begin));
    const auto x = item.find('x');
    std::size_t n = 0, m = 0;
    try {
      if (x == std::string::npos) throw std::invalid_argument(item);
      std::size_t used_n = 0, used_m = 0;
      n = std::stoul(item.substr(0, x), &used_n);
      m = std::stoul(item.substr(x + 1), &used_m);
      if (used_n != x || used_m != item.size() - x - 1) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad size '" + item + "', expected <jobs>x<machines>");
    }
    if (n == 0 || m == 0) throw std::invalid_argument("size '" + item + "' has a zero dimension");
    sizes.push_back({n, m});
    begin = comma + 1;
  }
  return sizes;
}

Instance campaign_instance(const SizeKey& size, std::size_t k, std::uint64_t master_seed,
                           RngMode mode) {
  const std::uint64_t seed =
      derive_seed(master_seed, "instance", (size.n_jobs << 32) | size.n_machines, k);
  const std::string id = to_string(size) + "_" + std::to_string(k);
  Instance base = mode == RngMode::native
                      ? generate_instance(size.n_jobs, size.n_machines, seed)
                      : generate_taillard_instance(size.n_jobs, size.n_machines,
                                                   static_cast<std::int64_t>(1 + seed % 2147483646));
  std::vector<ProcessingTime> times(base.row_major().begin(), base.row_major().end());
  return Instance(base.n_jobs(), base.n_machines(), std::move(times), id, base.seed());
}

std::vector<fs::path> run_generate(std::size_t n_jobs, std::size_t n_machines, std::size_t count,
                                   std::uint64_t seed, RngMode mode, const fs::path& output_dir) {
  fs::create_directories(output_dir);
  std::vector<fs::path> files;
  for (std::size_t k = 1; k <= count; ++k) {
    const Instance inst = campaign_instance({n_jobs, n_machines}, k, seed, mode);
    const fs::path path = output_dir / (inst.id() + ".txt");
    write_text_file(path, write_instance(inst));
    files.push_back(path);
  }
  return files;
}

void validate(const CampaignConfig& config) {
  if (config.sizes.empty()) throw std::invalid_argument("campaign needs at least one size");
  for (const auto& s : config.sizes) {
    if (s.n_jobs < 2) {
      throw std::invalid_argument("size " + to_string(s) + " needs at least 2 jobs");
    }
    if (s.n_machines < 1) throw std::invalid_argument("size " + to_string(s) + " has no machine");
  }
  if (config.instances_per_size == 0 || config.walks_per_instance == 0 ||
      config.descents_for_length_calibration == 0 || config.walk_length_multiplier == 0 ||
      config.null_repeats == 0) {
    throw std::invalid_argument("campaign counts must all be >= 1");
  }
  if (config.output_dir.empty()) throw std::invalid_argument("campaign needs an output directory");
}

namespace {

struct LocalOptimum {
  Permutation perm;
  std::uint64_t length = 0;
  Fitness fitness = 0;
};

LocalOptimum descend_from_random(const Instance& instance, std::uint64_t seed) {
  Rng rng(seed);
  const Permutation start = Permutation::random(instance.n_jobs(), rng);
  SearchResult r = steepest_descent(instance, start, rng);
  return {std::move(r.best_perm), r.descent_lengths.front(), r.best_fitness};
}

// Tracks everything written so an aborted run still leaves a manifest.
class OutputTracker {
 public:
  explicit OutputTracker(fs::path root) : root_(std::move(root)) {}

  void write(const fs::path& relative, const std::string& content) {
    write_text_file(root_ / relative, content);
    files_.push_back(relative);
  }
  void adopt(const fs::path& absolute) { files_.push_back(fs::relative(absolute, root_)); }

  void write_manifest(bool complete) const {
    nlohmann::ordered_json manifest;
    manifest["complete"] = complete;
    auto& entries = manifest["files"] = nlohmann::ordered_json::array();
    std::vector<fs::path> sorted = files_;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& rel : sorted) {
      const fs::path abs = root_ / rel;
      if (!fs::exists(abs)) continue;
      entries.push_back({{"path", rel.generic_string()},
                         {"bytes", fs::file_size(abs)},
                         {"sha256", sha256_file(abs)}});
    }
    write_text_file(root_ / "manifest.json", manifest.dump(2) + "\n");
  }

  std::vector<fs::path> absolute_files() const {
    std::vector<fs::path> out;
    for (const auto& rel : files_) out.push_back(root_ / rel);
    out.push_back(root_ / "manifest.json");
    return out;
  }

 private:
  fs::path root_;
  std::vector<fs::path> files_;
};

std::string config_json(const CampaignConfig& c) {
  nlohmann::ordered_json j;
  std::vector<std::string> sizes;
  for (const auto& s : c.sizes) sizes.push_back(to_string(s));
  j["sizes"] = sizes;
  j["instances_per_size"] = c.instances_per_size;
  j["walks_per_instance"] = c.walks_per_instance;
  j["descents_for_length_calibration"] = c.descents_for_length_calibration;
  j["walk_length_multiplier"] = c.walk_length_multiplier;
  j["master_seed"] = c.master_seed;
  j["rng_mode"] = c.rng_mode == RngMode::native ? "native" : "taillard";
  j["shared_start"] = c.shared_start;
  j["null_repeats"] = c.null_repeats;
  return j.dump(2) + "\n";
}

void write_report_files(OutputTracker& out, const fs::path& dir, const LandscapeReport& report) {
  out.write("report.json", report_to_json(report));
  out.write("report.txt", report_to_text(report));
  for (const auto& path : write_figure_csvs(report, dir)) out.adopt(path);
}

}  // namespace

CampaignResult run_analysis_campaign(const CampaignConfig& config) {
  validate(config);
  const auto say = [&](const std::string& msg) {
    if (config.progress) config.progress(msg);
  };
  const fs::path root = config.output_dir;
  fs::create_directories(root / "instances");
  OutputTracker out(root);
  CampaignResult result;

  try {
    out.write("config.json", config_json(config));

    std::vector<Instance> instances;
    for (const auto& size : config.sizes) {
      for (std::size_t k = 1; k <= config.instances_per_size; ++k) {
        instances.push_back(campaign_instance(size, k, config.master_seed, config.rng_mode));
        out.write(fs::path("instances") / (instances.back().id() + ".txt"),
                  write_instance(instances.back()));
      }
    }

    const std::size_t n_descents = config.descents_for_length_calibration;
    const std::size_t n_walks = config.walks_per_instance;

    say(fmt::format("calibration: {} descents on {} instances", n_descents, instances.size()));
    std::vector<LocalOptimum> optima(instances.size() * n_descents);
    detail::parallel_for(optima.size(), config.jobs, [&](std::size_t task) {
      const Instance& inst = instances[task / n_descents];
      const std::size_t d = task % n_descents;
      optima[task] =
          descend_from_random(inst, derive_seed(config.master_seed, "descent:" + inst.id(), d));
    });

    std::vector<std::uint64_t> walk_budget(instances.size(), 1);
    std::string descents_csv = "instance_id,descent_id,length,fitness\n";
    for (std::size_t i = 0; i < instances.size(); ++i) {
      std::uint64_t longest = 0;
      for (std::size_t d = 0; d < n_descents; ++d) {
        const auto& lo = optima[i * n_descents + d];
        longest = std::max(longest, lo.length);
        result.descents.push_back({instances[i].id(), d, lo.length, lo.fitness});
        descents_csv += fmt::format("{},{},{},{}\n", instances[i].id(), d, lo.length, lo.fitness);
      }
      walk_budget[i] = std::max<std::uint64_t>(1, config.walk_length_multiplier * longest);
    }
    out.write("descents.csv", descents_csv);

    say(fmt::format("walks: {} per instance", n_walks));
    result.walks.resize(instances.size() * n_walks);
    detail::parallel_for(result.walks.size(), config.jobs, [&](std::size_t task) {
      const std::size_t i = task / n_walks;
      const std::size_t w = task % n_walks;
      const Instance& inst = instances[i];
      LocalOptimum fresh;
      const LocalOptimum* start = nullptr;
      if (config.shared_start) {
        start = &optima[i * n_descents];
      } else if (w < n_descents) {
        start = &optima[i * n_descents + w];
      } else {
        fresh = descend_from_random(
            inst, derive_seed(config.master_seed, "walk-start:" + inst.id(), w));
        start = &fresh;
      }
      Rng rng(derive_seed(config.master_seed, "walk:" + inst.id(), w));
      result.walks[task] = neutral_walk(inst, start->perm, walk_budget[i], rng,
                                        {inst.id(), w, start->length});
    });

    {
      std::ostringstream steps, summary;
      write_walk_steps_csv(steps, result.walks);
      write_walk_summary_csv(summary, result.walks);
      out.write("walk_steps.csv", steps.str());
      out.write("walk_summary.csv", summary.str());
    }

    say("aggregating report");
    ReportOptions options;
    options.null_repeats = config.null_repeats;
    options.seed = config.master_seed;
    result.report = aggregate_report(result.walks, options);
    write_report_files(out, root, result.report);
    out.write_manifest(true);
  } catch (...) {
    try {
      out.write_manifest(false);
    } catch (...) {
    }
    throw;
  }
  result.files = out.absolute_files();
  return result;
}

LandscapeReport run_report(const fs::path& dir, std::optional<std::size_t> null_repeats) {
  ReportOptions options;
  if (std::ifstream cfg(dir / "config.json"); cfg) {
    const auto j = nlohmann::json::parse(cfg);
    options.seed = j.value("master_seed", std::uint64_t{0});
    options.null_repeats = j.value("null_repeats", options.null_repeats);
  }
  if (null_repeats) options.null_repeats = *null_repeats;

  std::ifstream steps(dir / "walk_steps.csv");
  std::ifstream summary(dir / "walk_summary.csv");
  if (!steps || !summary) {
    throw std::runtime_error("'" + dir.string() + "' lacks walk_steps.csv / walk_summary.csv");
  }
  std::map<std::string, SizeKey> sizes;
  auto size_of = [&](const std::string& id) {
    if (auto it = sizes.find(id); it != sizes.end()) return it->second;
    const Instance inst = load_instance((dir / "instances" / (id + ".txt")).string());
    return sizes[id] = SizeKey{inst.n_jobs(), inst.n_machines()};
  };
  const auto records = read_walk_records(steps, summary, size_of);
  LandscapeReport report = aggregate_report(records, options);

  OutputTracker out(dir);
  write_report_files(out, dir, report);
  return report;
}

std::optional<Algorithm> parse_algorithm(std::string_view text) noexcept {
  if (text == "ils") return Algorithm::ils;
  if (text == "neutral_guided" || text == "neutral-guided") return Algorithm::neutral_guided;
  if (text == "descent") return Algorithm::descent;
  if (text == "neh") return Algorithm::neh;
  return std::nullopt;
}

std::string_view to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::ils: return "ils";
    case Algorithm::neutral_guided: return "neutral_guided";
    case Algorithm::descent: return "descent";
    case Algorithm::neh: return "neh";
  }
  return "?";
}

SolveOutcome run_solver(const Instance& instance, Algorithm algorithm,
                        const SearchConfig& config) {
  validate(config);
  const auto t0 = std::chrono::steady_clock::now();
  SolveOutcome outcome;
  switch (algorithm) {
    case Algorithm::ils: outcome.result = ils_stutzle(instance, config); break;
    case Algorithm::neutral_guided: outcome.result = neutral_guided_search(instance, config); break;
    case Algorithm::descent: outcome.result = restart_descent(instance, config); break;
    case Algorithm::neh: {
      SearchResult& r = outcome.result;
      r.best_perm = neh_construct(instance, &r.evaluations_used);
      r.best_fitness = makespan(instance, r.best_perm);
      r.evaluations_used += 1;
      r.incumbents.push_back(r.best_fitness);
      break;
    }
  }
  outcome.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  outcome.json = search_result_to_json(outcome.result, std::string(to_string(algorithm)),
                                       instance.id(), outcome.wall_seconds);
  return outcome;
}

}  // namespace neutralscape
