// neutralscape: flowshop instance generation, neutrality analysis campaigns,
// and solvers.
//
//   neutralscape generate --jobs-count 20 --machines 5 --count 10 --seed 7 --out DIR
//   neutralscape analyze  --sizes 20x5,20x10 --instances 10 --walks 30 --out DIR
//   neutralscape solve    INSTANCE --algorithm ils --max-evals 1000000
//   neutralscape report   DIR
//
// Exit codes: 0 success, 1 usage error, 2 runtime failure.

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <map>

#include "neutralscape/campaign.hpp"
#include "neutralscape/error.hpp"
#include "neutralscape/io.hpp"

namespace ns = neutralscape;

namespace {

constexpr int kUsageError = 1;
constexpr int kRuntimeError = 2;

std::string output_dir(const std::string& flag_value) {
  if (const char* env = std::getenv("NEUTRALSCAPE_OUT"); env && *env) return env;
  return flag_value;
}

const std::map<std::string, ns::RngMode> kRngModes{{"native", ns::RngMode::native},
                                                   {"taillard", ns::RngMode::taillard}};
const std::map<std::string, ns::InstanceFormat> kFormats{
    {"native", ns::InstanceFormat::native}, {"taillard", ns::InstanceFormat::taillard}};
const std::map<std::string, ns::Algorithm> kAlgorithms{
    {"ils", ns::Algorithm::ils},
    {"neutral_guided", ns::Algorithm::neutral_guided},
    {"descent", ns::Algorithm::descent},
    {"neh", ns::Algorithm::neh}};
const std::map<std::string, ns::Acceptance> kAcceptance{
    {"better", ns::Acceptance::better},
    {"metropolis", ns::Acceptance::metropolis},
    {"better_or_equal", ns::Acceptance::better_or_equal}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Permutation flowshop neutrality toolkit"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "Write random U[0,99] instance files");
  std::size_t gen_jobs = 20, gen_machines = 5, gen_count = 10;
  std::uint64_t gen_seed = 0;
  std::string gen_out = "instances";
  ns::RngMode gen_rng = ns::RngMode::native;
  generate->add_option("-n,--jobs-count", gen_jobs, "Number of jobs")->check(CLI::PositiveNumber);
  generate->add_option("-m,--machines", gen_machines, "Number of machines")
      ->check(CLI::PositiveNumber);
  generate->add_option("--count", gen_count, "Number of instances")->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen_seed, "Master seed");
  generate->add_option("--rng", gen_rng, "native or taillard")
      ->transform(CLI::CheckedTransformer(kRngModes));
  generate->add_option("--out", gen_out, "Output directory");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Run a neutral-walk analysis campaign");
  std::string sizes_text = "20x5,20x10,20x20";
  ns::CampaignConfig campaign;
  std::string campaign_out = "campaign";
  analyze->add_option("--sizes", sizes_text, "Comma-separated <N>x<M> list");
  analyze->add_option("--instances", campaign.instances_per_size, "Instances per size")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--walks", campaign.walks_per_instance, "Neutral walks per instance")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--descents", campaign.descents_for_length_calibration,
                      "Calibration descents per instance")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--multiplier", campaign.walk_length_multiplier,
                      "Walk length = multiplier x longest calibration descent")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--seed", campaign.master_seed, "Master seed");
  analyze->add_option("--jobs", campaign.jobs, "Worker threads")->check(CLI::PositiveNumber);
  analyze->add_option("--rng", campaign.rng_mode, "native or taillard")
      ->transform(CLI::CheckedTransformer(kRngModes));
  analyze->add_option("--out", campaign_out, "Output directory (NEUTRALSCAPE_OUT overrides)");
  analyze->add_option("--null-repeats", campaign.null_repeats, "Shuffles per null model")
      ->check(CLI::PositiveNumber);
  analyze->add_flag("--shared-start", campaign.shared_start,
                    "Start every walk of an instance from the same local optimum");
  bool quiet = false;
  analyze->add_flag("-q,--quiet", quiet, "No progress output");

  // solve
  auto* solve = app.add_subcommand("solve", "Run a solver on one instance file");
  std::string instance_path;
  ns::InstanceFormat format = ns::InstanceFormat::native;
  std::string algorithm_name = "ils";
  ns::SearchConfig search;
  double temperature = -1.0;
  std::string json_path;
  solve->add_option("instance", instance_path, "Instance file")->required();
  solve->add_option("--format", format, "native or taillard")
      ->transform(CLI::CheckedTransformer(kFormats));
  solve->add_option("-a,--algorithm", algorithm_name, "ils, neutral_guided, descent or neh")
      ->check(CLI::IsMember(kAlgorithms));
  solve->add_option("--seed", search.seed, "Run seed");
  solve->add_option("--max-evals", search.max_evaluations, "Evaluation budget")
      ->check(CLI::PositiveNumber);
  solve->add_option("--strength", search.perturbation_strength, "Perturbation moves")
      ->check(CLI::PositiveNumber);
  solve->add_option("--temperature", temperature,
                    "Metropolis temperature (default sum(p)/(10NM))");
  solve->add_option("--max-neutral-steps", search.max_neutral_steps,
                    "Neutral steps before perturbing (neutral_guided)")
      ->check(CLI::PositiveNumber);
  std::string acceptance_name = "metropolis";
  solve->add_option("--acceptance", acceptance_name, "better, metropolis or better_or_equal")
      ->check(CLI::IsMember(kAcceptance));
  solve->add_option("--sampled-evolvability", search.sampled_evolvability,
                    "Estimate evolvability from K sampled neighbors (0 = exact)");
  solve->add_option("--json", json_path, "Write the result and trajectory as JSON");

  // report
  auto* report = app.add_subcommand("report", "Rebuild report files of a campaign directory");
  std::string report_dir;
  std::size_t report_repeats = 0;
  report->add_option("dir", report_dir, "Campaign directory")->required();
  report->add_option("--null-repeats", report_repeats, "Override shuffles per null model");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*generate) {
      const auto files = ns::run_generate(gen_jobs, gen_machines, gen_count, gen_seed, gen_rng,
                                          output_dir(gen_out));
      for (const auto& f : files) std::cout << f.string() << '\n';
    } else if (*analyze) {
      try {
        campaign.sizes = ns::parse_sizes(sizes_text);
        campaign.output_dir = output_dir(campaign_out);
        ns::validate(campaign);
      } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsageError;
      }
      if (!quiet) campaign.progress = [](const std::string& m) { std::cerr << m << '\n'; };
      const auto result = ns::run_analysis_campaign(campaign);
      std::cout << ns::report_to_text(result.report);
      std::cout << "wrote " << result.files.size() << " files to "
                << campaign.output_dir.string() << '\n';
    } else if (*solve) {
      if (temperature >= 0.0) search.metropolis_temperature = temperature;
      search.acceptance = kAcceptance.at(acceptance_name);
      const ns::Algorithm algorithm = kAlgorithms.at(algorithm_name);
      search.record_trajectory = !json_path.empty();
      const ns::Instance inst = ns::load_instance(instance_path, format);
      const auto outcome = ns::run_solver(inst, algorithm, search);
      std::cout << fmt::format("best_fitness {}\nevaluations {}\nwall_seconds {:.3f}\n",
                               outcome.result.best_fitness, outcome.result.evaluations_used,
                               outcome.wall_seconds);
      std::cout << "permutation " << outcome.result.best_perm.to_string() << '\n';
      if (!json_path.empty()) ns::write_text_file(json_path, outcome.json);
    } else if (*report) {
      std::optional<std::size_t> repeats;
      if (report_repeats > 0) repeats = report_repeats;
      std::cout << ns::report_to_text(ns::run_report(report_dir, repeats));
    }
  } catch (const ns::ContractViolation& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return 0;
}
