#include "neutralscape/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "neutralscape/error.hpp"
#include "neutralscape/rng.hpp"

namespace neutralscape {

namespace {

bool is_constant(std::span<const double> values) {
  return std::adjacent_find(values.begin(), values.end(), std::not_equal_to<>()) == values.end();
}

double mean_of(std::span<const double> values) {
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double lag_one(std::span<const double> x) {
  const double m = mean_of(x);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - m;
    den += d * d;
    if (i + 1 < x.size()) num += d * (x[i + 1] - m);
  }
  return std::clamp(num / den, -1.0, 1.0);
}

}  // namespace

Autocorrelation autocorrelation(std::span<const double> series, std::size_t max_lag) {
  if (max_lag == 0) throw ContractViolation("autocorrelation needs max_lag >= 1");
  if (series.size() <= max_lag + 1) {
    throw ContractViolation("series of length " + std::to_string(series.size()) +
                            " too short for lag " + std::to_string(max_lag));
  }
  Autocorrelation out;
  out.rho.assign(max_lag, 0.0);
  if (is_constant(series)) {
    out.degenerate = true;
    return out;
  }
  const double m = mean_of(series);
  std::vector<double> centered(series.size());
  std::transform(series.begin(), series.end(), centered.begin(),
                 [m](double v) { return v - m; });
  const double den = std::inner_product(centered.begin(), centered.end(), centered.begin(), 0.0);
  for (std::size_t k = 1; k <= max_lag; ++k) {
    double num = 0.0;
    for (std::size_t i = 0; i + k < centered.size(); ++i) num += centered[i] * centered[i + k];
    out.rho[k - 1] = std::clamp(num / den, -1.0, 1.0);
  }
  return out;
}

NullModelSummary shuffle_null_model(std::span<const double> series, std::size_t repeats,
                                    Rng& rng) {
  if (series.size() < 3) throw ContractViolation("null model needs a series of length >= 3");
  if (repeats == 0) throw ContractViolation("null model needs repeats >= 1");
  NullModelSummary out;
  out.repeats = repeats;
  if (is_constant(series)) {
    out.degenerate = true;
    return out;
  }
  std::vector<double> shuffled(series.begin(), series.end());
  double total = 0.0;
  for (std::size_t r = 0; r < repeats; ++r) {
    rng.shuffle(shuffled.begin(), shuffled.end());
    const double rho = lag_one(shuffled);
    total += rho;
    out.max_abs_rho1 = std::max(out.max_abs_rho1, std::abs(rho));
  }
  out.mean_rho1 = total / static_cast<double>(repeats);
  return out;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ContractViolation("pearson: length mismatch");
  if (x.size() < 2) throw ContractViolation("pearson: needs at least two points");
  if (is_constant(x) || is_constant(y)) throw ContractViolation("pearson: zero variance");
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

MeanStd mean_stddev(std::span<const double> values) {
  MeanStd out;
  out.count = values.size();
  if (values.empty()) return out;
  out.mean = mean_of(values);
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return out;
}

std::string to_string(const SizeKey& key) {
  return std::to_string(key.n_jobs) + "x" + std::to_string(key.n_machines);
}

WalkMetrics walk_metrics(const WalkRecord& record, const ReportOptions& options) {
  WalkMetrics m;
  const auto& steps = record.steps;
  if (steps.empty()) return m;

  std::vector<double> degree(steps.size());
  std::vector<double> evolvability(steps.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    degree[i] = static_cast<double>(steps[i].neutral_degree);
    evolvability[i] = steps[i].evolvability;
  }
  m.mean_neutral_degree = mean_of(degree);
  const double hood = static_cast<double>(insertion_neighborhood_size(record.n_jobs));
  m.neutral_degree_ratio = hood > 0 ? m.mean_neutral_degree / hood : 0.0;

  if (steps.size() >= std::max<std::size_t>(options.min_series_length, 3)) {
    auto lag1 = [&](const std::vector<double>& series, std::string_view tag,
                    std::optional<double>& rho, std::optional<double>& null_rho) {
      const auto ac = autocorrelation(series, 1);
      if (ac.degenerate) return;
      rho = ac.rho[0];
      Rng rng(derive_seed(options.seed, std::string(tag) + record.instance_id, record.walk_id));
      null_rho = shuffle_null_model(series, options.null_repeats, rng).mean_rho1;
    };
    lag1(degree, "null-degree:", m.rho1_neutral_degree, m.null_rho1_neutral_degree);
    lag1(evolvability, "null-evolvability:", m.rho1_evolvability, m.null_rho1_evolvability);
  }

  const Typology typology = classify_typology(record);
  if (typology != Typology::T1) m.revisit_rate = revisit_rate(record);
  if (auto first = steps_to_first_portal(record)) m.steps_to_portal = static_cast<double>(*first);

  const auto series = portal_distance_series(record);
  if (series.size() >= options.min_series_length && series.size() >= 2) {
    std::vector<double> x, y;
    for (const auto& [evo, dist] : series) {
      x.push_back(evo);
      y.push_back(static_cast<double>(dist));
    }
    if (!is_constant(x) && !is_constant(y)) m.portal_correlation = pearson(x, y);
  }
  return m;
}

namespace {

struct InstanceAccumulator {
  std::vector<double> walk_length, degree, ratio, rho_degree, null_degree, rho_evo, null_evo, t1,
      t2, t3, revisit, portal_steps, portal_corr;
  std::size_t excluded = 0;
};

void push(std::vector<double>& values, const std::optional<double>& v) {
  if (v) values.push_back(*v);
}

}  // namespace

LandscapeReport aggregate_report(std::span<const WalkRecord> records,
                                 const ReportOptions& options) {
  // size -> instance id -> accumulated walk values (ordered for determinism)
  std::map<SizeKey, std::map<std::string, InstanceAccumulator>> groups;
  for (const auto& record : records) {
    auto& acc = groups[{record.n_jobs, record.n_machines}][record.instance_id];
    const auto m = walk_metrics(record, options);
    const Typology typology = classify_typology(record);
    acc.walk_length.push_back(static_cast<double>(record.steps.size()));
    acc.degree.push_back(m.mean_neutral_degree);
    acc.ratio.push_back(m.neutral_degree_ratio);
    push(acc.rho_degree, m.rho1_neutral_degree);
    push(acc.null_degree, m.null_rho1_neutral_degree);
    push(acc.rho_evo, m.rho1_evolvability);
    push(acc.null_evo, m.null_rho1_evolvability);
    if (!m.rho1_neutral_degree) ++acc.excluded;
    acc.t1.push_back(typology == Typology::T1 ? 1.0 : 0.0);
    acc.t2.push_back(typology == Typology::T2 ? 1.0 : 0.0);
    acc.t3.push_back(typology == Typology::T3 ? 1.0 : 0.0);
    push(acc.revisit, m.revisit_rate);
    push(acc.portal_steps, m.steps_to_portal);
    push(acc.portal_corr, m.portal_correlation);
  }

  LandscapeReport report;
  for (const auto& [size, instances] : groups) {
    SizeAggregate agg;
    agg.size = size;
    agg.instances = instances.size();

    auto level2 = [&](std::vector<double> InstanceAccumulator::*field) {
      std::vector<double> means;
      for (const auto& [id, acc] : instances) {
        const auto& values = acc.*field;
        if (!values.empty()) means.push_back(mean_of(values));
      }
      return mean_stddev(means);
    };
    for (const auto& [id, acc] : instances) {
      agg.walks += acc.walk_length.size();
      agg.excluded_from_autocorrelation += acc.excluded;
    }
    agg.walk_length = level2(&InstanceAccumulator::walk_length);
    agg.neutral_degree = level2(&InstanceAccumulator::degree);
    agg.neutral_degree_ratio = level2(&InstanceAccumulator::ratio);
    agg.rho1_neutral_degree = level2(&InstanceAccumulator::rho_degree);
    agg.null_rho1_neutral_degree = level2(&InstanceAccumulator::null_degree);
    agg.rho1_evolvability = level2(&InstanceAccumulator::rho_evo);
    agg.null_rho1_evolvability = level2(&InstanceAccumulator::null_evo);
    agg.t1_frequency = level2(&InstanceAccumulator::t1);
    agg.t2_frequency = level2(&InstanceAccumulator::t2);
    agg.t3_frequency = level2(&InstanceAccumulator::t3);
    agg.revisit_rate = level2(&InstanceAccumulator::revisit);
    agg.steps_to_portal = level2(&InstanceAccumulator::portal_steps);
    agg.portal_correlation = level2(&InstanceAccumulator::portal_corr);

    if (agg.excluded_from_autocorrelation > 0) {
      report.warnings.push_back(to_string(size) + ": " +
                                std::to_string(agg.excluded_from_autocorrelation) +
                                " walk(s) too short or constant for autocorrelation");
    }
    report.sizes.push_back(std::move(agg));
  }
  return report;
}

}  // namespace neutralscape
