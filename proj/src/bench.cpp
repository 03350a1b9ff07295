#include "hmmaro/bench.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "hmmaro/em.hpp"
#include "hmmaro/random.hpp"

namespace hmmaro {

namespace {

constexpr std::array<Algorithm, 4> kColumnOrder{Algorithm::bw, Algorithm::sa, Algorithm::aro, Algorithm::maro};

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string fixed17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::bw: return "BW";
    case Algorithm::sa: return "SA";
    case Algorithm::aro: return "ARO";
    case Algorithm::maro: return "MARO";
  }
  return "?";
}

std::string to_string(ScoreKind k) { return k == ScoreKind::log_odds ? "log_odds" : "sop"; }

Algorithm parse_algorithm(const std::string& s) {
  std::string lower;
  for (const char c : s) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "bw") return Algorithm::bw;
  if (lower == "sa") return Algorithm::sa;
  if (lower == "aro") return Algorithm::aro;
  if (lower == "maro") return Algorithm::maro;
  throw std::invalid_argument("unknown algorithm '" + s + "' (expected bw, sa, aro, maro)");
}

ScoreKind parse_score_kind(const std::string& s) {
  if (s == "log_odds" || s == "log-odds" || s == "lo") return ScoreKind::log_odds;
  if (s == "sop") return ScoreKind::sop;
  throw std::invalid_argument("unknown objective '" + s + "' (expected log_odds, sop)");
}

std::string objective_label(ScoreKind k) {
  return k == ScoreKind::log_odds ? "HMM log-odds scores (bits) ± standard error"
                                  : "negated sum-of-pairs distance (column mismatch) ± standard error";
}

std::size_t ExperimentConfig::effective_repetitions() const {
  return algorithm == Algorithm::bw ? 1 : repetitions;
}

Aggregate aggregate(std::span<const double> values) {
  Aggregate a;
  a.count = values.size();
  if (values.empty()) return a;
  double sum = 0.0;
  a.min = a.max = values.front();
  for (const double v : values) {
    sum += v;
    a.min = std::min(a.min, v);
    a.max = std::max(a.max, v);
  }
  a.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (const double v : values) ss += (v - a.mean) * (v - a.mean);
    const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    a.standard_error = sd / std::sqrt(static_cast<double>(values.size()));
  }
  return a;
}

TrainedModel train_once(const ExperimentConfig& config, const SequenceDataset& train,
                        const SequenceDataset* validation, std::uint64_t seed) {
  const auto started = std::chrono::steady_clock::now();
  const ModelShape shape{config.states, train.alphabet_size()};
  auto train_data = std::make_shared<const ScoringData>(make_scoring_data(train.indexed, train.alphabet));

  TrainedModel out;
  out.record.seed = seed;
  Rng rng(seed);
  if (config.algorithm == Algorithm::bw) {
    const HmmModel init = random_discrete_model(shape.states, shape.symbols, rng);
    TrainConfig tc;
    tc.max_iterations = config.iterations;
    tc.loglik_tolerance = config.bw_tolerance;
    tc.execution = Execution::serial;
    auto trained = train_bw(init, train.indexed, tc);
    out.model = std::move(trained.model);
    out.bw_history = std::move(trained.history);
    out.record.train_fitness = score_model(out.model, config.objective, *train_data);
    out.record.evaluations = 1;
  } else {
    const Codec codec(parameter_count(shape), config.int_bits, config.frac_bits, 0.0, 1.0);
    ObjectiveFunction objective = hmm_objective(shape, config.objective, train_data);
    OptimizerConfig oc;
    oc.iterations = config.iterations;
    oc.reproduce = config.reproduce;
    OptimizerResult result;
    switch (config.algorithm) {
      case Algorithm::sa: result = sa_run(objective, codec, oc, rng); break;
      case Algorithm::aro: result = aro_run(objective, codec, oc, rng); break;
      default: result = maro_run(objective, codec, oc, rng); break;
    }
    out.model = vector_to_model(result.best, shape);
    out.record.train_fitness = result.best_fitness;
    out.record.evaluations = objective.evaluations();
    out.trace = std::move(result.trace);
  }

  if (validation && !validation->empty()) {
    // Validation is scored against the training split's null model so both
    // splits share one baseline.
    ScoringData vdata;
    vdata.sequences = validation->indexed;
    vdata.alphabet = validation->alphabet;
    vdata.null = train_data->null;
    out.record.validation_fitness = score_model(out.model, config.objective, vdata);
  }
  out.record.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return out;
}

RunReport run_experiment(const ExperimentConfig& config, const SequenceDataset& dataset) {
  if (config.repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
  if (config.iterations < 1) throw std::invalid_argument("iterations must be at least 1");
  if (config.states < 1) throw std::invalid_argument("states must be at least 1");
  if (dataset.empty()) throw std::invalid_argument("dataset '" + config.dataset_name + "' is empty");

  SequenceDataset train = dataset;
  SequenceDataset validation;
  if (config.train_size != 0 && config.train_size != dataset.size()) {
    Rng split_rng(config.split_seed);
    std::tie(train, validation) = split(dataset, config.train_size, split_rng);
  }

  const std::size_t reps = config.effective_repetitions();
  RunReport report;
  report.dataset = config.dataset_name;
  report.algorithm = config.algorithm;
  report.objective = config.objective;
  report.runs.resize(reps);
  std::vector<std::string> errors(reps);

  const auto count = static_cast<long>(reps);
#pragma omp parallel for schedule(dynamic) if (config.parallel)
  for (long r = 0; r < count; ++r) {
    const auto idx = static_cast<std::size_t>(r);
    const std::uint64_t seed = config.base_seed + idx;
    try {
      report.runs[idx] = train_once(config, train, &validation, seed).record;
    } catch (const std::exception& e) {
      errors[idx] = e.what();
    }
  }
  for (std::size_t r = 0; r < reps; ++r) {
    if (!errors[r].empty()) {
      throw Error(to_string(config.algorithm) + " repetition with seed " + std::to_string(config.base_seed + r) +
                  " failed: " + errors[r]);
    }
  }

  std::vector<double> train_values;
  std::vector<double> validation_values;
  for (const auto& run : report.runs) {
    train_values.push_back(run.train_fitness);
    if (run.validation_fitness) validation_values.push_back(*run.validation_fitness);
  }
  report.train = aggregate(train_values);
  if (!validation_values.empty()) report.validation = aggregate(validation_values);
  return report;
}

ComparisonTable summarize(std::span<const RunReport> reports, Split split) {
  if (reports.empty()) throw std::invalid_argument("no reports to summarize");
  ComparisonTable table;
  table.objective = reports.front().objective;
  for (const auto& r : reports) {
    if (r.objective != table.objective) throw std::invalid_argument("cannot mix objectives in one table");
  }

  std::vector<Algorithm> present;
  for (const Algorithm a : kColumnOrder) {
    if (std::any_of(reports.begin(), reports.end(), [a](const RunReport& r) { return r.algorithm == a; })) {
      present.push_back(a);
      table.columns.push_back(to_string(a));
    }
  }

  std::vector<std::string> datasets;
  for (const auto& r : reports) {
    if (std::find(datasets.begin(), datasets.end(), r.dataset) == datasets.end()) datasets.push_back(r.dataset);
  }

  for (const auto& name : datasets) {
    ComparisonTable::Row row{name, {}};
    for (const Algorithm a : present) {
      const auto it = std::find_if(reports.begin(), reports.end(),
                                   [&](const RunReport& r) { return r.dataset == name && r.algorithm == a; });
      std::string cell = "-";
      if (it != reports.end()) {
        const Aggregate* agg = split == Split::train ? &it->train : (it->validation ? &*it->validation : nullptr);
        if (agg) cell = it->deterministic() ? fixed2(agg->mean) : fixed2(agg->mean) + "±" + fixed2(agg->standard_error);
      }
      row.cells.push_back(std::move(cell));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string emit_report(const ComparisonTable& table, ReportFormat format) {
  std::ostringstream out;
  if (format == ReportFormat::csv) {
    out << "dataset";
    for (const auto& c : table.columns) out << ',' << c;
    out << '\n';
    for (const auto& row : table.rows) {
      out << row.dataset;
      for (const auto& cell : row.cells) out << ',' << cell;
      out << '\n';
    }
  } else {
    out << "| dataset |";
    for (const auto& c : table.columns) out << ' ' << c << " |";
    out << "\n|---|";
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << "---|";
    out << '\n';
    for (const auto& row : table.rows) {
      out << "| " << row.dataset << " |";
      for (const auto& cell : row.cells) out << ' ' << cell << " |";
      out << '\n';
    }
  }
  return out.str();
}

std::string emit_runs_csv(std::span<const RunReport> reports) {
  std::ostringstream out;
  out << "dataset,algorithm,objective,seed,train,validation,evaluations\n";
  for (const auto& rep : reports) {
    for (const auto& run : rep.runs) {
      out << rep.dataset << ',' << to_string(rep.algorithm) << ',' << to_string(rep.objective) << ',' << run.seed << ','
          << fixed17(run.train_fitness) << ',' << (run.validation_fitness ? fixed17(*run.validation_fitness) : "")
          << ',' << run.evaluations << '\n';
    }
  }
  return out.str();
}

}  // namespace hmmaro
