#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hmmaro/hmm_objective.hpp"
#include "hmmaro/seqio.hpp"

namespace hmmaro {

enum class Algorithm { bw, sa, aro, maro };

std::string to_string(Algorithm a);
std::string to_string(ScoreKind k);
Algorithm parse_algorithm(const std::string& s);
ScoreKind parse_score_kind(const std::string& s);
/// Human-readable description of what a score kind measures.
std::string objective_label(ScoreKind k);

struct ExperimentConfig {
  std::string dataset_name = "dataset";
  Algorithm algorithm = Algorithm::maro;
  ScoreKind objective = ScoreKind::log_odds;
  std::size_t states = 4;
  std::size_t iterations = 2000;
  std::size_t repetitions = 25;
  std::uint64_t base_seed = 1;
  /// 0 uses the whole dataset for training and leaves validation empty.
  std::size_t train_size = 0;
  /// Seed for the train/validation split; shared by every algorithm.
  std::uint64_t split_seed = 0;
  std::size_t int_bits = 1;
  std::size_t frac_bits = 10;
  /// Budding operator settings for ARO, MARO and SA.
  ReproduceOptions reproduce;
  double bw_tolerance = 1e-6;
  bool parallel = true;

  /// Repetitions actually run: BW is deterministic, so always 1.
  std::size_t effective_repetitions() const;
};

/// How every stochastic trainer is initialized; recorded in report headers.
inline constexpr const char* kInitNote = "init: uniform-random rows renormalized";

struct RunRecord {
  std::uint64_t seed = 0;
  double train_fitness = 0.0;
  std::optional<double> validation_fitness;
  double wall_seconds = 0.0;
  std::size_t evaluations = 0;
};

struct Aggregate {
  std::size_t count = 0;
  double mean = 0.0;
  /// Sample standard deviation (n - 1) over sqrt(n); 0 for a single run.
  double standard_error = 0.0;
  double min = 0.0;
  double max = 0.0;
};

Aggregate aggregate(std::span<const double> values);

struct RunReport {
  std::string dataset;
  Algorithm algorithm = Algorithm::maro;
  ScoreKind objective = ScoreKind::log_odds;
  std::vector<RunRecord> runs;
  Aggregate train;
  std::optional<Aggregate> validation;

  bool deterministic() const { return algorithm == Algorithm::bw; }
};

/// Repetition r uses seed base_seed + r. The split is drawn once from
/// split_seed, the model is trained on the training part and scored on both.
/// Throws hmmaro::Error naming the seed of a failing repetition.
RunReport run_experiment(const ExperimentConfig& config, const SequenceDataset& dataset);

/// Model trained by a single repetition, for tools that need it.
struct TrainedModel {
  HmmModel model;
  RunRecord record;
  std::vector<double> bw_history;
  std::vector<TraceRow> trace;
};

TrainedModel train_once(const ExperimentConfig& config, const SequenceDataset& train,
                        const SequenceDataset* validation, std::uint64_t seed);

enum class Split { train, validation };

struct ComparisonTable {
  ScoreKind objective = ScoreKind::log_odds;
  std::vector<std::string> columns;  // algorithm labels, fixed order BW, SA, ARO, MARO
  struct Row {
    std::string dataset;
    std::vector<std::string> cells;
  };
  std::vector<Row> rows;
};

/// One row per dataset (first-seen order), one column per algorithm present.
/// Cells read "mean±SE" with two decimals; deterministic reports print the bare
/// mean and missing entries print "-". Rejects empty input and mixed objectives.
ComparisonTable summarize(std::span<const RunReport> reports, Split split);

enum class ReportFormat { csv, markdown };

std::string emit_report(const ComparisonTable& table, ReportFormat format);

/// Per-repetition records: dataset,algorithm,objective,seed,train,validation,evaluations.
std::string emit_runs_csv(std::span<const RunReport> reports);

}  // namespace hmmaro
