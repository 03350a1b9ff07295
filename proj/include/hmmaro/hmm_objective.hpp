#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hmmaro/kernels.hpp"
#include "hmmaro/model.hpp"
#include "hmmaro/optimizers.hpp"

namespace hmmaro {

/// Dimensions of a discrete HMM searched by the metaheuristics.
struct ModelShape {
  std::size_t states = 1;
  std::size_t symbols = 1;
};

enum class ScoreKind { log_odds, sop };

/// Raw parameter layout: pi (N values), then A row by row (N*N), then the
/// emission table row by row (N*K).
std::size_t parameter_count(const ModelShape& shape);

/// Turns a raw vector into a valid model: negatives clamp to 0, every entry
/// gets +1e-6, and each stochastic row is renormalized.
HmmModel vector_to_model(std::span<const double> x, const ModelShape& shape);

/// Inverse layout of vector_to_model for an existing discrete model.
std::vector<double> model_to_vector(const HmmModel& model);

/// Everything an objective needs to score a model.
struct ScoringData {
  std::vector<ObservationSequence> sequences;
  std::string alphabet;
  HmmModel null;  // log-odds baseline; built from sequences by make_scoring_data
};

ScoringData make_scoring_data(std::vector<ObservationSequence> sequences, std::string alphabet);

/// Objective value of a model, oriented for maximization: log-odds, or the
/// negated sum-of-pairs distance of the Viterbi alignment.
double score_model(const HmmModel& model, ScoreKind kind, const ScoringData& data,
                   Execution exec = Execution::serial);

ObjectiveFunction hmm_objective(const ModelShape& shape, ScoreKind kind, std::shared_ptr<const ScoringData> data,
                                Execution exec = Execution::serial);

}  // namespace hmmaro
