#include "hmmaro/hmm_objective.hpp"

#include <algorithm>
#include <stdexcept>

#include "hmmaro/objectives.hpp"

namespace hmmaro {

namespace {

constexpr double kRawFloor = 1e-6;

void to_distribution(std::span<const double> raw, std::span<double> out) {
  double sum = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out[i] = std::max(raw[i], 0.0) + kRawFloor;
    sum += out[i];
  }
  if (!(sum > 0.0)) {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(out.size()));
    return;
  }
  for (auto& v : out) v /= sum;
}

}  // namespace

std::size_t parameter_count(const ModelShape& shape) {
  return shape.states + shape.states * shape.states + shape.states * shape.symbols;
}

HmmModel vector_to_model(std::span<const double> x, const ModelShape& shape) {
  if (shape.states == 0 || shape.symbols == 0) throw std::invalid_argument("model shape needs states and symbols");
  if (x.size() != parameter_count(shape)) {
    throw std::invalid_argument("parameter vector has " + std::to_string(x.size()) + " entries, shape needs " +
                                std::to_string(parameter_count(shape)));
  }
  const std::size_t n = shape.states;
  const std::size_t k = shape.symbols;
  HmmModel model;
  model.initial.assign(n, 0.0);
  to_distribution(x.subspan(0, n), model.initial);
  model.transition = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) to_distribution(x.subspan(n + i * n, n), model.transition.row(i));
  Matrix table(n, k);
  for (std::size_t j = 0; j < n; ++j) to_distribution(x.subspan(n + n * n + j * k, k), table.row(j));
  model.emission = DiscreteEmission{std::move(table)};
  return model;
}

std::vector<double> model_to_vector(const HmmModel& model) {
  if (!model.is_discrete()) throw std::invalid_argument("parameter layout covers discrete models only");
  std::vector<double> x(model.initial.begin(), model.initial.end());
  const auto a = model.transition.data();
  x.insert(x.end(), a.begin(), a.end());
  const auto b = model.discrete().table.data();
  x.insert(x.end(), b.begin(), b.end());
  return x;
}

ScoringData make_scoring_data(std::vector<ObservationSequence> sequences, std::string alphabet) {
  ScoringData data;
  data.null = null_model(sequences, alphabet.size());
  data.sequences = std::move(sequences);
  data.alphabet = std::move(alphabet);
  return data;
}

double score_model(const HmmModel& model, ScoreKind kind, const ScoringData& data, Execution exec) {
  if (kind == ScoreKind::log_odds) return log_odds(model, data.null, data.sequences, exec);
  return -sop_raw(align(model, data.sequences, data.alphabet));
}

ObjectiveFunction hmm_objective(const ModelShape& shape, ScoreKind kind, std::shared_ptr<const ScoringData> data,
                                Execution exec) {
  if (!data) throw std::invalid_argument("objective needs scoring data");
  if (data->alphabet.size() != shape.symbols) throw std::invalid_argument("shape alphabet does not match the data");
  return ObjectiveFunction([shape, kind, data = std::move(data), exec](std::span<const double> x) {
    return score_model(vector_to_model(x, shape), kind, *data, exec);
  });
}

}  // namespace hmmaro
