#include "hmmaro/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hmmaro/random.hpp"

namespace hmmaro {

namespace {

void check_distribution(std::span<const double> row, const std::string& what, std::vector<std::string>& out) {
  double sum = 0.0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (!(row[i] >= 0.0) || !std::isfinite(row[i])) {
      std::ostringstream msg;
      msg << what << " entry " << i << " is " << row[i] << " (must be a finite probability)";
      out.push_back(msg.str());
    }
    sum += row[i];
  }
  if (std::abs(sum - 1.0) > kStochasticTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << " sums to " << sum << " (must sum to 1)";
    out.push_back(msg.str());
  }
}

std::vector<double> random_row(std::size_t n, Rng& rng) {
  std::vector<double> row(n);
  double sum = 0.0;
  for (auto& x : row) {
    x = rng.uniform01();
    sum += x;
  }
  if (sum <= 0.0) return std::vector<double>(n, 1.0 / static_cast<double>(n));
  for (auto& x : row) x /= sum;
  return row;
}

}  // namespace

GaussianMixtureEmission::GaussianMixtureEmission(std::size_t states, std::size_t m, std::size_t d)
    : components(m),
      dimension(d),
      weights(states, m, m == 0 ? 0.0 : 1.0 / static_cast<double>(m)),
      means(states * m * d, 0.0),
      variances(states * m * d, 1.0) {}

double GaussianMixtureEmission::component_density(std::size_t j, std::size_t k, std::span<const double> o) const {
  const auto mu = mean(j, k);
  const auto var = variance(j, k);
  double log_density = 0.0;
  for (std::size_t i = 0; i < dimension; ++i) {
    const double diff = o[i] - mu[i];
    log_density += -0.5 * (std::log(2.0 * std::numbers::pi * var[i]) + diff * diff / var[i]);
  }
  return std::exp(log_density);
}

double GaussianMixtureEmission::density(std::size_t j, std::span<const double> o) const {
  double total = 0.0;
  for (std::size_t k = 0; k < components; ++k) total += weights(j, k) * component_density(j, k, o);
  return total;
}

ObservationSequence ObservationSequence::from_symbols(std::vector<std::size_t> symbols) {
  ObservationSequence seq;
  seq.items_ = std::move(symbols);
  return seq;
}

ObservationSequence ObservationSequence::from_vectors(std::vector<std::vector<double>> vectors) {
  ObservationSequence seq;
  seq.items_ = std::move(vectors);
  return seq;
}

std::size_t ObservationSequence::size() const {
  return std::visit([](const auto& v) { return v.size(); }, items_);
}

ValidationReport validate(const HmmModel& model) {
  ValidationReport report;
  auto& out = report.violations;
  const std::size_t n = model.n_states();
  if (n == 0) {
    out.emplace_back("model has no states");
    return report;
  }
  check_distribution(model.initial, "initial distribution", out);

  if (model.transition.rows() != n || model.transition.cols() != n) {
    std::ostringstream msg;
    msg << "transition matrix is " << model.transition.rows() << "x" << model.transition.cols() << ", expected "
        << n << "x" << n;
    out.push_back(msg.str());
  } else {
    for (std::size_t i = 0; i < n; ++i) check_distribution(model.transition.row(i), "transition row " + std::to_string(i), out);
  }

  if (model.is_discrete()) {
    const auto& table = model.discrete().table;
    if (table.rows() != n || table.cols() == 0) {
      out.push_back("emission table has " + std::to_string(table.rows()) + " rows and " +
                    std::to_string(table.cols()) + " symbols, expected " + std::to_string(n) + " rows");
    } else {
      for (std::size_t j = 0; j < n; ++j) check_distribution(table.row(j), "emission row " + std::to_string(j), out);
    }
  } else {
    const auto& mix = model.mixture();
    const std::size_t expected = n * mix.components * mix.dimension;
    if (mix.components == 0 || mix.dimension == 0 || mix.weights.rows() != n ||
        mix.weights.cols() != mix.components || mix.means.size() != expected || mix.variances.size() != expected) {
      out.push_back("mixture emission dimensions inconsistent with " + std::to_string(n) + " states");
      return report;
    }
    for (std::size_t j = 0; j < n; ++j) {
      check_distribution(mix.weights.row(j), "mixture weights row " + std::to_string(j), out);
      for (std::size_t k = 0; k < mix.components; ++k) {
        for (std::size_t i = 0; i < mix.dimension; ++i) {
          if (!std::isfinite(mix.mean(j, k)[i])) {
            out.push_back("mixture mean state " + std::to_string(j) + " component " + std::to_string(k) +
                          " is not finite");
          }
          const double v = mix.variance(j, k)[i];
          if (!(v >= kVarianceFloor) || !std::isfinite(v)) {
            std::ostringstream msg;
            msg << "mixture variance state " << j << " component " << k << " dim " << i << " is " << v
                << " (below floor " << kVarianceFloor << ")";
            out.push_back(msg.str());
          }
        }
      }
    }
  }
  return report;
}

void require_valid(const HmmModel& model) {
  const auto report = validate(model);
  if (report.ok()) return;
  std::string msg = "invalid model:";
  for (const auto& v : report.violations) msg += " " + v + ";";
  throw std::invalid_argument(msg);
}

void require_compatible(const HmmModel& model, const ObservationSequence& obs) {
  if (obs.empty()) throw std::invalid_argument("observation sequence is empty");
  if (model.is_discrete() != obs.is_discrete()) {
    throw std::invalid_argument(model.is_discrete() ? "discrete model given real-valued observations"
                                                    : "mixture model given symbol observations");
  }
  if (model.is_discrete()) {
    const std::size_t k = model.discrete().alphabet_size();
    const auto symbols = obs.symbols();
    for (std::size_t t = 0; t < symbols.size(); ++t) {
      if (symbols[t] >= k) {
        throw std::invalid_argument("symbol " + std::to_string(symbols[t]) + " at position " + std::to_string(t) +
                                    " outside alphabet of size " + std::to_string(k));
      }
    }
  } else {
    const std::size_t d = model.mixture().dimension;
    const auto& vectors = obs.vectors();
    for (std::size_t t = 0; t < vectors.size(); ++t) {
      if (vectors[t].size() != d) {
        throw std::invalid_argument("observation " + std::to_string(t) + " has dimension " +
                                    std::to_string(vectors[t].size()) + ", expected " + std::to_string(d));
      }
    }
  }
}

Matrix emission_probabilities(const HmmModel& model, const ObservationSequence& obs) {
  require_compatible(model, obs);
  const std::size_t n = model.n_states();
  const std::size_t len = obs.size();
  Matrix b(len, n);
  if (model.is_discrete()) {
    const auto& table = model.discrete().table;
    const auto symbols = obs.symbols();
    for (std::size_t t = 0; t < len; ++t) {
      for (std::size_t j = 0; j < n; ++j) b(t, j) = table(j, symbols[t]);
    }
  } else {
    const auto& mix = model.mixture();
    const auto& vectors = obs.vectors();
    for (std::size_t t = 0; t < len; ++t) {
      for (std::size_t j = 0; j < n; ++j) b(t, j) = mix.density(j, vectors[t]);
    }
  }
  return b;
}

HmmModel make_discrete_model(std::vector<double> initial, const std::vector<std::vector<double>>& transition,
                             const std::vector<std::vector<double>>& emission) {
  HmmModel model;
  model.initial = std::move(initial);
  model.transition = Matrix::from_rows(transition);
  model.emission = DiscreteEmission{Matrix::from_rows(emission)};
  return model;
}

HmmModel random_discrete_model(std::size_t states, std::size_t symbols, Rng& rng) {
  HmmModel model;
  model.initial = random_row(states, rng);
  model.transition = Matrix(states, states);
  for (std::size_t i = 0; i < states; ++i) {
    const auto row = random_row(states, rng);
    std::copy(row.begin(), row.end(), model.transition.row(i).begin());
  }
  Matrix table(states, symbols);
  for (std::size_t j = 0; j < states; ++j) {
    const auto row = random_row(symbols, rng);
    std::copy(row.begin(), row.end(), table.row(j).begin());
  }
  model.emission = DiscreteEmission{std::move(table)};
  return model;
}

HmmModel random_mixture_model(std::size_t states, std::size_t components, std::size_t dimension, Rng& rng) {
  HmmModel model;
  model.initial = random_row(states, rng);
  model.transition = Matrix(states, states);
  for (std::size_t i = 0; i < states; ++i) {
    const auto row = random_row(states, rng);
    std::copy(row.begin(), row.end(), model.transition.row(i).begin());
  }
  GaussianMixtureEmission mix(states, components, dimension);
  for (std::size_t j = 0; j < states; ++j) {
    const auto w = random_row(components, rng);
    std::copy(w.begin(), w.end(), mix.weights.row(j).begin());
  }
  for (auto& m : mix.means) m = rng.uniform(-2.0, 2.0);
  for (auto& v : mix.variances) v = rng.uniform(0.5, 2.0);
  model.emission = std::move(mix);
  return model;
}

}  // namespace hmmaro
