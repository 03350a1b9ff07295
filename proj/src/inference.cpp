#include "hmmaro/inference.hpp"

#include <cmath>
#include <stdexcept>

#include "hmmaro/random.hpp"

namespace hmmaro {

ForwardBackwardResult forward(const HmmModel& model, const Matrix& b) {
  const std::size_t n = model.n_states();
  const std::size_t len = b.rows();
  const auto& a = model.transition;

  ForwardBackwardResult out;
  out.alpha_hat = Matrix(len, n);
  out.scale.assign(len, std::numeric_limits<double>::infinity());

  double log_sum = 0.0;
  for (std::size_t t = 0; t < len; ++t) {
    auto row = out.alpha_hat.row(t);
    double mass = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double v;
      if (t == 0) {
        v = model.initial[j];
      } else {
        const auto prev = out.alpha_hat.row(t - 1);
        v = 0.0;
        for (std::size_t i = 0; i < n; ++i) v += prev[i] * a(i, j);
      }
      row[j] = v * b(t, j);
      mass += row[j];
    }
    if (!(mass > 0.0)) {
      for (auto& x : row) x = 0.0;
      out.log_likelihood = kImpossible;
      return out;
    }
    const double c = 1.0 / mass;
    for (auto& x : row) x *= c;
    out.scale[t] = c;
    log_sum += std::log(mass);
  }
  out.log_likelihood = log_sum;
  return out;
}

ForwardBackwardResult forward(const HmmModel& model, const ObservationSequence& obs) {
  return forward(model, emission_probabilities(model, obs));
}

ForwardBackwardResult forward_backward(const HmmModel& model, const Matrix& b) {
  auto out = forward(model, b);
  const std::size_t n = model.n_states();
  const std::size_t len = b.rows();
  out.beta_hat = Matrix(len, n);
  if (!out.possible()) return out;

  const auto& a = model.transition;
  for (auto& x : out.beta_hat.row(len - 1)) x = 1.0;
  for (std::size_t t = len - 1; t-- > 0;) {
    const auto next = out.beta_hat.row(t + 1);
    auto row = out.beta_hat.row(t);
    const double c = out.scale[t + 1];
    for (std::size_t i = 0; i < n; ++i) {
      double v = 0.0;
      for (std::size_t j = 0; j < n; ++j) v += a(i, j) * b(t + 1, j) * next[j];
      row[i] = v * c;
    }
  }
  return out;
}

ForwardBackwardResult forward_backward(const HmmModel& model, const ObservationSequence& obs) {
  return forward_backward(model, emission_probabilities(model, obs));
}

double log_likelihood(const HmmModel& model, const ObservationSequence& obs) {
  return forward(model, obs).log_likelihood;
}

ViterbiResult viterbi(const HmmModel& model, const ObservationSequence& obs) {
  const Matrix b = emission_probabilities(model, obs);
  const std::size_t n = model.n_states();
  const std::size_t len = b.rows();

  Matrix log_a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) log_a(i, j) = std::log(model.transition(i, j));
  }

  Matrix delta(len, n);
  std::vector<std::size_t> back(len * n, 0);
  for (std::size_t j = 0; j < n; ++j) delta(0, j) = std::log(model.initial[j]) + std::log(b(0, j));
  for (std::size_t t = 1; t < len; ++t) {
    for (std::size_t j = 0; j < n; ++j) {
      double best = kImpossible;
      std::size_t arg = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const double v = delta(t - 1, i) + log_a(i, j);
        if (v > best) {
          best = v;
          arg = i;
        }
      }
      delta(t, j) = best + std::log(b(t, j));
      back[t * n + j] = arg;
    }
  }

  ViterbiResult out;
  std::size_t last = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (delta(len - 1, j) > out.log_probability) {
      out.log_probability = delta(len - 1, j);
      last = j;
    }
  }
  out.path.assign(len, 0);
  out.path[len - 1] = last;
  for (std::size_t t = len - 1; t > 0; --t) out.path[t - 1] = back[t * n + out.path[t]];
  return out;
}

Sample sample(const HmmModel& model, std::size_t length, Rng& rng) {
  if (length == 0) throw std::invalid_argument("sample length must be at least 1");
  require_valid(model);

  Sample out;
  out.states.reserve(length);
  std::size_t state = rng.categorical(model.initial);
  for (std::size_t t = 0; t < length; ++t) {
    if (t > 0) state = rng.categorical(model.transition.row(state));
    out.states.push_back(state);
  }

  if (model.is_discrete()) {
    const auto& table = model.discrete().table;
    std::vector<std::size_t> symbols;
    symbols.reserve(length);
    for (const auto s : out.states) symbols.push_back(rng.categorical(table.row(s)));
    out.observations = ObservationSequence::from_symbols(std::move(symbols));
  } else {
    const auto& mix = model.mixture();
    std::vector<std::vector<double>> vectors;
    vectors.reserve(length);
    for (const auto s : out.states) {
      const std::size_t k = rng.categorical(mix.weights.row(s));
      const auto mu = mix.mean(s, k);
      const auto var = mix.variance(s, k);
      std::vector<double> o(mix.dimension);
      for (std::size_t i = 0; i < mix.dimension; ++i) o[i] = mu[i] + std::sqrt(var[i]) * rng.normal();
      vectors.push_back(std::move(o));
    }
    out.observations = ObservationSequence::from_vectors(std::move(vectors));
  }
  return out;
}

}  // namespace hmmaro
