#include "hmmaro/statistics.hpp"

#include <stdexcept>

namespace hmmaro {

SufficientStatistics SufficientStatistics::zero(const HmmModel& model) {
  const std::size_t n = model.n_states();
  SufficientStatistics s;
  s.initial.assign(n, 0.0);
  s.transition = Matrix(n, n);
  if (model.is_discrete()) {
    s.emission = Matrix(n, model.discrete().alphabet_size());
  } else {
    const auto& mix = model.mixture();
    s.component = Matrix(n, mix.components);
    s.first.assign(n * mix.components * mix.dimension, 0.0);
    s.second.assign(n * mix.components * mix.dimension, 0.0);
  }
  return s;
}

SufficientStatistics& SufficientStatistics::operator+=(const SufficientStatistics& other) {
  auto add = [](std::span<double> dst, std::span<const double> src) {
    if (dst.size() != src.size()) throw std::invalid_argument("statistics shape mismatch");
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
  };
  log_likelihood += other.log_likelihood;
  sequences += other.sequences;
  add(initial, other.initial);
  add(transition.data(), other.transition.data());
  add(emission.data(), other.emission.data());
  add(component.data(), other.component.data());
  add(first, other.first);
  add(second, other.second);
  return *this;
}

std::vector<Matrix> mixture_responsibility(const HmmModel& model, const ObservationSequence& obs,
                                           const ForwardBackwardResult& fb) {
  if (model.is_discrete()) throw std::invalid_argument("mixture responsibility needs a Gaussian mixture model");
  if (!fb.possible()) throw Error("impossible sequence: zero likelihood under the model");
  const auto& mix = model.mixture();
  const std::size_t n = model.n_states();
  const std::size_t m = mix.components;
  const auto& vectors = obs.vectors();

  std::vector<Matrix> out;
  out.reserve(vectors.size());
  std::vector<double> weighted(m);
  for (std::size_t t = 0; t < vectors.size(); ++t) {
    Matrix g(n, m);
    for (std::size_t j = 0; j < n; ++j) {
      const double state_post = fb.alpha_hat(t, j) * fb.beta_hat(t, j);
      double total = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        weighted[k] = mix.weights(j, k) * mix.component_density(j, k, vectors[t]);
        total += weighted[k];
      }
      if (!(total > 0.0)) continue;
      for (std::size_t k = 0; k < m; ++k) g(j, k) = state_post * weighted[k] / total;
    }
    out.push_back(std::move(g));
  }
  return out;
}

SufficientStatistics sequence_statistics(const HmmModel& model, const ObservationSequence& obs) {
  const Matrix b = emission_probabilities(model, obs);
  const auto fb = forward_backward(model, b);
  auto s = SufficientStatistics::zero(model);
  s.sequences = 1;
  s.log_likelihood = fb.log_likelihood;
  if (!fb.possible()) return s;

  const std::size_t n = model.n_states();
  const std::size_t len = obs.size();
  const auto& a = model.transition;

  for (std::size_t i = 0; i < n; ++i) s.initial[i] = fb.alpha_hat(0, i) * fb.beta_hat(0, i);

  // xi_t(i, j) = alpha_t(i) a_ij b_j(o_{t+1}) beta_{t+1}(j) / P, which in
  // scaled quantities is alpha_hat_t(i) a_ij b_j(o_{t+1}) beta_hat_{t+1}(j) c_{t+1}.
  for (std::size_t t = 0; t + 1 < len; ++t) {
    const double c = fb.scale[t + 1];
    for (std::size_t i = 0; i < n; ++i) {
      const double left = fb.alpha_hat(t, i) * c;
      for (std::size_t j = 0; j < n; ++j) s.transition(i, j) += left * a(i, j) * b(t + 1, j) * fb.beta_hat(t + 1, j);
    }
  }

  if (model.is_discrete()) {
    const auto symbols = obs.symbols();
    for (std::size_t t = 0; t < len; ++t) {
      for (std::size_t j = 0; j < n; ++j) s.emission(j, symbols[t]) += fb.alpha_hat(t, j) * fb.beta_hat(t, j);
    }
  } else {
    const auto& mix = model.mixture();
    const auto gamma = mixture_responsibility(model, obs, fb);
    const auto& vectors = obs.vectors();
    for (std::size_t t = 0; t < len; ++t) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < mix.components; ++k) {
          const double g = gamma[t](j, k);
          s.component(j, k) += g;
          const auto mu = mix.mean(j, k);
          const std::size_t off = mix.offset(j, k);
          for (std::size_t d = 0; d < mix.dimension; ++d) {
            const double diff = vectors[t][d] - mu[d];
            s.first[off + d] += g * diff;
            s.second[off + d] += g * diff * diff;
          }
        }
      }
    }
  }
  return s;
}

}  // namespace hmmaro
