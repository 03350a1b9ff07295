#pragma once

#include <cstddef>
#include <vector>

#include "hmmaro/inference.hpp"
#include "hmmaro/matrix.hpp"
#include "hmmaro/model.hpp"

namespace hmmaro {

/// Expected counts collected by one E-step over one or more sequences.
///
/// Mixture moments are taken around the *current* component means
/// (first = sum gamma (o - mu), second = sum gamma (o - mu)^2) so the M-step can
/// form the re-estimated variance without cancellation.
struct SufficientStatistics {
  double log_likelihood = 0.0;
  std::size_t sequences = 0;
  std::vector<double> initial;   // sum over sequences of gamma_1(i)
  Matrix transition;             // sum_t xi_t(i, j)
  Matrix emission;               // discrete: sum_{t: o_t = v} gamma_t(j)
  Matrix component;              // mixture: sum_t gamma_t(j, k)
  std::vector<double> first;     // mixture: N * M * d
  std::vector<double> second;    // mixture: N * M * d

  static SufficientStatistics zero(const HmmModel& model);

  /// Elementwise sum; other must have the same shape.
  SufficientStatistics& operator+=(const SufficientStatistics& other);
};

/// gamma_t(j, k) for every t: T matrices of shape N x M, computed from an
/// existing forward/backward pass.
std::vector<Matrix> mixture_responsibility(const HmmModel& model, const ObservationSequence& obs,
                                           const ForwardBackwardResult& fb);

/// E-step contribution of a single sequence. When the sequence is impossible
/// under the model the returned log_likelihood is kImpossible and the counts
/// are zero.
SufficientStatistics sequence_statistics(const HmmModel& model, const ObservationSequence& obs);

}  // namespace hmmaro
