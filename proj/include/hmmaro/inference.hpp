#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "hmmaro/matrix.hpp"
#include "hmmaro/model.hpp"

namespace hmmaro {

class Rng;

inline constexpr double kImpossible = -std::numeric_limits<double>::infinity();

/// Scaled forward/backward lattices.
///
/// scale[t] is the multiplier c_t applied to the forward row at step t, so
/// every alpha_hat row sums to 1 and log_likelihood = -sum_t ln c_t.
/// beta_hat[T-1] is all ones and beta_hat[t] is scaled by c_{t+1}, which makes
/// alpha_hat[t][i] * beta_hat[t][i] the state posterior gamma_t(i) and
/// sum_i alpha_hat[t][i] * beta_hat[t][i] == 1 for every t.
///
/// An impossible sequence has log_likelihood == kImpossible; the lattice rows
/// from the first zero-mass step on are left at zero.
struct ForwardBackwardResult {
  Matrix alpha_hat;
  Matrix beta_hat;
  std::vector<double> scale;
  double log_likelihood = kImpossible;

  bool possible() const { return log_likelihood != kImpossible; }
};

/// Forward pass only; beta_hat is left empty.
ForwardBackwardResult forward(const HmmModel& model, const ObservationSequence& obs);
ForwardBackwardResult forward(const HmmModel& model, const Matrix& emissions);

/// Forward and backward passes over the same scale factors.
ForwardBackwardResult forward_backward(const HmmModel& model, const ObservationSequence& obs);
ForwardBackwardResult forward_backward(const HmmModel& model, const Matrix& emissions);

inline ForwardBackwardResult backward(const HmmModel& model, const ObservationSequence& obs) {
  return forward_backward(model, obs);
}

/// ln P[O | lambda], or kImpossible.
double log_likelihood(const HmmModel& model, const ObservationSequence& obs);

struct ViterbiResult {
  StatePath path;
  double log_probability = kImpossible;
};

/// Max-product decoding. Ties go to the lowest state index, both for the final
/// state and for every back-pointer.
ViterbiResult viterbi(const HmmModel& model, const ObservationSequence& obs);

struct Sample {
  StatePath states;
  ObservationSequence observations;
};

Sample sample(const HmmModel& model, std::size_t length, Rng& rng);

}  // namespace hmmaro
