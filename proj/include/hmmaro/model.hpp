#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hmmaro/matrix.hpp"

namespace hmmaro {

class Rng;

/// Raised for domain failures (impossible sequences, degenerate models).
/// Precondition violations use std::invalid_argument.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kStochasticTolerance = 1e-9;
inline constexpr double kVarianceFloor = 1e-6;

/// Emission table b_j(o): one row per state, one column per symbol.
struct DiscreteEmission {
  Matrix table;

  std::size_t alphabet_size() const { return table.cols(); }
  friend bool operator==(const DiscreteEmission&, const DiscreteEmission&) = default;
};

/// Per-state mixture of diagonal-covariance Gaussians.
///
/// Means and variances are stored flattened as [state][component][dim].
struct GaussianMixtureEmission {
  std::size_t components = 0;
  std::size_t dimension = 0;
  Matrix weights;                  // N x M mixture coefficients
  std::vector<double> means;       // N * M * d
  std::vector<double> variances;   // N * M * d, diagonal entries

  GaussianMixtureEmission() = default;
  GaussianMixtureEmission(std::size_t states, std::size_t components, std::size_t dimension);

  std::size_t offset(std::size_t state, std::size_t component) const {
    return (state * components + component) * dimension;
  }
  std::span<double> mean(std::size_t j, std::size_t k) { return {means.data() + offset(j, k), dimension}; }
  std::span<const double> mean(std::size_t j, std::size_t k) const {
    return {means.data() + offset(j, k), dimension};
  }
  std::span<double> variance(std::size_t j, std::size_t k) {
    return {variances.data() + offset(j, k), dimension};
  }
  std::span<const double> variance(std::size_t j, std::size_t k) const {
    return {variances.data() + offset(j, k), dimension};
  }

  /// Density of one component at o.
  double component_density(std::size_t j, std::size_t k, std::span<const double> o) const;
  /// b_j(o) = sum_k c_jk G(o; mu_jk, U_jk).
  double density(std::size_t j, std::span<const double> o) const;

  friend bool operator==(const GaussianMixtureEmission&, const GaussianMixtureEmission&) = default;
};

using EmissionModel = std::variant<DiscreteEmission, GaussianMixtureEmission>;

/// lambda = (A, B, pi).
struct HmmModel {
  std::vector<double> initial;
  Matrix transition;
  EmissionModel emission;

  std::size_t n_states() const { return initial.size(); }
  bool is_discrete() const { return std::holds_alternative<DiscreteEmission>(emission); }
  const DiscreteEmission& discrete() const { return std::get<DiscreteEmission>(emission); }
  const GaussianMixtureEmission& mixture() const { return std::get<GaussianMixtureEmission>(emission); }
  DiscreteEmission& discrete() { return std::get<DiscreteEmission>(emission); }
  GaussianMixtureEmission& mixture() { return std::get<GaussianMixtureEmission>(emission); }

  friend bool operator==(const HmmModel&, const HmmModel&) = default;
};

/// O = (o_1 ... o_T): either symbol indices or real vectors, never both.
class ObservationSequence {
 public:
  ObservationSequence() = default;

  static ObservationSequence from_symbols(std::vector<std::size_t> symbols);
  static ObservationSequence from_vectors(std::vector<std::vector<double>> vectors);

  bool is_discrete() const { return std::holds_alternative<std::vector<std::size_t>>(items_); }
  std::size_t size() const;
  bool empty() const { return size() == 0; }

  std::span<const std::size_t> symbols() const { return std::get<std::vector<std::size_t>>(items_); }
  const std::vector<std::vector<double>>& vectors() const {
    return std::get<std::vector<std::vector<double>>>(items_);
  }

  friend bool operator==(const ObservationSequence&, const ObservationSequence&) = default;

 private:
  std::variant<std::vector<std::size_t>, std::vector<std::vector<double>>> items_;
};

using StatePath = std::vector<std::size_t>;

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks every stochastic constraint of the model; never throws.
ValidationReport validate(const HmmModel& model);

/// Throws std::invalid_argument listing the violations when validate() fails.
void require_valid(const HmmModel& model);

/// Throws std::invalid_argument when obs cannot be scored by model
/// (kind mismatch, symbol outside the alphabet, wrong vector dimension, T = 0).
void require_compatible(const HmmModel& model, const ObservationSequence& obs);

/// T x N matrix of b_j(o_t).
Matrix emission_probabilities(const HmmModel& model, const ObservationSequence& obs);

// Convenience constructors used by tools and tests.
HmmModel make_discrete_model(std::vector<double> initial, const std::vector<std::vector<double>>& transition,
                             const std::vector<std::vector<double>>& emission);

/// Rows drawn uniformly at random and renormalized.
HmmModel random_discrete_model(std::size_t states, std::size_t symbols, Rng& rng);
HmmModel random_mixture_model(std::size_t states, std::size_t components, std::size_t dimension, Rng& rng);

}  // namespace hmmaro
