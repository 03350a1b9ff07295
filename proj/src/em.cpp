#include "hmmaro/em.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "hmmaro/inference.hpp"

namespace hmmaro {

namespace {

SufficientStatistics expect(const HmmModel& model, std::span<const ObservationSequence> dataset, Execution exec) {
  const auto parts = kernels::statistics(model, dataset, exec);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].log_likelihood == kImpossible) {
      throw Error("impossible sequence " + std::to_string(i) + ": zero likelihood under the model");
    }
  }
  return kernels::reduce(model, parts);
}

void check_dataset(const HmmModel& model, std::span<const ObservationSequence> dataset) {
  if (dataset.empty()) throw std::invalid_argument("training dataset is empty");
  require_valid(model);
}

}  // namespace

bool floored_normalize(std::span<const double> counts, double floor, std::span<double> out) {
  const std::size_t k = counts.size();
  if (out.size() != k) throw std::invalid_argument("floored_normalize: size mismatch");
  double total = 0.0;
  for (const double c : counts) total += c;
  if (!(total > 0.0) || k == 0) return false;
  if (floor <= 0.0) {
    for (std::size_t i = 0; i < k; ++i) out[i] = counts[i] / total;
    return true;
  }
  if (floor * static_cast<double>(k) >= 1.0) {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(k));
    return true;
  }

  std::vector<bool> pinned(k, false);
  std::size_t n_pinned = 0;
  while (true) {
    const double free_mass = 1.0 - floor * static_cast<double>(n_pinned);
    double free_counts = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      if (!pinned[i]) free_counts += counts[i];
    }
    bool changed = false;
    for (std::size_t i = 0; i < k; ++i) {
      if (pinned[i]) continue;
      const double share = free_counts > 0.0 ? counts[i] * free_mass / free_counts : 0.0;
      if (share < floor) {
        pinned[i] = true;
        ++n_pinned;
        changed = true;
      }
    }
    if (!changed) {
      for (std::size_t i = 0; i < k; ++i) out[i] = pinned[i] ? floor : counts[i] * free_mass / free_counts;
      return true;
    }
  }
}

HmmModel maximize(const HmmModel& model, const SufficientStatistics& stats, double min_row_mass) {
  HmmModel next = model;
  const std::size_t n = model.n_states();

  floored_normalize(stats.initial, min_row_mass, next.initial);
  // Transitions use the standard xi/gamma ratio: expected i->j transitions over
  // expected departures from i (time steps 1..T-1 only).
  for (std::size_t i = 0; i < n; ++i) floored_normalize(stats.transition.row(i), min_row_mass, next.transition.row(i));

  if (model.is_discrete()) {
    auto& table = next.discrete().table;
    for (std::size_t j = 0; j < n; ++j) floored_normalize(stats.emission.row(j), min_row_mass, table.row(j));
  } else {
    auto& mix = next.mixture();
    for (std::size_t j = 0; j < n; ++j) {
      floored_normalize(stats.component.row(j), min_row_mass, mix.weights.row(j));
      for (std::size_t k = 0; k < mix.components; ++k) {
        const double occupancy = stats.component(j, k);
        if (!(occupancy > 0.0)) continue;
        const std::size_t off = mix.offset(j, k);
        for (std::size_t d = 0; d < mix.dimension; ++d) {
          const double shift = stats.first[off + d] / occupancy;
          const double var = stats.second[off + d] / occupancy - shift * shift;
          mix.means[off + d] = model.mixture().means[off + d] + shift;
          mix.variances[off + d] = std::max(var, kVarianceFloor);
        }
      }
    }
  }
  return next;
}

double total_log_likelihood(const HmmModel& model, std::span<const ObservationSequence> dataset, Execution exec) {
  const auto lls = kernels::log_likelihoods(model, dataset, exec);
  double total = 0.0;
  for (const double ll : lls) {
    if (ll == kImpossible) return kImpossible;
    total += ll;
  }
  return total;
}

ReestimateOutput bw_step(const HmmModel& model, std::span<const ObservationSequence> dataset,
                         const TrainConfig& config) {
  check_dataset(model, dataset);
  const auto stats = expect(model, dataset, config.execution);
  ReestimateOutput out;
  out.old_loglik = stats.log_likelihood;
  out.model = maximize(model, stats, config.min_row_mass);
  out.new_loglik = total_log_likelihood(out.model, dataset, config.execution);
  return out;
}

TrainResult train_bw(const HmmModel& model, std::span<const ObservationSequence> dataset,
                     const TrainConfig& config) {
  if (config.max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
  if (config.loglik_tolerance < 0.0) throw std::invalid_argument("loglik_tolerance must be non-negative");
  check_dataset(model, dataset);

  TrainResult result{model, {}};
  auto stats = expect(model, dataset, config.execution);
  result.history.push_back(stats.log_likelihood);
  for (std::size_t it = 0; it < config.max_iterations; ++it) {
    HmmModel next = maximize(result.model, stats, config.min_row_mass);
    auto next_stats = expect(next, dataset, config.execution);
    const double improvement = next_stats.log_likelihood - stats.log_likelihood;
    result.model = std::move(next);
    stats = std::move(next_stats);
    result.history.push_back(stats.log_likelihood);
    if (improvement < config.loglik_tolerance) break;
  }
  return result;
}

void write_history_csv(std::ostream& out, std::span<const double> history) {
  const auto old_precision = out.precision(17);
  out << "iteration,total_loglik,delta\n";
  for (std::size_t i = 0; i < history.size(); ++i) {
    out << i << ',' << history[i] << ',' << (i == 0 ? 0.0 : history[i] - history[i - 1]) << '\n';
  }
  out.precision(old_precision);
}

}  // namespace hmmaro
