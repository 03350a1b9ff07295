#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "hmmaro/kernels.hpp"
#include "hmmaro/model.hpp"
#include "hmmaro/statistics.hpp"

namespace hmmaro {

struct TrainConfig {
  std::size_t max_iterations = 100;
  /// Stop once an iteration improves the total log-likelihood by less than this.
  double loglik_tolerance = 1e-6;
  /// Probability floor applied in every M-step; 0 disables smoothing.
  double min_row_mass = 1e-6;
  Execution execution = Execution::parallel;
};

struct ReestimateOutput {
  HmmModel model;
  double old_loglik = 0.0;
  double new_loglik = 0.0;
};

struct TrainResult {
  HmmModel model;
  /// Total log-likelihood of the initial model, then after every iteration.
  std::vector<double> history;
};

/// Maximizes sum_i counts[i] * ln p_i over distributions with p_i >= floor.
///
/// Entries whose proportional share would fall below the floor are pinned to
/// it and the rest share the remaining mass proportionally to their counts.
/// With floor == 0 this is plain count normalization. Returns false (and
/// leaves out untouched) when the counts carry no mass.
bool floored_normalize(std::span<const double> counts, double floor, std::span<double> out);

/// M-step: builds the re-estimated model from accumulated expected counts.
/// Rows whose expected counts are all zero keep their current values.
HmmModel maximize(const HmmModel& model, const SufficientStatistics& stats, double min_row_mass);

/// One Baum-Welch re-estimation over the whole dataset.
///
/// Expected counts are summed across sequences before normalizing. Throws
/// hmmaro::Error naming the first sequence that is impossible under the model.
ReestimateOutput bw_step(const HmmModel& model, std::span<const ObservationSequence> dataset,
                         const TrainConfig& config = {});

/// Repeats bw_step until max_iterations or until the improvement drops below
/// the tolerance.
TrainResult train_bw(const HmmModel& model, std::span<const ObservationSequence> dataset,
                     const TrainConfig& config = {});

/// Sum of per-sequence log-likelihoods; kImpossible if any sequence is impossible.
double total_log_likelihood(const HmmModel& model, std::span<const ObservationSequence> dataset,
                            Execution exec = Execution::parallel);

/// CSV with header "iteration,total_loglik,delta"; row 0 is the initial model.
void write_history_csv(std::ostream& out, std::span<const double> history);

}  // namespace hmmaro
