#pragma once

#include <span>
#include <vector>

#include "hmmaro/model.hpp"
#include "hmmaro/statistics.hpp"

namespace hmmaro {

enum class Execution { serial, parallel };

// Dataset-level kernels. Work is split per sequence; the OpenMP versions fill
// one slot per sequence and reduce in index order, so both paths produce
// bit-identical results. The serial versions are the reference.
namespace kernels {

namespace serial {
std::vector<double> log_likelihoods(const HmmModel& model, std::span<const ObservationSequence> seqs);
std::vector<SufficientStatistics> statistics(const HmmModel& model, std::span<const ObservationSequence> seqs);
}  // namespace serial

namespace omp {
std::vector<double> log_likelihoods(const HmmModel& model, std::span<const ObservationSequence> seqs);
std::vector<SufficientStatistics> statistics(const HmmModel& model, std::span<const ObservationSequence> seqs);
}  // namespace omp

inline std::vector<double> log_likelihoods(const HmmModel& model, std::span<const ObservationSequence> seqs,
                                           Execution exec) {
  return exec == Execution::parallel ? omp::log_likelihoods(model, seqs) : serial::log_likelihoods(model, seqs);
}

inline std::vector<SufficientStatistics> statistics(const HmmModel& model, std::span<const ObservationSequence> seqs,
                                                    Execution exec) {
  return exec == Execution::parallel ? omp::statistics(model, seqs) : serial::statistics(model, seqs);
}

/// Index-ordered sum of per-sequence statistics.
SufficientStatistics reduce(const HmmModel& model, std::span<const SufficientStatistics> parts);

/// Number of OpenMP threads available (1 when built without OpenMP).
int max_threads();

}  // namespace kernels
}  // namespace hmmaro
