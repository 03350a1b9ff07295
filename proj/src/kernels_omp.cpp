#include <exception>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hmmaro/inference.hpp"
#include "hmmaro/kernels.hpp"

namespace hmmaro::kernels {

namespace {

// Exceptions cannot cross an OpenMP region; validation happens up front so the
// per-sequence work below is noexcept in practice.
void check_inputs(const HmmModel& model, std::span<const ObservationSequence> seqs) {
  for (const auto& seq : seqs) require_compatible(model, seq);
}

}  // namespace

namespace omp {

std::vector<double> log_likelihoods(const HmmModel& model, std::span<const ObservationSequence> seqs) {
  check_inputs(model, seqs);
  std::vector<double> out(seqs.size());
  const auto count = static_cast<long>(seqs.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = log_likelihood(model, seqs[static_cast<std::size_t>(i)]);
  return out;
}

std::vector<SufficientStatistics> statistics(const HmmModel& model, std::span<const ObservationSequence> seqs) {
  check_inputs(model, seqs);
  std::vector<SufficientStatistics> out(seqs.size());
  const auto count = static_cast<long>(seqs.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    out[idx] = sequence_statistics(model, seqs[idx]);
  }
  return out;
}

}  // namespace omp

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace hmmaro::kernels
