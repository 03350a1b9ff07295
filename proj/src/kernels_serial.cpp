#include "hmmaro/inference.hpp"
#include "hmmaro/kernels.hpp"

namespace hmmaro::kernels {

namespace serial {

std::vector<double> log_likelihoods(const HmmModel& model, std::span<const ObservationSequence> seqs) {
  std::vector<double> out(seqs.size());
  for (std::size_t i = 0; i < seqs.size(); ++i) out[i] = log_likelihood(model, seqs[i]);
  return out;
}

std::vector<SufficientStatistics> statistics(const HmmModel& model, std::span<const ObservationSequence> seqs) {
  std::vector<SufficientStatistics> out;
  out.reserve(seqs.size());
  for (const auto& seq : seqs) out.push_back(sequence_statistics(model, seq));
  return out;
}

}  // namespace serial

SufficientStatistics reduce(const HmmModel& model, std::span<const SufficientStatistics> parts) {
  auto total = SufficientStatistics::zero(model);
  for (const auto& p : parts) total += p;
  return total;
}

}  // namespace hmmaro::kernels
