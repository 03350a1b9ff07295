#include "doctest.h"
#include "hmmaro/em.hpp"
#include "hmmaro/kernels.hpp"
#include "hmmaro/random.hpp"
#include "oracles.hpp"

using namespace hmmaro;

namespace {

bool same(const SufficientStatistics& a, const SufficientStatistics& b) {
  return a.log_likelihood == b.log_likelihood && a.sequences == b.sequences && a.initial == b.initial &&
         a.transition == b.transition && a.emission == b.emission && a.component == b.component &&
         a.first == b.first && a.second == b.second;
}

}  // namespace

TEST_CASE("OpenMP kernels match the serial reference bit for bit") {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const bool discrete = trial % 2 == 0;
    const auto m = discrete ? random_discrete_model(4, 6, rng) : random_mixture_model(3, 2, 2, rng);
    std::vector<ObservationSequence> data;
    for (int i = 0; i < 33; ++i) data.push_back(sample(m, 5 + rng.uniform_int(0, 60), rng).observations);

    CHECK(kernels::serial::log_likelihoods(m, data) == kernels::omp::log_likelihoods(m, data));
    const auto s = kernels::serial::statistics(m, data);
    const auto p = kernels::omp::statistics(m, data);
    REQUIRE(s.size() == p.size());
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(same(s[i], p[i]));
    CHECK(same(kernels::reduce(m, s), kernels::reduce(m, p)));
  }
}

TEST_CASE("kernels validate their inputs") {
  Rng rng(2);
  const auto m = random_discrete_model(2, 3, rng);
  const std::vector<ObservationSequence> bad{oracle::random_symbols(4, 3, rng), ObservationSequence::from_symbols({5})};
  CHECK_THROWS_AS(kernels::serial::log_likelihoods(m, bad), std::invalid_argument);
  CHECK_THROWS_AS(kernels::omp::log_likelihoods(m, bad), std::invalid_argument);
  CHECK(kernels::max_threads() >= 1);
}
