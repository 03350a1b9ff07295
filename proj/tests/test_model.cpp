#include <sstream>

#include "doctest.h"
#include "hmmaro/model.hpp"
#include "hmmaro/model_io.hpp"
#include "hmmaro/random.hpp"

using namespace hmmaro;

namespace {

bool mentions(const ValidationReport& r, const std::string& needle) {
  for (const auto& v : r.violations) {
    if (v.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("validate accepts the one-state identity model") {
  const auto m = make_discrete_model({1.0}, {{1.0}}, {{0.5, 0.5}});
  CHECK(validate(m).ok());
}

TEST_CASE("validate names a transition row that does not sum to one") {
  const auto m = make_discrete_model({0.5, 0.5}, {{0.7, 0.2}, {0.5, 0.5}}, {{1.0}, {1.0}});
  const auto r = validate(m);
  REQUIRE_FALSE(r.ok());
  CHECK(mentions(r, "transition row 0"));
  CHECK_FALSE(mentions(r, "transition row 1"));
}

TEST_CASE("validate flags mixture weights that violate the sum-to-one constraint") {
  HmmModel m;
  m.initial = {1.0};
  m.transition = Matrix(1, 1, 1.0);
  GaussianMixtureEmission mix(1, 2, 1);
  mix.weights(0, 0) = 0.6;
  mix.weights(0, 1) = 0.6;
  m.emission = mix;
  const auto r = validate(m);
  REQUIRE_FALSE(r.ok());
  CHECK(mentions(r, "mixture weights row 0"));
}

TEST_CASE("validate catches negative entries, bad shapes and low variances") {
  auto m = make_discrete_model({1.1, -0.1}, {{1.0, 0.0}, {0.0, 1.0}}, {{1.0}, {1.0}});
  CHECK(mentions(validate(m), "initial distribution entry 1"));

  auto bad_shape = make_discrete_model({1.0}, {{1.0}}, {{1.0}, {1.0}});
  CHECK(mentions(validate(bad_shape), "emission table"));

  HmmModel g;
  g.initial = {1.0};
  g.transition = Matrix(1, 1, 1.0);
  GaussianMixtureEmission mix(1, 1, 2);
  mix.variances[1] = 1e-9;
  g.emission = mix;
  CHECK(mentions(validate(g), "variance"));

  CHECK_THROWS_AS(require_valid(m), std::invalid_argument);
}

TEST_CASE("require_compatible rejects mismatched observations") {
  const auto m = make_discrete_model({1.0}, {{1.0}}, {{0.5, 0.5}});
  CHECK_THROWS_AS(require_compatible(m, ObservationSequence::from_symbols({0, 2})), std::invalid_argument);
  CHECK_THROWS_AS(require_compatible(m, ObservationSequence::from_vectors({{0.0}})), std::invalid_argument);
  CHECK_THROWS_AS(require_compatible(m, ObservationSequence::from_symbols({})), std::invalid_argument);
  CHECK_NOTHROW(require_compatible(m, ObservationSequence::from_symbols({0, 1})));
}

TEST_CASE("model text format round-trips exactly") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const HmmModel m = trial % 2 == 0 ? random_discrete_model(1 + trial % 4, 1 + trial % 6, rng)
                                      : random_mixture_model(1 + trial % 3, 1 + trial % 3, 1 + trial % 2, rng);
    std::stringstream buf;
    write_model(buf, m);
    const HmmModel back = read_model(buf);
    CHECK(back == m);
  }
}

TEST_CASE("model reader reports malformed input") {
  std::istringstream missing("hmm-model 1\nkind discrete\nstates 2\nsymbols 2\ninitial 0.5 0.5\n");
  CHECK_THROWS_AS(read_model(missing), std::invalid_argument);
  std::istringstream bad_number(
      "hmm-model 1\nkind discrete\nstates 1\nsymbols 1\ninitial x\ntransition 1\nemission 1\n");
  CHECK_THROWS_WITH_AS(read_model(bad_number), doctest::Contains("line 5"), std::invalid_argument);
  std::istringstream not_model("hello\n");
  CHECK_THROWS_AS(read_model(not_model), std::invalid_argument);
}
