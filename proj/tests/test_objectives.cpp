#include <cmath>

#include "doctest.h"
#include "hmmaro/inference.hpp"
#include "hmmaro/objectives.hpp"
#include "hmmaro/random.hpp"
#include "oracles.hpp"

using namespace hmmaro;

namespace {

ObservationSequence syms(std::vector<std::size_t> s) { return ObservationSequence::from_symbols(std::move(s)); }

std::string to_text(const ObservationSequence& s, std::string_view alphabet) {
  std::string out;
  for (const auto v : s.symbols()) out.push_back(alphabet[v]);
  return out;
}

// Inserts gaps at random positions and pads every row to the same width.
Alignment random_gapping(const std::vector<std::string>& seqs, Rng& rng) {
  Alignment a;
  std::size_t width = 0;
  for (const auto& s : seqs) {
    std::string row;
    for (const char c : s) {
      while (rng.uniform01() < 0.3) row.push_back(kGap);
      row.push_back(c);
    }
    a.rows.push_back(row);
    a.names.push_back("s" + std::to_string(a.names.size()));
    width = std::max(width, row.size());
  }
  for (auto& row : a.rows) {
    while (row.size() < width) row.insert(row.begin() + static_cast<long>(rng.uniform_int(0, row.size())), kGap);
  }
  return a;
}

Alignment rows(std::vector<std::string> r) {
  Alignment a;
  for (std::size_t i = 0; i < r.size(); ++i) a.names.push_back("s" + std::to_string(i));
  a.rows = std::move(r);
  return a;
}

}  // namespace

TEST_CASE("null model frequencies") {
  SUBCASE("pseudocount on an all-a dataset") {
    const std::vector<ObservationSequence> data{syms({0, 0, 0}), syms({0, 0, 0, 0, 0})};
    const auto null = null_model(data, 2);
    CHECK(null.discrete().table(0, 0) == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(null.discrete().table(0, 1) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(null.initial == std::vector<double>{1.0});
    CHECK(null.transition(0, 0) == 1.0);
  }
  SUBCASE("single-symbol alphabet") {
    const std::vector<ObservationSequence> data{syms({0, 0})};
    CHECK(null_model(data, 1).discrete().table(0, 0) == 1.0);
  }
  SUBCASE("uniform data stays within three sigma of 1/K") {
    Rng rng(1);
    const std::size_t k = 5;
    std::vector<ObservationSequence> data;
    for (int i = 0; i < 200; ++i) data.push_back(oracle::random_symbols(50, k, rng));
    const double n = 200.0 * 50.0;
    const auto null = null_model(data, k);
    const double p = 1.0 / k;
    for (std::size_t v = 0; v < k; ++v) CHECK(std::abs(null.discrete().table(0, v) - p) < 3 * std::sqrt(p * (1 - p) / n));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(null_model(std::vector<ObservationSequence>{}, 2), std::invalid_argument);
  }
}

TEST_CASE("log-odds arithmetic") {
  const auto null = make_discrete_model({1.0}, {{1.0}}, {{0.25, 0.75}});
  const auto model = make_discrete_model({1.0}, {{1.0}}, {{0.5, 0.5}});
  SUBCASE("model equal to the null scores exactly zero") {
    Rng rng(2);
    for (int trial = 0; trial < 50; ++trial) {
      const auto m = random_discrete_model(3, 4, rng);
      std::vector<ObservationSequence> data;
      for (int i = 0; i < 5; ++i) data.push_back(oracle::random_symbols(10, 4, rng));
      CHECK(log_odds(m, m, data) == 0.0);
    }
  }
  SUBCASE("doubled likelihood scores one bit") {
    const std::vector<ObservationSequence> data{syms({0})};
    CHECK(log_odds(model, null, data) == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("ratios 2 and 8 average to 2 bits") {
    const std::vector<ObservationSequence> data{syms({0}), syms({0, 0, 0})};
    CHECK(log_odds(model, null, data) == doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("duplicating the dataset leaves the mean unchanged") {
    Rng rng(3);
    const auto m = random_discrete_model(3, 4, rng);
    std::vector<ObservationSequence> data;
    for (int i = 0; i < 7; ++i) data.push_back(oracle::random_symbols(12, 4, rng));
    auto doubled = data;
    doubled.insert(doubled.end(), data.begin(), data.end());
    const auto n = null_model(data, 4);
    CHECK(log_odds(m, n, doubled) == doctest::Approx(log_odds(m, n, data)).epsilon(1e-13));
  }
  SUBCASE("impossible under the model gives -inf, under the null an error") {
    const auto only_zero = make_discrete_model({1.0}, {{1.0}}, {{1.0, 0.0}});
    const std::vector<ObservationSequence> data{syms({0, 1})};
    CHECK(log_odds(only_zero, null, data) == kImpossible);
    CHECK_THROWS_WITH_AS(log_odds(null, only_zero, data), doctest::Contains("degenerate null"), Error);
  }
}

TEST_CASE("alignment construction") {
  const std::string alphabet = "AC";
  const auto left_to_right = make_discrete_model({1.0, 0.0}, {{0.5, 0.5}, {0.0, 1.0}}, {{0.9, 0.1}, {0.1, 0.9}});

  SUBCASE("identical sequences give identical gap-free rows") {
    Rng rng(4);
    const auto m = random_discrete_model(3, 2, rng);
    const auto s = oracle::random_symbols(9, 2, rng);
    const std::vector<ObservationSequence> seqs{s, s, s};
    const auto a = align(m, seqs, alphabet);
    for (const auto& row : a.rows) CHECK(row == to_text(s, alphabet));
  }
  SUBCASE("a single sequence is its own alignment") {
    const std::vector<ObservationSequence> seqs{syms({0, 1, 1, 0})};
    const auto a = align(left_to_right, seqs, alphabet);
    REQUIRE(a.size() == 1);
    CHECK(a.rows[0] == "ACCA");
  }
  SUBCASE("hand trace on a left-to-right model") {
    // Viterbi paths: AAC -> 0,0,1 and ACC -> 0,1,1. Columns are the visits
    // (0,1) (0,2) (1,1) (1,2).
    const std::vector<ObservationSequence> seqs{syms({0, 0, 1}), syms({0, 1, 1})};
    REQUIRE(viterbi(left_to_right, seqs[0]).path == StatePath{0, 0, 1});
    REQUIRE(viterbi(left_to_right, seqs[1]).path == StatePath{0, 1, 1});
    const auto a = align(left_to_right, seqs, alphabet);
    CHECK(a.rows[0] == "AAC-");
    CHECK(a.rows[1] == "A-CC");
  }
  SUBCASE("de-gapping recovers every input exactly") {
    Rng rng(5);
    const std::string amino = "ACDEF";
    for (int trial = 0; trial < 100; ++trial) {
      const auto m = random_discrete_model(1 + rng.uniform_int(0, 4), 5, rng);
      std::vector<ObservationSequence> seqs;
      for (std::size_t i = 0, n = 1 + rng.uniform_int(0, 6); i < n; ++i)
        seqs.push_back(oracle::random_symbols(1 + rng.uniform_int(0, 25), 5, rng));
      const auto a = align(m, seqs, amino);
      CHECK_NOTHROW(require_rectangular(a));
      for (std::size_t i = 0; i < seqs.size(); ++i) CHECK(degap(a.rows[i]) == to_text(seqs[i], amino));
    }
  }
  SUBCASE("undecodable sequences are named") {
    const auto stuck = make_discrete_model({1.0}, {{1.0}}, {{1.0, 0.0}});
    const std::vector<ObservationSequence> seqs{syms({0}), syms({1})};
    CHECK_THROWS_WITH_AS(align(stuck, seqs, alphabet), doctest::Contains("sequence 1"), Error);
  }
}

TEST_CASE("sum-of-pairs distance") {
  CHECK(sop_raw(rows({"AC-D", "AC-D"})) == 0.0);
  // D(x,y) = 1, D(x,z) = 2, D(y,z) = 3.
  CHECK(sop_raw(rows({"AAA", "CAA", "AGG"})) == 6.0);
  CHECK(column_mismatch_distance("A-", "--") == 1.0);
  CHECK(column_mismatch_distance("--", "--") == 0.0);
  CHECK_THROWS_AS(sop_raw(rows({"AC"})), std::invalid_argument);

  Rng rng(6);
  const std::string symbols = "ACG-";
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> r(5, std::string(12, ' '));
    for (auto& row : r) {
      for (auto& c : row) c = symbols[rng.uniform_int(0, 3)];
    }
    double expected = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 5; ++j) {
        if (i >= j) continue;
        for (std::size_t col = 0; col < 12; ++col) expected += r[i][col] != r[j][col] ? 1.0 : 0.0;
      }
    }
    CHECK(sop_raw(rows(r)) == expected);
    auto shuffled = r;
    std::swap(shuffled[0], shuffled[4]);
    std::swap(shuffled[1], shuffled[2]);
    CHECK(sop_raw(rows(shuffled)) == expected);
  }
}

TEST_CASE("reference sum-of-pairs fraction") {
  CHECK(sop_reference(rows({"AC", "AC"}), rows({"AC", "AC"})) == 1.0);
  CHECK(sop_reference(rows({"AC--", "--AC"}), rows({"AC", "AC"})) == 0.0);
  // Reference aligns (0,0)-(1,0) and (0,1)-(1,1); the test keeps only the first.
  CHECK(sop_reference(rows({"AC-", "A-C"}), rows({"AC", "AC"})) == 0.5);
  CHECK(sop_reference(rows({"A-", "-A"}), rows({"A-", "-A"})) == 1.0);

  CHECK_THROWS_AS(sop_reference(rows({"AC", "AC"}), rows({"AC", "AG"})), std::invalid_argument);
  CHECK_THROWS_AS(sop_reference(rows({"AC", "AC"}), rows({"AC", "AC", "AC"})), std::invalid_argument);

  Rng rng(7);
  const std::string symbols = "ACDEFG";
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::string> seqs(2 + rng.uniform_int(0, 3));
    for (auto& s : seqs) {
      s.resize(1 + rng.uniform_int(0, 8));
      for (auto& c : s) c = symbols[rng.uniform_int(0, 5)];
    }
    const auto test = random_gapping(seqs, rng);
    const auto reference = random_gapping(seqs, rng);
    const double score = sop_reference(test, reference);
    CHECK(score >= 0.0);
    CHECK(score <= 1.0);
    CHECK(sop_reference(reference, reference) == 1.0);
  }
}
