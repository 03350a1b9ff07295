#include <cmath>
#include <deque>

#include "doctest.h"
#include "hmmaro/codec.hpp"
#include "hmmaro/random.hpp"

using namespace hmmaro;

namespace {

Chromosome bits(std::initializer_list<int> b) {
  Chromosome c;
  for (const int x : b) c.bits.push_back(static_cast<std::uint8_t>(x));
  return c;
}

// Hands out pre-scripted draws so each branch of reproduce can be forced.
struct ScriptedSource {
  std::deque<std::size_t> ints;
  std::deque<double> reals;
  std::size_t uniform_int(std::size_t lo, std::size_t hi) {
    REQUIRE(!ints.empty());
    const std::size_t v = ints.front();
    ints.pop_front();
    REQUIRE(v >= lo);
    REQUIRE(v <= hi);
    return v;
  }
  double uniform01() {
    REQUIRE(!reals.empty());
    const double v = reals.front();
    reals.pop_front();
    return v;
  }
};

Chromosome canonical(const Codec& codec, Chromosome c) {
  const std::size_t l = codec.bits_per_var();
  for (std::size_t v = 0; v < codec.n_vars(); ++v) {
    bool zero = true;
    for (std::size_t i = 1; i < l; ++i) zero = zero && c.bits[v * l + i] == 0;
    if (zero) c.bits[v * l] = 0;
  }
  return c;
}

}  // namespace

TEST_CASE("encoding examples") {
  const Codec codec(1, 3, 2, -7.0, 7.0);
  CHECK(codec.bits_per_var() == 6);
  CHECK(codec.encode(std::vector<double>{2.75}) == bits({0, 0, 1, 0, 1, 1}));
  CHECK(codec.encode(std::vector<double>{-1.5}) == bits({1, 0, 0, 1, 1, 0}));
  CHECK(codec.encode(std::vector<double>{0.0}) == bits({0, 0, 0, 0, 0, 0}));
  CHECK(codec.decode(bits({0, 0, 1, 0, 1, 1})) == std::vector<double>{2.75});
  CHECK(codec.decode(codec.encode(std::vector<double>{0.3})) == std::vector<double>{0.25});
  CHECK(codec.decode(codec.encode(std::vector<double>{-0.3})) == std::vector<double>{-0.25});

  const auto zero = codec.decode(bits({1, 0, 0, 0, 0, 0}));
  CHECK(zero[0] == 0.0);
  CHECK_FALSE(std::signbit(zero[0]));
  CHECK(codec.encode(zero) == bits({0, 0, 0, 0, 0, 0}));
}

TEST_CASE("encoding clamps to bounds and rejects unrepresentable values") {
  const Codec codec(2, 2, 3, std::vector<double>{-1.0, 0.0}, std::vector<double>{1.0, 3.5});
  CHECK(codec.decode(codec.encode(std::vector<double>{5.0, -2.0})) == std::vector<double>{1.0, 0.0});
  CHECK(codec.total_bits() == 12);
  CHECK(codec.max_magnitude() == 3.875);
  const Codec narrow(1, 1, 2, -10.0, 10.0);
  CHECK_THROWS_AS(narrow.encode(std::vector<double>{5.0}), std::domain_error);
  CHECK_THROWS_AS(Codec(1, 0, 2, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(narrow.decode(bits({0, 1})), std::invalid_argument);
}

TEST_CASE("codec round trips") {
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.uniform_int(0, 3);
    const std::size_t l1 = 1 + rng.uniform_int(0, 5);
    const std::size_t l2 = rng.uniform_int(0, 10);
    const double mag = std::ldexp(1.0, static_cast<int>(l1)) - std::ldexp(1.0, -static_cast<int>(l2));
    const Codec codec(n, l1, l2, -mag, mag);
    for (int p = 0; p < 50; ++p) {
      std::vector<double> x(n);
      const auto steps = (std::size_t{1} << (l1 + l2)) - 1;
      for (auto& v : x) v = (rng.uniform01() < 0.5 ? -1.0 : 1.0) * static_cast<double>(rng.uniform_int(0, steps)) * codec.resolution();
      auto decoded = codec.decode(codec.encode(x));
      for (std::size_t i = 0; i < n; ++i) CHECK(decoded[i] == x[i]);

      Chromosome c;
      c.bits.resize(codec.total_bits());
      for (auto& b : c.bits) b = static_cast<std::uint8_t>(rng.uniform_int(0, 1));
      CHECK(codec.encode(codec.decode(c)) == canonical(codec, c));
    }
  }
}

TEST_CASE("mutation probability") {
  CHECK(mutation_prob(1) == 1.0);
  CHECK(mutation_prob(2) == 1.0);
  CHECK(mutation_prob(3) == doctest::Approx(0.9102).epsilon(1e-4));
  CHECK(mutation_prob(100) == doctest::Approx(1.0 / std::log(100.0)));
  for (std::size_t g = 1; g < 1000; ++g) {
    CHECK(mutation_prob(g) > 0.0);
    CHECK(mutation_prob(g) <= 1.0);
  }
}

TEST_CASE("reproduce with scripted draws") {
  const auto parent = bits({1, 0, 1, 1, 0, 0, 1, 0});
  SUBCASE("full-length substring, every bit flipped and taken from the larva") {
    ScriptedSource s;
    s.ints = {8, 0};
    s.reals.assign(8, 0.0);   // flip draws, all below mutation_prob(8)
    s.reals.insert(s.reals.end(), 8, 0.9);  // selection draws take the larva
    const auto bud = reproduce(parent, s);
    CHECK(bud == bits({0, 1, 0, 0, 1, 1, 0, 1}));
    CHECK(s.reals.empty());
  }
  SUBCASE("selection draws below one half keep the parent") {
    ScriptedSource s;
    s.ints = {8, 0};
    s.reals.assign(8, 0.0);
    s.reals.insert(s.reals.end(), 8, 0.1);
    CHECK(reproduce(parent, s) == parent);
  }
  SUBCASE("bits outside the substring never change") {
    ScriptedSource s;
    s.ints = {3, 2};
    s.reals = {0.0, 0.0, 0.0, 0.9, 0.1, 0.9};
    CHECK(reproduce(parent, s) == bits({1, 0, 0, 1, 1, 0, 1, 0}));
  }
  SUBCASE("flip_all skips the flip draws") {
    ScriptedSource s;
    s.ints = {2, 6};
    s.reals = {0.9, 0.9};
    CHECK(reproduce(parent, s, {SubstringRange::total_length, true}) == bits({1, 0, 1, 1, 0, 0, 0, 1}));
  }
  SUBCASE("literal range draws g from the integer bits") {
    ScriptedSource s;
    s.ints = {3, 0};
    s.reals = {0.0, 0.0, 0.0, 0.1, 0.1, 0.1};
    CHECK_NOTHROW(reproduce(parent, s, {SubstringRange::int_bits, false}, 3));
  }
}

TEST_CASE("changed-bit fraction matches the mechanism's expectation") {
  // Each substring bit changes iff it is flipped and then taken from the larva.
  auto expected_fraction = [](std::size_t total, std::size_t g_max, bool flip_all) {
    double e = 0.0;
    for (std::size_t g = 1; g <= g_max; ++g) e += static_cast<double>(g) * (flip_all ? 1.0 : mutation_prob(g)) * 0.5;
    return e / static_cast<double>(g_max) / static_cast<double>(total);
  };
  const std::size_t total = 24;
  struct Case {
    ReproduceOptions options;
    std::size_t g_max;
  };
  for (const Case& c : {Case{{}, total}, Case{{SubstringRange::total_length, true}, total},
                        Case{{SubstringRange::int_bits, false}, 4}}) {
    Rng rng(2);
    Chromosome parent;
    parent.bits.resize(total);
    for (auto& b : parent.bits) b = static_cast<std::uint8_t>(rng.uniform_int(0, 1));
    const int draws = 10000;
    std::vector<double> fractions;
    for (int i = 0; i < draws; ++i) {
      const auto bud = reproduce(parent, rng, c.options, 4);
      REQUIRE(bud.size() == total);
      std::size_t changed = 0;
      for (std::size_t k = 0; k < total; ++k) changed += bud.bits[k] != parent.bits[k] ? 1 : 0;
      fractions.push_back(static_cast<double>(changed) / total);
    }
    double mean = 0.0;
    for (const double f : fractions) mean += f;
    mean /= draws;
    double ss = 0.0;
    for (const double f : fractions) ss += (f - mean) * (f - mean);
    const double se = std::sqrt(ss / (draws - 1) / draws);
    CHECK(std::abs(mean - expected_fraction(total, c.g_max, c.options.flip_all)) < 3 * se);
  }
}
