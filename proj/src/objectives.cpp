#include "hmmaro/objectives.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <array>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "hmmaro/inference.hpp"

namespace hmmaro {

HmmModel null_model(std::span<const ObservationSequence> dataset, std::size_t alphabet_size) {
  if (dataset.empty()) throw std::invalid_argument("null model needs a non-empty dataset");
  if (alphabet_size == 0) throw std::invalid_argument("null model needs a non-empty alphabet");
  std::vector<double> counts(alphabet_size, 1.0);
  double total = static_cast<double>(alphabet_size);
  for (const auto& seq : dataset) {
    if (!seq.is_discrete()) throw std::invalid_argument("null model needs symbol sequences");
    for (const auto s : seq.symbols()) {
      if (s >= alphabet_size) throw std::invalid_argument("symbol outside alphabet in null model data");
      counts[s] += 1.0;
      total += 1.0;
    }
  }
  for (auto& c : counts) c /= total;
  return make_discrete_model({1.0}, {{1.0}}, {counts});
}

double log_odds(const HmmModel& model, const HmmModel& null, std::span<const ObservationSequence> dataset,
                Execution exec) {
  if (dataset.empty()) throw std::invalid_argument("log-odds needs a non-empty dataset");
  const auto under_null = kernels::log_likelihoods(null, dataset, exec);
  for (std::size_t i = 0; i < under_null.size(); ++i) {
    if (under_null[i] == kImpossible) throw Error("degenerate null: sequence " + std::to_string(i) + " is impossible");
  }
  const auto under_model = kernels::log_likelihoods(model, dataset, exec);
  double sum = 0.0;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (under_model[i] == kImpossible) return kImpossible;
    sum += under_model[i] - under_null[i];
  }
  return sum / std::numbers::ln2 / static_cast<double>(dataset.size());
}

double column_mismatch_distance(std::string_view x, std::string_view y) {
  if (x.size() != y.size()) throw std::invalid_argument("rows of different width");
  double d = 0.0;
  for (std::size_t c = 0; c < x.size(); ++c) {
    if (x[c] != y[c]) d += 1.0;
  }
  return d;
}

namespace {

using VisitKey = std::uint64_t;

VisitKey visit_key(std::size_t state, std::size_t visit) {
  return (static_cast<VisitKey>(state) << 32) | static_cast<VisitKey>(visit);
}

}  // namespace

Alignment align(const HmmModel& model, std::span<const ObservationSequence> seqs, std::string_view alphabet) {
  if (!model.is_discrete()) throw std::invalid_argument("alignment needs a discrete model");
  if (alphabet.size() != model.discrete().alphabet_size()) {
    throw std::invalid_argument("alphabet size does not match the model");
  }
  const std::size_t count = seqs.size();
  std::vector<std::vector<VisitKey>> keys(count);
  std::vector<std::unordered_map<VisitKey, std::size_t>> position(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto decoded = viterbi(model, seqs[i]);
    if (decoded.log_probability == kImpossible) throw Error("sequence " + std::to_string(i) + " cannot be decoded");
    std::vector<std::size_t> visits(model.n_states(), 0);
    for (std::size_t t = 0; t < decoded.path.size(); ++t) {
      const std::size_t s = decoded.path[t];
      const VisitKey key = visit_key(s, ++visits[s]);
      keys[i].push_back(key);
      position[i].emplace(key, t);
    }
  }

  std::vector<std::size_t> cursor(count, 0);
  auto active = [&](std::size_t i) { return cursor[i] < keys[i].size(); };
  // A key is blocked while some sequence still has it ahead of its cursor.
  auto blocked = [&](VisitKey key) {
    for (std::size_t j = 0; j < count; ++j) {
      if (!active(j)) continue;
      const auto it = position[j].find(key);
      if (it != position[j].end() && it->second > cursor[j]) return true;
    }
    return false;
  };

  Alignment out;
  out.rows.assign(count, {});
  while (true) {
    std::optional<VisitKey> chosen;
    std::optional<VisitKey> fallback;
    for (std::size_t i = 0; i < count && !chosen; ++i) {
      if (!active(i)) continue;
      const VisitKey key = keys[i][cursor[i]];
      if (!fallback) fallback = key;
      if (!blocked(key)) chosen = key;
    }
    if (!fallback) break;
    // Every candidate blocked means the visit orders conflict; split the first.
    const VisitKey key = chosen ? *chosen : *fallback;
    for (std::size_t i = 0; i < count; ++i) {
      if (active(i) && keys[i][cursor[i]] == key) {
        out.rows[i].push_back(alphabet[seqs[i].symbols()[cursor[i]]]);
        ++cursor[i];
      } else {
        out.rows[i].push_back(kGap);
      }
    }
  }
  return out;
}

double sop_raw(const Alignment& alignment, const PairDistance& metric) {
  require_rectangular(alignment);
  const std::size_t n = alignment.size();
  if (n < 2) throw std::invalid_argument("sum-of-pairs needs at least two rows");
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) total += metric(alignment.rows[i], alignment.rows[j]);
  }
  return total;
}

namespace {

struct PairHash {
  std::size_t operator()(const std::array<std::size_t, 4>& p) const {
    std::size_t h = 1469598103934665603ull;
    for (const auto v : p) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};

std::vector<std::array<std::size_t, 4>> aligned_pairs(const Alignment& a) {
  constexpr auto kNone = static_cast<std::size_t>(-1);
  const std::size_t n = a.size();
  std::vector<std::size_t> next(n, 0);
  std::vector<std::size_t> residue(n, kNone);
  std::vector<std::array<std::size_t, 4>> pairs;
  for (std::size_t c = 0; c < a.width(); ++c) {
    for (std::size_t i = 0; i < n; ++i) residue[i] = a.rows[i][c] == kGap ? kNone : next[i]++;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (residue[i] == kNone) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (residue[j] != kNone) pairs.push_back({i, residue[i], j, residue[j]});
      }
    }
  }
  return pairs;
}

}  // namespace

double sop_reference(const Alignment& test, const Alignment& reference) {
  require_rectangular(test);
  require_rectangular(reference);
  if (test.size() != reference.size()) {
    throw std::invalid_argument("test alignment has " + std::to_string(test.size()) + " rows, reference has " +
                                std::to_string(reference.size()));
  }
  for (std::size_t i = 0; i < test.size(); ++i) {
    if (degap(test.rows[i]) != degap(reference.rows[i])) {
      throw std::invalid_argument("row " + std::to_string(i) + " differs between test and reference sequences");
    }
  }
  const auto ref_pairs = aligned_pairs(reference);
  if (ref_pairs.empty()) return 1.0;
  const auto test_pairs = aligned_pairs(test);
  const std::unordered_set<std::array<std::size_t, 4>, PairHash> in_test(test_pairs.begin(), test_pairs.end());
  std::size_t hits = 0;
  for (const auto& p : ref_pairs) hits += in_test.count(p);
  return static_cast<double>(hits) / static_cast<double>(ref_pairs.size());
}

}  // namespace hmmaro
