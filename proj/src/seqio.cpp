#include "hmmaro/seqio.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hmmaro/inference.hpp"
#include "hmmaro/random.hpp"

namespace hmmaro {

namespace {

std::string canonical(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (const char ch : raw) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) continue;
    out.push_back(static_cast<char>(std::toupper(c)));
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Shared FASTA scanner; records may be empty, callers decide.
std::vector<SequenceRecord> scan_fasta(std::istream& in) {
  std::vector<SequenceRecord> records;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.front() == '>') {
      records.push_back({trim(std::string_view(line).substr(1)), {}});
      continue;
    }
    const std::string data = canonical(line);
    if (data.empty()) continue;
    if (records.empty()) {
      throw std::invalid_argument("FASTA line " + std::to_string(number) + ": sequence data before any header");
    }
    records.back().sequence += data;
  }
  if (records.empty()) throw std::invalid_argument("FASTA input contains no records");
  return records;
}

void write_wrapped(std::ostream& out, const std::string& name, const std::string& seq, std::size_t width) {
  out << '>' << name << '\n';
  if (width == 0) width = seq.size();
  for (std::size_t i = 0; i < seq.size(); i += width) out << seq.substr(i, width) << '\n';
}

}  // namespace

void require_rectangular(const Alignment& alignment) {
  if (!alignment.names.empty() && alignment.names.size() != alignment.rows.size()) {
    throw std::invalid_argument("alignment has " + std::to_string(alignment.names.size()) + " names for " +
                                std::to_string(alignment.rows.size()) + " rows");
  }
  for (std::size_t i = 0; i < alignment.rows.size(); ++i) {
    if (alignment.rows[i].size() != alignment.width()) {
      throw std::invalid_argument("alignment row " + std::to_string(i) + " has width " +
                                  std::to_string(alignment.rows[i].size()) + ", expected " +
                                  std::to_string(alignment.width()));
    }
  }
}

std::string degap(const std::string& row) {
  std::string out;
  out.reserve(row.size());
  for (const char c : row) {
    if (c != kGap) out.push_back(c);
  }
  return out;
}

std::string SequenceDataset::decode(const ObservationSequence& seq) const {
  std::string out;
  out.reserve(seq.size());
  for (const auto s : seq.symbols()) {
    if (s >= alphabet.size()) throw std::invalid_argument("symbol index outside dataset alphabet");
    out.push_back(alphabet[s]);
  }
  return out;
}

SequenceDataset make_dataset(std::vector<SequenceRecord> records, const std::optional<std::string>& alphabet) {
  SequenceDataset ds;
  for (auto& r : records) {
    r.sequence = canonical(r.sequence);
    if (r.sequence.empty()) throw std::invalid_argument("record '" + r.name + "' is empty");
    if (r.sequence.find(kGap) != std::string::npos) {
      throw std::invalid_argument("record '" + r.name + "' contains gap characters; raw datasets must be gap-free");
    }
  }

  if (alphabet) {
    ds.alphabet = *alphabet;
    std::string sorted = ds.alphabet;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("explicit alphabet has repeated symbols");
    }
  } else {
    std::array<bool, 256> seen{};
    for (const auto& r : records) {
      for (const char c : r.sequence) seen[static_cast<unsigned char>(c)] = true;
    }
    for (std::size_t c = 0; c < seen.size(); ++c) {
      if (seen[c]) ds.alphabet.push_back(static_cast<char>(c));
    }
  }

  std::array<int, 256> index{};
  index.fill(-1);
  for (std::size_t i = 0; i < ds.alphabet.size(); ++i) index[static_cast<unsigned char>(ds.alphabet[i])] = static_cast<int>(i);

  ds.indexed.reserve(records.size());
  for (const auto& r : records) {
    std::vector<std::size_t> symbols;
    symbols.reserve(r.sequence.size());
    for (const char c : r.sequence) {
      const int idx = index[static_cast<unsigned char>(c)];
      if (idx < 0) {
        throw std::invalid_argument("record '" + r.name + "' has symbol '" + std::string(1, c) +
                                    "' outside the alphabet");
      }
      symbols.push_back(static_cast<std::size_t>(idx));
    }
    ds.indexed.push_back(ObservationSequence::from_symbols(std::move(symbols)));
  }
  ds.records = std::move(records);
  return ds;
}

SequenceDataset read_fasta(std::istream& in, const std::optional<std::string>& alphabet) {
  return make_dataset(scan_fasta(in), alphabet);
}

SequenceDataset read_fasta_file(const std::string& path, const std::optional<std::string>& alphabet) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_fasta(in, alphabet);
}

void write_fasta(std::ostream& out, const SequenceDataset& ds, std::size_t line_width) {
  for (const auto& r : ds.records) write_wrapped(out, r.name, r.sequence, line_width);
}

Alignment read_alignment(std::istream& in) {
  Alignment a;
  for (auto& r : scan_fasta(in)) {
    if (r.sequence.empty()) throw std::invalid_argument("alignment row '" + r.name + "' is empty");
    a.names.push_back(std::move(r.name));
    a.rows.push_back(std::move(r.sequence));
  }
  require_rectangular(a);
  return a;
}

Alignment read_alignment_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_alignment(in);
}

void write_alignment(std::ostream& out, const Alignment& alignment) {
  require_rectangular(alignment);
  for (std::size_t i = 0; i < alignment.rows.size(); ++i) {
    const std::string name = alignment.names.empty() ? "seq" + std::to_string(i + 1) : alignment.names[i];
    write_wrapped(out, name, alignment.rows[i], 60);
  }
}

std::pair<SequenceDataset, SequenceDataset> split(const SequenceDataset& ds, std::size_t train_size, Rng& rng) {
  if (train_size < 1 || train_size > ds.size()) {
    throw std::invalid_argument("train size " + std::to_string(train_size) + " outside [1, " +
                                std::to_string(ds.size()) + "]");
  }
  std::vector<std::size_t> order(ds.size());
  std::iota(order.begin(), order.end(), 0);
  // Partial Fisher-Yates: the first train_size slots are a uniform sample.
  for (std::size_t i = 0; i < train_size; ++i) {
    const std::size_t j = rng.uniform_int(i, order.size() - 1);
    std::swap(order[i], order[j]);
  }
  std::vector<bool> in_train(ds.size(), false);
  for (std::size_t i = 0; i < train_size; ++i) in_train[order[i]] = true;

  SequenceDataset train;
  SequenceDataset validation;
  train.alphabet = validation.alphabet = ds.alphabet;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    auto& dst = in_train[i] ? train : validation;
    dst.records.push_back(ds.records[i]);
    dst.indexed.push_back(ds.indexed[i]);
  }
  return {std::move(train), std::move(validation)};
}

SequenceDataset synthesize(const HmmModel& generator, std::size_t count, LengthRange lengths,
                           const std::string& alphabet, Rng& rng) {
  if (!generator.is_discrete()) throw std::invalid_argument("synthesize needs a discrete generator");
  if (count == 0) throw std::invalid_argument("synthesize needs at least one sequence");
  if (lengths.min < 1 || lengths.max < lengths.min) throw std::invalid_argument("invalid length range");
  if (alphabet.size() != generator.discrete().alphabet_size()) {
    throw std::invalid_argument("alphabet has " + std::to_string(alphabet.size()) + " symbols, generator emits " +
                                std::to_string(generator.discrete().alphabet_size()));
  }
  SequenceDataset ds;
  ds.alphabet = alphabet;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t len = rng.uniform_int(lengths.min, lengths.max);
    auto s = sample(generator, len, rng);
    char name[32];
    std::snprintf(name, sizeof name, "syn_%04zu", i + 1);
    ds.records.push_back({name, ds.decode(s.observations)});
    ds.indexed.push_back(std::move(s.observations));
  }
  return ds;
}

std::string default_alphabet(std::size_t k) {
  static const std::string amino = "ACDEFGHIKLMNPQRSTVWY";
  if (k == 0 || k > 26) throw std::invalid_argument("default alphabet supports 1..26 symbols");
  if (k <= amino.size()) return amino.substr(0, k);
  std::string out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(static_cast<char>('A' + i));
  return out;
}

std::string manifest(const SequenceDataset& ds, std::size_t train_size) {
  std::size_t lo = 0, hi = 0, total = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const std::size_t len = ds.records[i].sequence.size();
    lo = i == 0 ? len : std::min(lo, len);
    hi = std::max(hi, len);
    total += len;
  }
  const double mean = ds.empty() ? 0.0 : static_cast<double>(total) / static_cast<double>(ds.size());
  std::ostringstream out;
  out << "N=" << ds.size() << " LSEQ=" << std::llround(mean) << " (" << lo << ", " << hi << ") T=" << train_size;
  return out.str();
}

}  // namespace hmmaro
