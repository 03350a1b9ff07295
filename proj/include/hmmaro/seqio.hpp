#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hmmaro/alignment.hpp"
#include "hmmaro/model.hpp"

namespace hmmaro {

class Rng;

struct SequenceRecord {
  std::string name;
  std::string sequence;

  friend bool operator==(const SequenceRecord&, const SequenceRecord&) = default;
};

/// Raw records plus their symbol-indexed form over an ordered alphabet.
struct SequenceDataset {
  std::vector<SequenceRecord> records;
  std::string alphabet;
  std::vector<ObservationSequence> indexed;

  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }
  std::size_t alphabet_size() const { return alphabet.size(); }
  std::string decode(const ObservationSequence& seq) const;

  friend bool operator==(const SequenceDataset&, const SequenceDataset&) = default;
};

/// Canonicalizes sequences (uppercase, whitespace stripped) and indexes them.
/// The alphabet defaults to the sorted distinct symbol set. Throws
/// std::invalid_argument for empty sequences or symbols outside an explicit alphabet.
SequenceDataset make_dataset(std::vector<SequenceRecord> records,
                             const std::optional<std::string>& alphabet = std::nullopt);

SequenceDataset read_fasta(std::istream& in, const std::optional<std::string>& alphabet = std::nullopt);
SequenceDataset read_fasta_file(const std::string& path, const std::optional<std::string>& alphabet = std::nullopt);
void write_fasta(std::ostream& out, const SequenceDataset& ds, std::size_t line_width = 60);

/// Aligned FASTA: like FASTA but '-' is allowed and every row must share one width.
Alignment read_alignment(std::istream& in);
Alignment read_alignment_file(const std::string& path);
void write_alignment(std::ostream& out, const Alignment& alignment);

/// Random train/validation partition; train keeps input order, validation is
/// everything else, also in input order.
std::pair<SequenceDataset, SequenceDataset> split(const SequenceDataset& ds, std::size_t train_size, Rng& rng);

struct LengthRange {
  std::size_t min = 1;
  std::size_t max = 1;
};

/// count independent samples from a discrete generator, lengths uniform in the
/// range, named syn_0001, syn_0002, ...
SequenceDataset synthesize(const HmmModel& generator, std::size_t count, LengthRange lengths,
                           const std::string& alphabet, Rng& rng);

/// Default alphabet for K symbols: the 20 amino acids when K <= 20, else A..Z.
std::string default_alphabet(std::size_t k);

/// One-line summary: "N=491 LSEQ=90 (19, 119) T=150".
std::string manifest(const SequenceDataset& ds, std::size_t train_size);

}  // namespace hmmaro
