#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>

#include "hmmaro/alignment.hpp"
#include "hmmaro/kernels.hpp"
#include "hmmaro/model.hpp"

namespace hmmaro {

/// Single-state unigram model: emission = symbol frequencies over the whole
/// dataset with pseudocount 1 per symbol.
HmmModel null_model(std::span<const ObservationSequence> dataset, std::size_t alphabet_size);

/// Mean over sequences of log2(P(O_i | model) / P(O_i | null)).
///
/// Returns -infinity if any sequence is impossible under the model; throws
/// hmmaro::Error ("degenerate null") if one is impossible under the null.
double log_odds(const HmmModel& model, const HmmModel& null, std::span<const ObservationSequence> dataset,
                Execution exec = Execution::parallel);

/// Distance between two equal-width gapped rows.
using PairDistance = std::function<double(std::string_view, std::string_view)>;

/// Per column: 0 for equal symbols (including gap/gap), 1 otherwise.
double column_mismatch_distance(std::string_view x, std::string_view y);

/// Aligns sequences by synchronizing their Viterbi state visits.
///
/// Each sequence's path is turned into keys (state, k) for the k-th visit to
/// that state. Residues with the same key share a column. Columns are emitted
/// by a merge over all sequences; when visit orders conflict (one sequence sees
/// state a before b, another b before a) the key is split into separate
/// columns so every row keeps its residue order. Throws hmmaro::Error naming a
/// sequence that cannot be decoded.
Alignment align(const HmmModel& model, std::span<const ObservationSequence> seqs, std::string_view alphabet);

/// sum_{i<j} D(row_i, row_j). Throws std::invalid_argument for fewer than two rows.
double sop_raw(const Alignment& alignment, const PairDistance& metric = column_mismatch_distance);

/// Fraction of residue pairs aligned in the reference that are also aligned in
/// the test alignment. Rows are matched by index and must de-gap to the same
/// sequences. A reference without aligned pairs scores 1.
double sop_reference(const Alignment& test, const Alignment& reference);

}  // namespace hmmaro
