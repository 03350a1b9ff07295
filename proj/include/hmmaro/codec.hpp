#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hmmaro {

/// Fixed-length bit string; one byte per bit (0 or 1).
struct Chromosome {
  std::vector<std::uint8_t> bits;

  std::size_t size() const { return bits.size(); }
  friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

/// Signed fixed-point layout of a real vector.
///
/// Each variable takes 1 + int_bits + frac_bits bits: a sign bit (1 = negative),
/// then the magnitude's integer part big-endian, then its binary fraction.
/// Bounds are used to clamp on encode and to draw initial individuals; decode
/// does not clamp, so every bit pattern maps to a distinct grid value.
class Codec {
 public:
  Codec(std::size_t n_vars, std::size_t int_bits, std::size_t frac_bits, std::vector<double> lower,
        std::vector<double> upper);
  /// Same bounds for every variable.
  Codec(std::size_t n_vars, std::size_t int_bits, std::size_t frac_bits, double lower, double upper);

  std::size_t n_vars() const { return n_vars_; }
  std::size_t int_bits() const { return int_bits_; }
  std::size_t frac_bits() const { return frac_bits_; }
  std::size_t bits_per_var() const { return 1 + int_bits_ + frac_bits_; }
  std::size_t total_bits() const { return n_vars_ * bits_per_var(); }
  std::span<const double> lower() const { return lower_; }
  std::span<const double> upper() const { return upper_; }

  /// Grid step 2^-frac_bits.
  double resolution() const { return std::ldexp(1.0, -static_cast<int>(frac_bits_)); }
  /// Largest representable magnitude, 2^int_bits - resolution.
  double max_magnitude() const;

  /// Clamps to bounds, then truncates the magnitude toward zero onto the grid.
  /// Throws std::domain_error if a clamped value is still out of range.
  Chromosome encode(std::span<const double> x) const;
  /// Exact inverse on the grid; negative zero decodes to +0.
  std::vector<double> decode(const Chromosome& c) const;

 private:
  std::size_t n_vars_;
  std::size_t int_bits_;
  std::size_t frac_bits_;
  std::vector<double> lower_;
  std::vector<double> upper_;
};

/// P = 1 / ln(g), clamped to 1 (g = 1 and g = 2 give 1).
double mutation_prob(std::size_t g);

enum class SubstringRange {
  total_length,  ///< g ~ U[1, total chromosome length]
  int_bits,      ///< g ~ U[1, int_bits], the literal per-variable reading
};

struct ReproduceOptions {
  SubstringRange g_range = SubstringRange::total_length;
  /// Flip every substring bit of the larva instead of flipping each with mutation_prob(g).
  bool flip_all = false;
};

/// Budding step. Draw order from the source: g, then the substring start, then
/// one flip draw per substring bit (skipped with flip_all), then one selection
/// draw per substring bit. A selection draw u < 0.5 keeps the parent bit,
/// otherwise the larva bit is taken. Source must provide
/// uniform_int(lo, hi) (inclusive) and uniform01().
template <class Source>
Chromosome reproduce(const Chromosome& parent, Source& source, const ReproduceOptions& options = {},
                     std::size_t int_bits = 0) {
  const std::size_t length = parent.size();
  if (length == 0) return parent;
  std::size_t g_max = length;
  if (options.g_range == SubstringRange::int_bits && int_bits > 0) g_max = std::min(int_bits, length);
  const std::size_t g = source.uniform_int(1, g_max);
  const std::size_t start = source.uniform_int(0, length - g);

  Chromosome larva = parent;
  const double p = mutation_prob(g);
  for (std::size_t i = start; i < start + g; ++i) {
    if (options.flip_all || source.uniform01() < p) larva.bits[i] ^= 1U;
  }
  Chromosome bud = parent;
  for (std::size_t i = start; i < start + g; ++i) {
    if (!(source.uniform01() < 0.5)) bud.bits[i] = larva.bits[i];
  }
  return bud;
}

}  // namespace hmmaro
