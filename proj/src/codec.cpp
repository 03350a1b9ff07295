#include "hmmaro/codec.hpp"

#include <stdexcept>
#include <string>

namespace hmmaro {

Codec::Codec(std::size_t n_vars, std::size_t int_bits, std::size_t frac_bits, std::vector<double> lower,
             std::vector<double> upper)
    : n_vars_(n_vars), int_bits_(int_bits), frac_bits_(frac_bits), lower_(std::move(lower)), upper_(std::move(upper)) {
  if (n_vars_ == 0) throw std::invalid_argument("codec needs at least one variable");
  if (int_bits_ < 1) throw std::invalid_argument("codec needs at least one integer bit");
  if (int_bits_ + frac_bits_ > 52) throw std::invalid_argument("codec magnitude must fit in 52 bits");
  if (lower_.size() != n_vars_ || upper_.size() != n_vars_) throw std::invalid_argument("codec bounds size mismatch");
  for (std::size_t i = 0; i < n_vars_; ++i) {
    if (!(lower_[i] <= upper_[i])) throw std::invalid_argument("codec lower bound above upper bound");
  }
}

Codec::Codec(std::size_t n_vars, std::size_t int_bits, std::size_t frac_bits, double lower, double upper)
    : Codec(n_vars, int_bits, frac_bits, std::vector<double>(n_vars, lower), std::vector<double>(n_vars, upper)) {}

double Codec::max_magnitude() const { return std::ldexp(1.0, static_cast<int>(int_bits_)) - resolution(); }

Chromosome Codec::encode(std::span<const double> x) const {
  if (x.size() != n_vars_) throw std::invalid_argument("encode: expected " + std::to_string(n_vars_) + " values");
  const std::size_t mag_bits = int_bits_ + frac_bits_;
  const std::uint64_t limit = std::uint64_t{1} << mag_bits;
  Chromosome c;
  c.bits.assign(total_bits(), 0);
  for (std::size_t v = 0; v < n_vars_; ++v) {
    const double clamped = std::clamp(x[v], lower_[v], upper_[v]);
    const double scaled = std::floor(std::ldexp(std::abs(clamped), static_cast<int>(frac_bits_)));
    if (!(scaled < static_cast<double>(limit))) {
      throw std::domain_error("value " + std::to_string(clamped) + " does not fit in " + std::to_string(int_bits_) +
                              " integer bits");
    }
    const auto magnitude = static_cast<std::uint64_t>(scaled);
    const std::size_t base = v * bits_per_var();
    c.bits[base] = (clamped < 0.0 && magnitude > 0) ? 1 : 0;
    for (std::size_t b = 0; b < mag_bits; ++b) {
      c.bits[base + 1 + b] = static_cast<std::uint8_t>((magnitude >> (mag_bits - 1 - b)) & 1U);
    }
  }
  return c;
}

std::vector<double> Codec::decode(const Chromosome& c) const {
  if (c.size() != total_bits()) throw std::invalid_argument("decode: chromosome length does not match codec");
  const std::size_t mag_bits = int_bits_ + frac_bits_;
  std::vector<double> x(n_vars_);
  for (std::size_t v = 0; v < n_vars_; ++v) {
    const std::size_t base = v * bits_per_var();
    std::uint64_t magnitude = 0;
    for (std::size_t b = 0; b < mag_bits; ++b) magnitude = (magnitude << 1) | c.bits[base + 1 + b];
    const double value = std::ldexp(static_cast<double>(magnitude), -static_cast<int>(frac_bits_));
    x[v] = (c.bits[base] != 0 && magnitude > 0) ? -value : value;
  }
  return x;
}

double mutation_prob(std::size_t g) {
  if (g <= 2) return 1.0;
  return std::min(1.0, 1.0 / std::log(static_cast<double>(g)));
}

}  // namespace hmmaro
