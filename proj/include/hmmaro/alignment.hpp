#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace hmmaro {

inline constexpr char kGap = '-';

/// Gapped rows of equal width; removing gaps from rows[i] gives sequence i.
struct Alignment {
  std::vector<std::string> names;
  std::vector<std::string> rows;

  std::size_t size() const { return rows.size(); }
  std::size_t width() const { return rows.empty() ? 0 : rows.front().size(); }

  friend bool operator==(const Alignment&, const Alignment&) = default;
};

/// Throws std::invalid_argument when rows differ in width or names do not match rows.
void require_rectangular(const Alignment& alignment);

std::string degap(const std::string& row);

}  // namespace hmmaro
