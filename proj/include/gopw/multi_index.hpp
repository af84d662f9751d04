#ifndef GOPW_MULTI_INDEX_HPP
#define GOPW_MULTI_INDEX_HPP

#include <cstddef>
#include <utility>

namespace gopw {

// Canonical ordering of bivariate multi-indices (r, j).  Indices are grouped
// by total degree and ordered within a degree block as (d,0), (d-1,1), ..., (0,d).
// All storage in this library is dense in this ordering.
namespace multi_index {

// Number of multi-indices with total degree <= n.
constexpr std::size_t size(int n) {
  return static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 2) / 2;
}

// First position of the degree-d block.
constexpr std::size_t level_offset(int d) { return d == 0 ? 0 : size(d - 1); }

// Zero-based position of (r, j).
constexpr std::size_t flatten(int r, int j) {
  return level_offset(r + j) + static_cast<std::size_t>(j);
}

// Inverse of flatten.
constexpr std::pair<int, int> unflatten(std::size_t k) {
  int d = 0;
  while (size(d) <= k) ++d;
  const int j = static_cast<int>(k - level_offset(d));
  return {d - j, j};
}

}  // namespace multi_index
}  // namespace gopw

#endif
