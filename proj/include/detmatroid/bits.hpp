#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace detmatroid {

// Row subsets of [m] (m <= 64) are bitmasks: bit i-1 set <=> row i present.
using RowMask = std::uint64_t;

inline int popcount(RowMask mask) { return std::popcount(mask); }

inline RowMask full_mask(int m) {
  return m >= 64 ? ~RowMask{0} : ((RowMask{1} << m) - 1);
}

inline RowMask bit_of(int index_1based) { return RowMask{1} << (index_1based - 1); }

inline bool contains(RowMask mask, int index_1based) {
  return (mask >> (index_1based - 1)) & 1U;
}

// Ascending 1-based indices of the set bits.
inline std::vector<int> to_indices(RowMask mask) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(std::popcount(mask)));
  while (mask != 0) {
    out.push_back(std::countr_zero(mask) + 1);
    mask &= mask - 1;
  }
  return out;
}

template <typename Range>
RowMask to_mask(const Range& indices) {
  RowMask mask = 0;
  for (int i : indices) mask |= bit_of(i);
  return mask;
}

// Lexicographic order on the sorted index lists of two masks of equal
// cardinality: the list containing the smallest differing element wins.
inline bool lex_less_same_size(RowMask a, RowMask b) {
  const RowMask diff = a ^ b;
  if (diff == 0) return false;
  return (a & (diff & (~diff + 1))) != 0;
}

// Order by cardinality first, then lexicographically.
inline bool size_lex_less(RowMask a, RowMask b) {
  const int pa = std::popcount(a);
  const int pb = std::popcount(b);
  if (pa != pb) return pa < pb;
  return lex_less_same_size(a, b);
}

// Next mask with the same popcount in increasing numeric order (Gosper).
inline RowMask next_same_popcount(RowMask v) {
  const RowMask t = v | (v - 1);
  return (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
}

// Calls f(mask) for every k-subset of the low `width` bits (width < 64),
// in increasing numeric order.
template <typename F>
void for_each_k_subset(int width, int k, F&& f) {
  if (k < 0 || k > width) return;
  if (k == 0) {
    f(RowMask{0});
    return;
  }
  const RowMask limit = RowMask{1} << width;
  for (RowMask v = (RowMask{1} << k) - 1; v < limit; v = next_same_popcount(v)) {
    f(v);
  }
}

// Calls f(sub) for every subset of `mask` (including 0 and mask itself).
template <typename F>
void for_each_submask(RowMask mask, F&& f) {
  RowMask sub = mask;
  while (true) {
    f(sub);
    if (sub == 0) break;
    sub = (sub - 1) & mask;
  }
}

}  // namespace detmatroid
