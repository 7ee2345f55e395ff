#pragma once

// Fixed-shape pairwise summation. The reduction tree depends only on the
// input length, so a sum is bit-identical no matter which threads produced
// the terms.

#include <cstddef>
#include <span>

namespace bloch {

template <class T>
T pairwise_sum(std::span<const T> xs) {
  constexpr std::size_t kLeaf = 8;
  if (xs.size() <= kLeaf) {
    T acc{};
    for (const T& x : xs) acc += x;
    return acc;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

/// Pairwise sum of column `col` of a row-major (rows x width) table.
template <class T>
T pairwise_column_sum(std::span<const T> table, std::size_t width, std::size_t col,
                      std::size_t row_begin, std::size_t row_end) {
  constexpr std::size_t kLeaf = 8;
  const std::size_t n = row_end - row_begin;
  if (n <= kLeaf) {
    T acc{};
    for (std::size_t r = row_begin; r < row_end; ++r) acc += table[r * width + col];
    return acc;
  }
  const std::size_t mid = row_begin + n / 2;
  return pairwise_column_sum(table, width, col, row_begin, mid) +
         pairwise_column_sum(table, width, col, mid, row_end);
}

}  // namespace bloch
