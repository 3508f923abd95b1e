#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

namespace quartic_sos::detail {

using RationalMatrix = std::vector<std::vector<mpq_class>>;

/// Row echelon reduction in place; returns the rank and accumulates the
/// determinant of the leading square block when the matrix is square.
inline int row_reduce(RationalMatrix& m, mpq_class* det = nullptr) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  mpq_class d = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) {
      d = 0;
      continue;
    }
    if (pivot != rank) {
      std::swap(m[pivot], m[rank]);
      d = -d;
    }
    const mpq_class p = m[rank][c];
    d *= p;
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      const mpq_class factor = m[r][c] / p;
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= factor * m[rank][k];
    }
    ++rank;
  }
  if (det) *det = (rank == rows && rows == cols) ? d : mpq_class(0);
  return static_cast<int>(rank);
}

inline mpq_class determinant(RationalMatrix m) {
  if (m.empty()) return 1;
  mpq_class d;
  row_reduce(m, &d);
  return d;
}

inline int rank(RationalMatrix m) {
  return row_reduce(m);
}

}  // namespace quartic_sos::detail
