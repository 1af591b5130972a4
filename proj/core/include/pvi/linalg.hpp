#pragma once

#include <optional>
#include <vector>

#include "pvi/polynomial.hpp"

namespace pvi {

template <FieldElement K>
using Matrix = std::vector<std::vector<K>>;

// One solution of A x = b by exact Gauss-Jordan elimination (free variables
// set to zero), or nullopt when the system is inconsistent.
template <FieldElement K>
std::optional<std::vector<K>> solve_linear(Matrix<K> a, std::vector<K> b) {
  const size_t rows = a.size();
  const size_t cols = rows ? a[0].size() : 0;
  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    K inv = K(1) / a[r][c];
    for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
    b[r] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      K f = a[i][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (size_t i = r; i < rows; ++i)
    if (!b[i].is_zero()) return std::nullopt;
  std::vector<K> x(cols, K(0));
  for (size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
  return x;
}

}  // namespace pvi
