#include "configk3/linalg.hpp"

#include <stdexcept>

namespace configk3 {

int row_reduce(RationalMatrix& m, std::vector<int>* pivot_cols) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t pivot = r;
    while (pivot < rows && m[pivot][c].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[r], m[pivot]);
    Rational inv = m[r][c].inverse();
    for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Rational f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    if (pivot_cols) pivot_cols->push_back(int(c));
    ++r;
  }
  return int(r);
}

int matrix_rank(RationalMatrix m) { return row_reduce(m); }

std::vector<std::vector<Rational>> matrix_kernel(RationalMatrix m, int ncols) {
  std::vector<int> pivots;
  if (m.empty()) m.push_back(std::vector<Rational>(size_t(ncols), Rational(0)));
  row_reduce(m, &pivots);
  std::vector<bool> is_pivot(size_t(ncols), false);
  for (int p : pivots) is_pivot[size_t(p)] = true;
  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < ncols; ++free) {
    if (is_pivot[size_t(free)]) continue;
    std::vector<Rational> v(size_t(ncols), Rational(0));
    v[size_t(free)] = Rational(1);
    // Back-substitute pivot rows.
    int row = 0;
    for (int p : pivots) {
      v[size_t(p)] = -m[size_t(row)][size_t(free)];
      ++row;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Rational>> solve_linear(RationalMatrix a,
                                                  std::vector<Rational> b) {
  size_t rows = a.size();
  if (rows == 0) return std::vector<Rational>{};
  size_t cols = a[0].size();
  for (size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
  std::vector<int> pivots;
  row_reduce(a, &pivots);
  // Inconsistent iff a pivot lands in the augmented column.
  for (int p : pivots)
    if (p == int(cols)) return std::nullopt;
  std::vector<Rational> x(cols, Rational(0));
  int row = 0;
  for (int p : pivots) {
    x[size_t(p)] = a[size_t(row)][cols];
    ++row;
  }
  return x;
}

Rational det3(const RationalMatrix& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

std::optional<RationalMatrix> invert3(const RationalMatrix& m) {
  Rational d = det3(m);
  if (d.is_zero()) return std::nullopt;
  Rational inv = d.inverse();
  RationalMatrix r(3, std::vector<Rational>(3));
  auto cof = [&](int i, int j) {
    int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
    int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
    return m[size_t(i1)][size_t(j1)] * m[size_t(i2)][size_t(j2)] -
           m[size_t(i1)][size_t(j2)] * m[size_t(i2)][size_t(j1)];
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[size_t(j)][size_t(i)] = cof(i, j) * inv;
  return r;
}

}  // namespace configk3
