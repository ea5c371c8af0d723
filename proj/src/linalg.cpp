#include "hallforge/linalg.hpp"

#include <algorithm>

#include "hallforge/errors.hpp"

namespace hallforge {

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) throw InvariantViolation("matrix shape mismatch in multiply");
  Matrix c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      int x = a(i, k);
      if (x == 0) continue;
      for (int j = 0; j < b.cols; ++j)
        if (b(k, j) != 0) c(i, j) = f.add(c(i, j), f.mul(x, b(k, j)));
    }
  return c;
}

std::vector<int> rref_in_place(const Field& f, Matrix& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int sel = -1;
    for (int r = row; r < m.rows; ++r)
      if (m(r, col) != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    if (sel != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m(sel, j), m(row, j));
    int inv = f.inv(m(row, col));
    for (int j = 0; j < m.cols; ++j) m(row, j) = f.mul(m(row, j), inv);
    for (int r = 0; r < m.rows; ++r) {
      if (r == row || m(r, col) == 0) continue;
      int factor = m(r, col);
      for (int j = 0; j < m.cols; ++j)
        m(r, j) = f.sub(m(r, j), f.mul(factor, m(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank(const Field& f, Matrix m) { return static_cast<int>(rref_in_place(f, m).size()); }

std::vector<std::vector<int>> nullspace(const Field& f, Matrix m) {
  auto pivots = rref_in_place(f, m);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<int>> basis;
  for (int free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<int> v(m.cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(m(static_cast<int>(r), free));
    basis.push_back(std::move(v));
  }
  return basis;
}

bool is_zero(const Matrix& m) {
  return std::all_of(m.data.begin(), m.data.end(), [](int x) { return x == 0; });
}

}  // namespace hallforge
