#pragma once

#include <vector>

#include "hallforge/field.hpp"

namespace hallforge {

/// Dense row-major matrix with entries in GF(q) (encoded as ints).
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0) {}

  int& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  int operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  bool operator==(const Matrix&) const = default;
};

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b);

/// In-place reduced row echelon form; returns pivot columns.
std::vector<int> rref_in_place(const Field& f, Matrix& m);

int rank(const Field& f, Matrix m);

/// Basis of {x : m x = 0}, one vector per entry.
std::vector<std::vector<int>> nullspace(const Field& f, Matrix m);

bool is_zero(const Matrix& m);

}  // namespace hallforge
