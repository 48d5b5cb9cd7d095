#pragma once

#include <cstddef>
#include <vector>

#include "severi/multiseries.hpp"

namespace severi {

// Dense square matrix over truncated series (or polynomials, with the
// unbounded window).
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, const Window& w = Window::polynomial_ring());

  static SquareMatrix identity(std::size_t n, const Window& w = Window::polynomial_ring());

  std::size_t size() const noexcept { return n_; }
  const Window& window() const noexcept { return window_; }

  MultiSeries& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const MultiSeries& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  bool is_zero() const;
  SquareMatrix principal_submatrix(const std::vector<std::size_t>& indices) const;

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  Window window_;
  std::vector<MultiSeries> entries_;
};

SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);

// Fraction-free determinant. Rows are eliminated in `row_order` (identity when
// empty); the sign of that permutation is compensated, so any order gives the
// same value. Entries must be polynomials with nonnegative exponents.
MultiSeries determinant_bareiss(const SquareMatrix& m, const std::vector<std::size_t>& row_order = {});

}  // namespace severi
