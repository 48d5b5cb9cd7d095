#include "severi/matrix.hpp"

#include <algorithm>
#include <numeric>

#include "severi/errors.hpp"

namespace severi {

SquareMatrix::SquareMatrix(std::size_t n, const Window& w)
    : n_(n), window_(w), entries_(n * n, MultiSeries(w)) {}

SquareMatrix SquareMatrix::identity(std::size_t n, const Window& w) {
  SquareMatrix m(n, w);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = MultiSeries::constant(w, 1);
  return m;
}

bool SquareMatrix::is_zero() const {
  for (const auto& e : entries_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

SquareMatrix SquareMatrix::principal_submatrix(const std::vector<std::size_t>& indices) const {
  SquareMatrix out(indices.size(), window_);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    for (std::size_t j = 0; j < indices.size(); ++j) out(i, j) = (*this)(indices[i], indices[j]);
  }
  return out;
}

SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.size() != b.size()) throw DomainError("matrix size mismatch");
  SquareMatrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) out(i, j) += b(i, j);
  }
  return out;
}

SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.size() != b.size()) throw DomainError("matrix size mismatch");
  SquareMatrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) out(i, j) -= b(i, j);
  }
  return out;
}

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.size() != b.size()) throw DomainError("matrix size mismatch");
  const std::size_t n = a.size();
  SquareMatrix out(n, a.window());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b(k, j).is_zero()) continue;
        out(i, j) += a(i, k) * b(k, j);
      }
    }
  }
  return out;
}

MultiSeries determinant_bareiss(const SquareMatrix& m, const std::vector<std::size_t>& row_order) {
  const std::size_t n = m.size();
  std::vector<std::size_t> order = row_order;
  if (order.empty()) {
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
  }
  if (order.size() != n) throw DomainError("row order has the wrong length");

  // Parity of the requested permutation via cycle counting.
  int sign = 1;
  {
    std::vector<std::size_t> check = order;
    std::sort(check.begin(), check.end());
    for (std::size_t i = 0; i < n; ++i) {
      if (check[i] != i) throw DomainError("row order is not a permutation");
    }
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      if (seen[i]) continue;
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = order[j]) {
        seen[j] = true;
        ++len;
      }
      if (len % 2 == 0) sign = -sign;
    }
  }

  const Window& w = m.window();
  if (n == 0) return MultiSeries::constant(w, 1);
  std::vector<std::vector<MultiSeries>> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i].push_back(m(order[i], j));
  }

  MultiSeries prev = MultiSeries::constant(w, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a[p][k].is_zero()) ++p;
      if (p == n) return MultiSeries(w);
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiSeries cross = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        a[i][j] = exact_divide(cross, prev);
      }
      a[i][k] = MultiSeries(w);
    }
    prev = a[k][k];
  }
  MultiSeries det = a[n - 1][n - 1];
  if (sign < 0) det *= Rational(-1);
  return det;
}

}  // namespace severi
