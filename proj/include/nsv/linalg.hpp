// Small exact linear algebra over a field (RatFunc) or a Euclidean ring (Poly<RatFunc>).
#pragma once

#include <vector>

namespace nsv {

template <class K>
using Matrix = std::vector<std::vector<K>>;

// Fraction-free (Bareiss) determinant; needs exact division in K.
template <class K>
K bareiss_det(Matrix<K> a) {
  size_t n = a.size();
  if (n == 0) return K(1);
  K prev(1);
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      size_t p = k + 1;
      while (p < n && a[p][k].is_zero()) ++p;
      if (p == n) return K(0);
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        K num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        a[i][j] = num / prev;
      }
      a[i][k] = K(0);
    }
    prev = a[k][k];
  }
  K d = a[n - 1][n - 1];
  return sign < 0 ? -d : d;
}

// Reduced row echelon form in place over a field; returns pivot columns.
template <class K>
std::vector<size_t> rref(Matrix<K>& a, size_t ncols) {
  std::vector<size_t> piv;
  size_t row = 0;
  for (size_t col = 0; col < ncols && row < a.size(); ++col) {
    size_t p = row;
    while (p < a.size() && a[p][col].is_zero()) ++p;
    if (p == a.size()) continue;
    std::swap(a[row], a[p]);
    K inv = K(1) / a[row][col];
    for (size_t j = col; j < ncols; ++j) a[row][j] = a[row][j] * inv;
    for (size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][col].is_zero()) continue;
      K f = a[i][col];
      for (size_t j = col; j < ncols; ++j)
        if (!a[row][j].is_zero()) a[i][j] -= f * a[row][j];
    }
    piv.push_back(col);
    ++row;
  }
  return piv;
}

template <class K>
size_t rank(Matrix<K> a, size_t ncols) {
  return rref(a, ncols).size();
}

// Basis of {x : a x = 0}.
template <class K>
std::vector<std::vector<K>> kernel(Matrix<K> a, size_t ncols) {
  auto piv = rref(a, ncols);
  std::vector<bool> is_piv(ncols, false);
  for (size_t c : piv) is_piv[c] = true;
  std::vector<std::vector<K>> out;
  for (size_t f = 0; f < ncols; ++f) {
    if (is_piv[f]) continue;
    std::vector<K> v(ncols, K(0));
    v[f] = K(1);
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][f];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace nsv
