#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

namespace qball {

// Determinant of a row-major n x n matrix by Gaussian elimination with complete pivoting.
template <class T>
T determinant(std::vector<T> a, int n) {
  using std::abs;
  T det = T(1);
  for (int k = 0; k < n; ++k) {
    int pr = k, pc = k;
    auto best = abs(a[k * n + k]);
    for (int i = k; i < n; ++i)
      for (int j = k; j < n; ++j)
        if (abs(a[i * n + j]) > best) {
          best = abs(a[i * n + j]);
          pr = i;
          pc = j;
        }
    if (best == decltype(best)(0)) return T(0);
    if (pr != k) {
      for (int j = 0; j < n; ++j) std::swap(a[k * n + j], a[pr * n + j]);
      det = -det;
    }
    if (pc != k) {
      for (int i = 0; i < n; ++i) std::swap(a[i * n + k], a[i * n + pc]);
      det = -det;
    }
    const T piv = a[k * n + k];
    det *= piv;
    for (int i = k + 1; i < n; ++i) {
      const T f = a[i * n + k] / piv;
      if (f == T(0)) continue;
      for (int j = k + 1; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
    }
  }
  return det;
}

}  // namespace qball
