#pragma once

// Small exact linear-algebra helpers.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fwn/scalar.hpp"

namespace fwn {

using IntMatrix = std::vector<std::vector<mpz_class>>;
using RationalMatrix = std::vector<std::vector<Rational>>;

/// Rank by fraction-free (Bareiss) elimination. The input is modified.
std::size_t bareiss_rank(IntMatrix a);

/// Rank of a rational matrix: each row is scaled by the lcm of its
/// denominators, then Bareiss elimination runs on integers.
std::size_t exact_rank(const RationalMatrix& a);

/// Solves a x = b by Gaussian elimination over T; throws when a is singular.
template <Scalar T>
std::vector<T> solve(std::vector<std::vector<T>> a, std::vector<T> b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("solve: shape mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    if constexpr (scalar_traits<T>::exact) {
      while (pivot < n && fwn::is_zero(a[pivot][col])) ++pivot;
    } else {
      for (std::size_t r = col + 1; r < n; ++r)
        if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (pivot == n || fwn::is_zero(a[pivot][col])) throw std::domain_error("solve: singular matrix");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || fwn::is_zero(a[r][col])) continue;
      const T f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] = a[r][c] - f * a[col][c];
      b[r] = b[r] - f * b[col];
    }
  }
  std::vector<T> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

/// Coefficients c[j][k] of the bivariate polynomial p(z, w) = sum c[j][k] z^j w^k
/// of degree <= n in each variable from samples on the grid z, w in 0..n.
/// values[a][b] = p(a, b).
template <Scalar T>
std::vector<std::vector<T>> interpolate_grid(const std::vector<std::vector<T>>& values) {
  const std::size_t n = values.size();
  std::vector<std::vector<T>> vander(n, std::vector<T>(n, T(0)));
  for (std::size_t a = 0; a < n; ++a) {
    T power = T(1);
    for (std::size_t j = 0; j < n; ++j) {
      vander[a][j] = power;
      power = power * T(static_cast<long>(a));
    }
  }
  // First along w for each fixed z node, then along z.
  std::vector<std::vector<T>> partial(n);
  for (std::size_t a = 0; a < n; ++a) partial[a] = solve(vander, values[a]);
  std::vector<std::vector<T>> out(n, std::vector<T>(n, T(0)));
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<T> column(n);
    for (std::size_t a = 0; a < n; ++a) column[a] = partial[a][k];
    const auto coeffs = solve(vander, column);
    for (std::size_t j = 0; j < n; ++j) out[j][k] = coeffs[j];
  }
  return out;
}

}  // namespace fwn
