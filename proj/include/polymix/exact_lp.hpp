#pragma once

// Phase-one simplex over exact rationals: is {x ≥ 0 : A x = b} non-empty?
// Bland's rule guarantees termination; problem sizes here are tiny.

#include <cstddef>
#include <optional>
#include <vector>

#include "polymix/rational.hpp"

namespace polymix {

using RationalMatrix = std::vector<std::vector<Rational>>;

inline std::optional<std::vector<Rational>> feasible_point(const RationalMatrix& A, const std::vector<Rational>& b) {
  const std::size_t m = A.size();
  const std::size_t n = m ? A[0].size() : 0;
  const std::size_t cols = n + m;  // originals then artificials; rhs stored separately
  RationalMatrix T(m, std::vector<Rational>(cols));
  std::vector<Rational> rhs(b);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = rhs[i] < 0;
    for (std::size_t j = 0; j < n; ++j) T[i][j] = flip ? -A[i][j] : A[i][j];
    if (flip) rhs[i] = -rhs[i];
    T[i][n + i] = 1;
    basis[i] = n + i;
  }
  // Reduced costs for minimizing the sum of artificials.
  std::vector<Rational> cost(cols);
  Rational objective = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) cost[j] -= T[i][j];
    objective -= rhs[i];
  }
  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (T[i][enter] <= 0) continue;
      Rational ratio = rhs[i] / T[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction; cannot happen for phase one
    const Rational piv = T[leave][enter];
    for (auto& x : T[leave]) x /= piv;
    rhs[leave] /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || T[i][enter] == 0) continue;
      const Rational factor = T[i][enter];
      for (std::size_t j = 0; j < cols; ++j) T[i][j] -= factor * T[leave][j];
      rhs[i] -= factor * rhs[leave];
    }
    const Rational cf = cost[enter];
    for (std::size_t j = 0; j < cols; ++j) cost[j] -= cf * T[leave][j];
    objective -= cf * rhs[leave];
    basis[leave] = enter;
  }
  if (objective != 0) return std::nullopt;
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) x[basis[i]] = rhs[i];
  }
  return x;
}

}  // namespace polymix
