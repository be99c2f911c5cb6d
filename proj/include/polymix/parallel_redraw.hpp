#pragma once

// The space of parallel redrawings of a framework: vertex positions q_i such
// that every edge q_t - q_s stays parallel to the original p_t - p_s. The
// space is linear and always contains the homotheties q = λp + t, so its
// dimension is at least d + 1; a polytope is tight when nothing else fits.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "polymix/newton_polytope.hpp"
#include "polymix/rational.hpp"

namespace polymix {

template <class T>
struct Skeleton {
  std::size_t dim = 0;
  std::vector<std::vector<T>> positions;
  std::vector<EdgeIndex> edges;
};

enum class Arithmetic { exact, approximate };

struct RedrawSpace {
  int dimension = 0;
  bool tight = false;
  Arithmetic arithmetic = Arithmetic::exact;
  double tolerance = 0.0;
  int constraint_rank = 0;
};

inline constexpr double kRedrawTolerance = 1e-9;

template <class T>
void validate(const Skeleton<T>& P) {
  if (P.dim < 1 || P.dim > 3) throw std::invalid_argument("redrawings are supported in dimensions 1 to 3");
  if (P.edges.empty()) throw std::invalid_argument("skeleton has no edges");
  for (const auto& p : P.positions) {
    if (p.size() != P.dim) throw std::invalid_argument("vertex coordinate count differs from dimension");
  }
  for (std::size_t i = 0; i < P.positions.size(); ++i) {
    for (std::size_t j = i + 1; j < P.positions.size(); ++j) {
      if (P.positions[i] == P.positions[j]) throw std::invalid_argument("repeated vertex position");
    }
  }
  for (auto [s, t] : P.edges) {
    if (s >= P.positions.size() || t >= P.positions.size()) throw std::invalid_argument("edge endpoint out of range");
    if (s == t) throw std::invalid_argument("zero-length edge");
  }
}

// Rows encode (q_t - q_s) ∥ (p_t - p_s): one 2D cross product per edge in the
// plane, the three components of the 3D cross product in space.
template <class T>
std::vector<std::vector<T>> constraint_matrix(const Skeleton<T>& P) {
  validate(P);
  const std::size_t d = P.dim, cols = P.positions.size() * d;
  std::vector<std::vector<T>> rows;
  for (auto [s, t] : P.edges) {
    std::vector<T> e(d);
    for (std::size_t i = 0; i < d; ++i) e[i] = P.positions[t][i] - P.positions[s][i];
    auto put = [&](std::size_t j, std::size_t k) {
      // component: Δq_j e_k - Δq_k e_j
      std::vector<T> row(cols, T(0));
      row[t * d + j] += e[k];
      row[s * d + j] -= e[k];
      row[t * d + k] -= e[j];
      row[s * d + k] += e[j];
      rows.push_back(std::move(row));
    };
    if (d == 2) {
      put(0, 1);
    } else if (d == 3) {
      put(1, 2);
      put(2, 0);
      put(0, 1);
    }
  }
  return rows;
}

// The d+1 vectors spanning q = λp + t, flattened like the matrix columns.
template <class T>
std::vector<std::vector<T>> homothety_basis(const Skeleton<T>& P) {
  const std::size_t d = P.dim, n = P.positions.size();
  std::vector<std::vector<T>> basis;
  std::vector<T> scale(n * d);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < d; ++i) scale[v * d + i] = P.positions[v][i];
  }
  basis.push_back(scale);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<T> tr(n * d, T(0));
    for (std::size_t v = 0; v < n; ++v) tr[v * d + i] = T(1);
    basis.push_back(tr);
  }
  return basis;
}

inline int exact_rank(std::vector<std::vector<Rational>> M) {
  int rank = 0;
  const std::size_t cols = M.empty() ? 0 : M[0].size();
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(M.size()); ++c) {
    std::size_t piv = rank;
    while (piv < M.size() && M[piv][c] == 0) ++piv;
    if (piv == M.size()) continue;
    std::swap(M[piv], M[rank]);
    for (std::size_t r = rank + 1; r < M.size(); ++r) {
      if (M[r][c] == 0) continue;
      const Rational factor = M[r][c] / M[rank][c];
      for (std::size_t j = c; j < cols; ++j) M[r][j] -= factor * M[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Numerical rank: singular values above tol times the largest one.
inline int approximate_rank(const std::vector<std::vector<double>>& M, double tol) {
  if (M.empty()) return 0;
  Eigen::MatrixXd A(M.size(), M[0].size());
  for (std::size_t i = 0; i < M.size(); ++i) {
    for (std::size_t j = 0; j < M[i].size(); ++j) A(i, j) = M[i][j];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol * sv(0)) ++rank;
  }
  return rank;
}

template <class T>
RedrawSpace redraw_space(const Skeleton<T>& P, double tolerance = kRedrawTolerance) {
  static_assert(std::is_same_v<T, Rational> || std::is_same_v<T, double>);
  auto M = constraint_matrix(P);
  RedrawSpace out;
  if constexpr (std::is_same_v<T, Rational>) {
    out.constraint_rank = exact_rank(std::move(M));
    out.arithmetic = Arithmetic::exact;
  } else {
    out.constraint_rank = approximate_rank(M, tolerance);
    out.arithmetic = Arithmetic::approximate;
    out.tolerance = tolerance;
  }
  out.dimension = static_cast<int>(P.positions.size() * P.dim) - out.constraint_rank;
  out.tight = out.dimension == static_cast<int>(P.dim) + 1;
  return out;
}

template <class T>
bool is_tight(const Skeleton<T>& P, double tolerance = kRedrawTolerance) {
  return redraw_space(P, tolerance).tight;
}

// The 1-skeleton of a lattice polytope in its own lattice coordinates.
// Redraw dimension is invariant under invertible affine maps, so this loses nothing.
inline Skeleton<Rational> skeleton_of(const LatticePolytope& P) {
  if (P.affine_dim < 1 || P.affine_dim > 3) {
    throw std::invalid_argument("skeleton needs a polytope of dimension 1 to 3");
  }
  Skeleton<Rational> S;
  S.dim = static_cast<std::size_t>(P.affine_dim);
  for (const auto& v : P.local_vertices) {
    std::vector<Rational> row;
    for (auto x : v) row.emplace_back(x);
    S.positions.push_back(std::move(row));
  }
  S.edges = P.edges;
  return S;
}

inline Skeleton<double> to_double(const Skeleton<Rational>& P) {
  Skeleton<double> S;
  S.dim = P.dim;
  S.edges = P.edges;
  for (const auto& v : P.positions) {
    std::vector<double> row;
    for (const auto& x : v) row.push_back(static_cast<double>(x));
    S.positions.push_back(std::move(row));
  }
  return S;
}

}  // namespace polymix
