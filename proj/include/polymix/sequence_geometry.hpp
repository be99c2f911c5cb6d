#pragma once

// Geometry of non-mixing sequences.
//
// For a relation Σ a_i u^{n_i} = 0 in R_{d,p}/<f>, every edge of N(f) is
// approximated in direction by an edge of conv{n_i}, up to a bounded
// perturbation of the points. This header provides the pieces used to see
// that on concrete tuples: unimodular frames around an outward normal,
// monomial weights, a detector that recovers a parallel redrawing of N(f)
// inside a tuple, and the snap to an exact homothetic copy when one exists.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "polymix/errors.hpp"
#include "polymix/fp_laurent.hpp"
#include "polymix/intmath.hpp"
#include "polymix/newton_polytope.hpp"
#include "polymix/rational.hpp"

namespace polymix {

struct UnimodularFrame {
  std::vector<ExponentVec> columns;  // columns[0] is the normal being extended
};

// Exact determinant of the matrix with the given columns (fraction-free elimination).
inline BigInt determinant(const std::vector<ExponentVec>& columns) {
  const std::size_t n = columns.size();
  std::vector<std::vector<BigInt>> M(n, std::vector<BigInt>(n));
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < n; ++r) M[r][c] = columns[c][r];
  }
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && M[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(M[k], M[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
    }
    prev = M[k][k];
  }
  return sign * M[n - 1][n - 1];
}

// Completes a primitive v1 to a basis of Z^d, then shears every other column
// by the least multiple of v1 that makes its dot product with v1 negative.
inline UnimodularFrame extend_basis(const ExponentVec& v1) {
  if (!is_primitive(v1)) throw std::invalid_argument("extend_basis needs a primitive vector");
  const std::size_t d = v1.size();
  // Invariant: v1 = Σ w_i B_i with B unimodular.
  std::vector<ExponentVec> B(d, ExponentVec(d, 0));
  for (std::size_t i = 0; i < d; ++i) B[i][i] = 1;
  ExponentVec w = v1;
  auto has_unit = [&] { return std::any_of(w.begin(), w.end(), [](auto x) { return x == 1 || x == -1; }); };
  while (!has_unit()) {
    // Euclid step between the two smallest nonzero coordinates.
    std::size_t a = d, b = d;
    for (std::size_t i = 0; i < d; ++i) {
      if (w[i] == 0) continue;
      if (a == d || std::abs(w[i]) < std::abs(w[a])) {
        b = a;
        a = i;
      } else if (b == d || std::abs(w[i]) < std::abs(w[b])) {
        b = i;
      }
    }
    const auto q = w[b] / w[a];
    w[b] -= q * w[a];
    B[a] = add_vec(B[a], scale_vec(B[b], q));
  }
  std::size_t pivot = d;
  for (std::size_t i = d; i-- > 0;) {
    if (w[i] == 1 || w[i] == -1) {
      pivot = i;
      break;
    }
  }
  UnimodularFrame frame;
  frame.columns.push_back(v1);
  const auto nn = norm_sq(v1);
  for (std::size_t i = 0; i < d; ++i) {
    if (i == pivot) continue;
    const auto m = floor_div(dot(v1, B[i]), nn) + 1;
    frame.columns.push_back(sub_vec(B[i], scale_vec(v1, m)));
  }
  return frame;
}

inline std::int64_t monomial_weight(const ExponentVec& n, const ExponentVec& v1) {
  if (n.size() != v1.size()) throw std::invalid_argument("monomial_weight: dimension mismatch");
  return dot(n, v1);
}

struct EdgePairing {
  EdgeIndex edge;             // N(f) vertex indices, oriented first → second
  std::size_t from = 0, to = 0;  // tuple indices
  std::int64_t multiple = 0;  // snapped difference = multiple · primitive edge direction
};

struct Homothety {
  Rational scale;
  std::vector<Rational> translation;
};

struct RedrawMatch {
  std::int64_t tuple_index = 0;
  std::vector<std::size_t> vertex_to_point;  // N(f) vertex -> tuple index
  std::vector<EdgePairing> pairing;
  std::vector<ExponentVec> perturbations;    // per tuple point, zero when untouched
  std::int64_t K = 0;                        // least integer bound on the Euclidean perturbation norm
  std::int64_t max_norm_sq = 0;
  std::optional<Homothety> homothety;
};

inline constexpr std::int64_t kMaxDetectTolerance = 8;

namespace detail {

struct DetectContext {
  const LatticePolytope& P;
  const std::vector<ExponentVec>& tuple;
  std::int64_t K;
  std::vector<ExponentVec> directions;  // primitive, per edge, first → second
  std::vector<std::int64_t> lengths;    // lattice length per edge
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> order;  // (vertex, parent, edge)
  std::vector<ExponentVec> offsets;     // perturbations with |δ|² ≤ K², by norm then lexicographic

  DetectContext(const LatticePolytope& P_, const std::vector<ExponentVec>& tuple_, std::int64_t K_,
                std::vector<ExponentVec> directions_, std::vector<std::int64_t> lengths_,
                std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> order_,
                std::vector<ExponentVec> offsets_)
      : P(P_), tuple(tuple_), K(K_), directions(std::move(directions_)), lengths(std::move(lengths_)),
        order(std::move(order_)), offsets(std::move(offsets_)) {}

  std::vector<std::size_t> image_point;
  std::vector<ExponentVec> image;
  std::vector<bool> assigned, used;
  std::vector<ExponentVec> delta;
  std::optional<RedrawMatch> best;
  std::tuple<std::int64_t, std::int64_t, std::int64_t> best_score{};

  // Positive integer λ with y - x = λ·dir, or 0.
  static std::int64_t ray_multiple(const ExponentVec& x, const ExponentVec& y, const ExponentVec& dir) {
    std::int64_t lambda = 0;
    for (std::size_t i = 0; i < dir.size(); ++i) {
      const auto diff = y[i] - x[i];
      if (dir[i] == 0) {
        if (diff != 0) return 0;
        continue;
      }
      if (diff % dir[i] != 0) return 0;
      const auto l = diff / dir[i];
      if (l <= 0 || (lambda != 0 && l != lambda)) return 0;
      lambda = l;
    }
    return lambda;
  }

  std::int64_t edge_multiple(std::size_t e) const {
    const auto [a, b] = P.edges[e];
    return ray_multiple(image[a], image[b], directions[e]);
  }

  bool closed_edges_ok() const {
    for (std::size_t e = 0; e < P.edges.size(); ++e) {
      const auto [a, b] = P.edges[e];
      if (assigned[a] && assigned[b] && edge_multiple(e) == 0) return false;
    }
    return true;
  }

  void record() {
    RedrawMatch m;
    m.vertex_to_point = image_point;
    m.perturbations.assign(tuple.size(), ExponentVec(P.dim, 0));
    std::int64_t total_sq = 0, total_len = 0;
    for (std::size_t v = 0; v < image_point.size(); ++v) {
      m.perturbations[image_point[v]] = delta[v];
      const auto sq = norm_sq(delta[v]);
      m.max_norm_sq = std::max(m.max_norm_sq, sq);
      total_sq += sq;
    }
    for (std::size_t e = 0; e < P.edges.size(); ++e) {
      const auto [a, b] = P.edges[e];
      const auto mult = edge_multiple(e);
      m.pairing.push_back({P.edges[e], image_point[a], image_point[b], mult});
      total_len += mult;
    }
    m.K = K;
    auto score = std::make_tuple(m.max_norm_sq, total_sq, total_len);
    if (!best || score < best_score) {
      best = std::move(m);
      best_score = score;
    }
  }

  void extend(std::size_t step) {
    if (!closed_edges_ok()) return;
    if (step == order.size()) {
      record();
      return;
    }
    const auto [v, parent, e] = order[step];
    ExponentVec dir = directions[e];
    if (P.edges[e].first == v) {
      for (auto& c : dir) c = -c;
    }
    for (std::size_t t = 0; t < tuple.size(); ++t) {
      if (used[t]) continue;
      for (const auto& off : offsets) {
        ExponentVec y = add_vec(tuple[t], off);
        if (ray_multiple(image[parent], y, dir) == 0) continue;
        used[t] = true;
        assigned[v] = true;
        image[v] = y;
        image_point[v] = t;
        delta[v] = off;
        extend(step + 1);
        used[t] = false;
        assigned[v] = false;
      }
    }
  }
};

inline std::vector<ExponentVec> offsets_within(std::size_t d, std::int64_t K) {
  std::vector<ExponentVec> out;
  ExponentVec x(d, -K);
  for (;;) {
    if (norm_sq(x) <= K * K) out.push_back(x);
    std::size_t i = d;
    while (i-- > 0) {
      if (x[i] < K) {
        ++x[i];
        break;
      }
      x[i] = -K;
    }
    if (i == SIZE_MAX) break;
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return norm_sq(a) < norm_sq(b); });
  return out;
}

inline std::optional<Homothety> homothety_of(const LatticePolytope& P, const RedrawMatch& m,
                                             const std::vector<ExponentVec>& snapped) {
  std::optional<Rational> scale;
  for (std::size_t e = 0; e < P.edges.size(); ++e) {
    const auto [a, b] = P.edges[e];
    const auto len = content(sub_vec(P.vertices[b], P.vertices[a]));
    Rational ratio(m.pairing[e].multiple, len);
    if (scale && *scale != ratio) return std::nullopt;
    scale = ratio;
  }
  Homothety h;
  h.scale = *scale;
  const auto& root = snapped[m.vertex_to_point[0]];
  for (std::size_t i = 0; i < P.dim; ++i) h.translation.push_back(Rational(root[i]) - h.scale * P.vertices[0][i]);
  // Independent confirmation on every vertex.
  for (std::size_t v = 0; v < P.vertices.size(); ++v) {
    const auto& q = snapped[m.vertex_to_point[v]];
    for (std::size_t i = 0; i < P.dim; ++i) {
      if (Rational(q[i]) != h.scale * P.vertices[v][i] + h.translation[i]) return std::nullopt;
    }
  }
  return h;
}

}  // namespace detail

inline std::vector<ExponentVec> apply_perturbations(const std::vector<ExponentVec>& tuple, const RedrawMatch& m) {
  std::vector<ExponentVec> out;
  for (std::size_t i = 0; i < tuple.size(); ++i) out.push_back(add_vec(tuple[i], m.perturbations[i]));
  return out;
}

// Finds, for the least tolerance k ≤ tolerance_K that admits one, an
// assignment of the vertices of N(f) to distinct tuple points, perturbed by
// integer vectors of Euclidean norm ≤ k, under which every edge of N(f) maps
// to a positive multiple of its own direction. Vertices are placed
// breadth-first from vertex 0, which stays unperturbed. Ties are broken by
// largest squared perturbation, then total squared perturbation, then total
// edge multiple, so of two equidistant scales the smaller one wins.
inline std::optional<RedrawMatch> detect_redrawing(const LaurentPoly& f, const std::vector<ExponentVec>& tuple,
                                                   std::int64_t tolerance_K) {
  const auto P = newton_polytope(f);
  if (P.affine_dim < 2 || P.affine_dim > 3) throw DegenerateInput("detector needs N(f) of dimension 2 or 3");
  if (tolerance_K < 0 || tolerance_K > kMaxDetectTolerance) {
    throw std::invalid_argument("tolerance must lie in [0, " + std::to_string(kMaxDetectTolerance) + "]");
  }
  if (tuple.size() < P.vertex_count()) throw std::invalid_argument("tuple has fewer points than N(f) has vertices");
  for (const auto& x : tuple) f.check_exponent(x);

  const std::size_t nv = P.vertex_count();
  std::vector<ExponentVec> directions;
  std::vector<std::int64_t> lengths;
  for (auto [a, b] : P.edges) {
    auto diff = sub_vec(P.vertices[b], P.vertices[a]);
    lengths.push_back(content(diff));
    directions.push_back(make_primitive(diff));
  }
  // Breadth-first spanning tree from vertex 0.
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> order;
  {
    std::vector<bool> seen(nv, false);
    std::queue<std::size_t> q;
    q.push(0);
    seen[0] = true;
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      for (std::size_t e = 0; e < P.edges.size(); ++e) {
        auto [a, b] = P.edges[e];
        std::size_t w = a == u ? b : (b == u ? a : nv);
        if (w == nv || seen[w]) continue;
        seen[w] = true;
        order.emplace_back(w, u, e);
        q.push(w);
      }
    }
  }

  for (std::int64_t K = 0; K <= tolerance_K; ++K) {
    detail::DetectContext ctx{P, tuple, K, directions, lengths, order, detail::offsets_within(P.dim, K)};
    ctx.image_point.assign(nv, 0);
    ctx.image.assign(nv, ExponentVec(P.dim, 0));
    ctx.assigned.assign(nv, false);
    ctx.used.assign(tuple.size(), false);
    ctx.delta.assign(nv, ExponentVec(P.dim, 0));
    for (std::size_t t = 0; t < tuple.size(); ++t) {
      ctx.used[t] = true;
      ctx.assigned[0] = true;
      ctx.image[0] = tuple[t];
      ctx.image_point[0] = t;
      ctx.extend(0);
      ctx.used[t] = false;
      ctx.assigned[0] = false;
    }
    if (ctx.best) {
      auto m = std::move(*ctx.best);
      m.homothety = detail::homothety_of(P, m, apply_perturbations(tuple, m));
      return m;
    }
  }
  return std::nullopt;
}

struct SnapResult {
  bool homothetic = false;
  std::string reason;  // set when not homothetic
  std::vector<ExponentVec> snapped;
  std::optional<Homothety> homothety;
};

// Applies the match's perturbations and checks that the points assigned to
// N(f)'s vertices form λ·N(f) + t exactly.
inline SnapResult snap_to_homothety(const RedrawMatch& match, const LaurentPoly& f,
                                    const std::vector<ExponentVec>& tuple) {
  const auto P = newton_polytope(f);
  if (match.vertex_to_point.size() != P.vertex_count() || match.perturbations.size() != tuple.size()) {
    throw std::invalid_argument("match does not belong to this polynomial and tuple");
  }
  SnapResult out;
  out.snapped = apply_perturbations(tuple, match);
  out.homothety = detail::homothety_of(P, match, out.snapped);
  out.homothetic = out.homothety.has_value();
  if (!out.homothetic) out.reason = "redrawing, not homothety";
  return out;
}

}  // namespace polymix
