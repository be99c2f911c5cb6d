#pragma once

// Newton polytopes N(f) = conv(S(f)) with exact integer predicates.
//
// A support spanning an affine subspace of dimension k < d is first carried
// onto Z^k by a unimodular change of basis, so that faces are computed in
// full dimension. Face structure is built for k ≤ 3; larger k gets vertices
// only, each one certified by an exact LP.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polymix/errors.hpp"
#include "polymix/exact_lp.hpp"
#include "polymix/fp_laurent.hpp"
#include "polymix/intmath.hpp"

namespace polymix {

using EdgeIndex = std::pair<std::size_t, std::size_t>;

struct Facet {
  std::vector<std::size_t> vertices;  // cyclic order inside the facet
  ExponentVec inward_normal;          // primitive, in local coordinates
  std::int64_t offset = 0;            // inward_normal · x ≥ offset on the polytope
};

struct LatticePolytope {
  std::size_t dim = 0;
  int affine_dim = 0;
  std::vector<ExponentVec> vertices;        // ambient coordinates
  std::vector<ExponentVec> local_vertices;  // coordinates in Z^{affine_dim}
  std::vector<EdgeIndex> edges;             // i < j
  std::vector<Facet> facets;                // affine_dim == 3 only
  // Columns mapping a local covector to an ambient one: w_ambient = Σ w_i pullback[i].
  std::vector<ExponentVec> pullback;

  std::size_t vertex_count() const noexcept { return vertices.size(); }

  std::optional<std::size_t> find_edge(std::size_t a, std::size_t b) const {
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if ((edges[i].first == a && edges[i].second == b) || (edges[i].first == b && edges[i].second == a)) {
        return i;
      }
    }
    return std::nullopt;
  }
};

namespace detail {

struct LatticeFrame {
  int rank = 0;
  std::vector<ExponentVec> local;      // per input point
  std::vector<ExponentVec> pullback;   // rank columns of the unimodular transform
};

// Column-echelon reduction of the difference vectors with a tracked
// unimodular transform U: (x - base)·U = (local, 0, ..., 0).
inline LatticeFrame lattice_frame(const std::vector<ExponentVec>& pts) {
  const std::size_t d = pts.front().size();
  const std::size_t n = pts.size();
  std::vector<ExponentVec> D(n);
  for (std::size_t i = 0; i < n; ++i) D[i] = sub_vec(pts[i], pts[0]);
  std::vector<ExponentVec> U(d, ExponentVec(d, 0));
  for (std::size_t i = 0; i < d; ++i) U[i][i] = 1;

  auto col_axpy = [&](std::size_t dst, std::size_t src, std::int64_t q) {
    // column dst -= q * column src
    for (auto& row : D) row[dst] = checked_add(row[dst], -checked_mul(q, row[src]));
    for (auto& row : U) row[dst] = checked_add(row[dst], -checked_mul(q, row[src]));
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    for (auto& row : D) std::swap(row[a], row[b]);
    for (auto& row : U) std::swap(row[a], row[b]);
  };

  std::size_t pivot = 0;
  for (std::size_t r = 0; r < n && pivot < d; ++r) {
    for (;;) {
      std::size_t best = d;
      for (std::size_t c = pivot; c < d; ++c) {
        if (D[r][c] != 0 && (best == d || std::abs(D[r][c]) < std::abs(D[r][best]))) best = c;
      }
      if (best == d) break;
      if (best != pivot) col_swap(best, pivot);
      bool done = true;
      for (std::size_t c = pivot + 1; c < d; ++c) {
        if (D[r][c] != 0) {
          col_axpy(c, pivot, D[r][c] / D[r][pivot]);
          if (D[r][c] != 0) done = false;
        }
      }
      if (done) {
        ++pivot;
        break;
      }
    }
  }

  LatticeFrame frame;
  frame.rank = static_cast<int>(pivot);
  if (pivot == d) {
    frame.local = pts;
    for (std::size_t i = 0; i < d; ++i) {
      ExponentVec e(d, 0);
      e[i] = 1;
      frame.pullback.push_back(e);
    }
    return frame;
  }
  for (std::size_t i = 0; i < n; ++i) frame.local.emplace_back(D[i].begin(), D[i].begin() + pivot);
  for (std::size_t c = 0; c < pivot; ++c) {
    ExponentVec col(d);
    for (std::size_t r = 0; r < d; ++r) col[r] = U[r][c];
    frame.pullback.push_back(col);
  }
  return frame;
}

inline __int128 cross2(const ExponentVec& o, const ExponentVec& a, const ExponentVec& b) {
  return static_cast<__int128>(a[0] - o[0]) * (b[1] - o[1]) - static_cast<__int128>(a[1] - o[1]) * (b[0] - o[0]);
}

// Strict convex hull in the plane (collinear points dropped), counter-clockwise,
// starting at the lexicographically smallest point. Returns indices into pts.
inline std::vector<std::size_t> hull2(const std::vector<ExponentVec>& pts, const std::vector<std::size_t>& idx) {
  std::vector<std::size_t> order(idx);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return pts[a] < pts[b]; });
  order.erase(std::unique(order.begin(), order.end(), [&](auto a, auto b) { return pts[a] == pts[b]; }), order.end());
  if (order.size() < 3) return order;
  std::vector<std::size_t> h(2 * order.size());
  std::size_t k = 0;
  for (auto i : order) {
    while (k >= 2 && cross2(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
    h[k++] = i;
  }
  for (std::size_t t = order.size() - 1, lower = k + 1; t-- > 0;) {
    auto i = order[t];
    while (k >= lower && cross2(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
    h[k++] = i;
  }
  h.resize(k - 1);
  return h;
}

inline ExponentVec cross3(const ExponentVec& a, const ExponentVec& b) {
  return {checked_add(checked_mul(a[1], b[2]), -checked_mul(a[2], b[1])),
          checked_add(checked_mul(a[2], b[0]), -checked_mul(a[0], b[2])),
          checked_add(checked_mul(a[0], b[1]), -checked_mul(a[1], b[0]))};
}

struct Hull3 {
  std::vector<std::size_t> vertex_points;  // indices into the local point list
  std::vector<EdgeIndex> edges;            // indices into vertex_points
  std::vector<Facet> facets;               // vertices index vertex_points
};

// Facet enumeration over all point triples. Cubic in the number of points,
// which is fine for the supports this library targets.
inline Hull3 hull3(const std::vector<ExponentVec>& pts) {
  const std::size_t n = pts.size();
  std::map<std::pair<ExponentVec, std::int64_t>, std::vector<std::size_t>> planes;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t l = j + 1; l < n; ++l) {
        ExponentVec nrm = cross3(sub_vec(pts[j], pts[i]), sub_vec(pts[l], pts[i]));
        if (content(nrm) == 0) continue;
        nrm = make_primitive(nrm);
        const auto off = dot(nrm, pts[i]);
        bool pos = false, neg = false;
        for (const auto& x : pts) {
          auto s = dot(nrm, x) - off;
          pos |= s > 0;
          neg |= s < 0;
        }
        if (pos && neg) continue;
        if (neg) {
          for (auto& c : nrm) c = -c;
        }
        const auto key = std::make_pair(nrm, dot(nrm, pts[i]));
        if (planes.count(key)) continue;
        std::vector<std::size_t> on;
        for (std::size_t t = 0; t < n; ++t) {
          if (dot(nrm, pts[t]) == key.second) on.push_back(t);
        }
        planes.emplace(key, on);
      }
    }
  }

  Hull3 out;
  std::map<std::size_t, std::size_t> vid;  // point index -> vertex index
  std::vector<std::pair<std::vector<std::size_t>, std::pair<ExponentVec, std::int64_t>>> raw;
  for (const auto& [key, on] : planes) {
    // Drop one coordinate along which the facet normal is nonzero; the
    // projection is injective on the facet plane and preserves convexity.
    std::size_t drop = 0;
    while (key.first[drop] == 0) ++drop;
    std::vector<ExponentVec> flat(pts.size());
    for (auto t : on) {
      ExponentVec q;
      for (std::size_t c = 0; c < 3; ++c) {
        if (c != drop) q.push_back(pts[t][c]);
      }
      flat[t] = q;
    }
    raw.emplace_back(hull2(flat, on), key);
  }
  std::set<std::size_t> all;
  for (const auto& [cyc, key] : raw) all.insert(cyc.begin(), cyc.end());
  for (auto t : all) {
    vid[t] = out.vertex_points.size();
    out.vertex_points.push_back(t);
  }
  std::set<EdgeIndex> edges;
  for (const auto& [cyc, key] : raw) {
    Facet f;
    f.inward_normal = key.first;
    f.offset = key.second;
    for (std::size_t t = 0; t < cyc.size(); ++t) {
      f.vertices.push_back(vid[cyc[t]]);
      auto a = vid[cyc[t]], b = vid[cyc[(t + 1) % cyc.size()]];
      edges.insert({std::min(a, b), std::max(a, b)});
    }
    out.facets.push_back(std::move(f));
  }
  out.edges.assign(edges.begin(), edges.end());
  return out;
}

}  // namespace detail

// True iff q is not a convex combination of the other points of S.
inline bool is_vertex(const ExponentVec& q, const SupportSet& S) {
  if (std::find(S.begin(), S.end(), q) == S.end()) {
    throw std::invalid_argument("is_vertex: query point is not in the set");
  }
  std::vector<ExponentVec> others;
  for (const auto& s : S) {
    if (s != q) others.push_back(s);
  }
  if (others.empty()) return true;
  const std::size_t d = q.size();
  // Unknowns: convex weights λ_s. Rows: Σ λ_s s = q, Σ λ_s = 1.
  RationalMatrix A(d + 1, std::vector<Rational>(others.size()));
  std::vector<Rational> b(d + 1);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t s = 0; s < others.size(); ++s) A[i][s] = others[s][i];
    b[i] = q[i];
  }
  for (std::size_t s = 0; s < others.size(); ++s) A[d][s] = 1;
  b[d] = 1;
  return !feasible_point(A, b).has_value();
}

inline LatticePolytope hull(SupportSet S) {
  if (S.empty()) throw std::invalid_argument("hull of an empty set");
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  LatticePolytope P;
  P.dim = S.front().size();

  auto frame = detail::lattice_frame(S);
  P.affine_dim = frame.rank;
  P.pullback = frame.pullback;
  const auto& L = frame.local;

  auto take = [&](const std::vector<std::size_t>& idx) {
    for (auto i : idx) {
      P.vertices.push_back(S[i]);
      P.local_vertices.push_back(L[i]);
    }
  };

  switch (frame.rank) {
    case 0:
      take({0});
      break;
    case 1: {
      std::size_t lo = 0, hi = 0;
      for (std::size_t i = 1; i < S.size(); ++i) {
        if (L[i][0] < L[lo][0]) lo = i;
        if (L[i][0] > L[hi][0]) hi = i;
      }
      take({lo, hi});
      P.edges.push_back({0, 1});
      break;
    }
    case 2: {
      std::vector<std::size_t> all(S.size());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
      auto cyc = detail::hull2(L, all);
      take(cyc);
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        auto a = i, b = (i + 1) % cyc.size();
        P.edges.push_back({std::min(a, b), std::max(a, b)});
      }
      std::sort(P.edges.begin(), P.edges.end());
      break;
    }
    case 3: {
      auto h = detail::hull3(L);
      take(h.vertex_points);
      P.edges = std::move(h.edges);
      P.facets = std::move(h.facets);
      break;
    }
    default: {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < S.size(); ++i) {
        if (is_vertex(L[i], L)) idx.push_back(i);
      }
      take(idx);
      break;
    }
  }
  return P;
}

inline LatticePolytope newton_polytope(const LaurentPoly& f) {
  if (f.is_zero()) throw DegenerateInput("Newton polytope of the zero polynomial");
  return hull(support(f));
}

// Primitive vector orthogonal to the edge whose functional x ↦ x·w is
// maximized over the polytope exactly on that edge.
inline ExponentVec outward_normal(const LatticePolytope& P, EdgeIndex edge) {
  if (P.affine_dim < 2) throw DegenerateInput("outward normals need a polytope of dimension at least 2");
  if (P.affine_dim > 3) throw DegenerateInput("edge structure is only available up to dimension 3");
  auto which = P.find_edge(edge.first, edge.second);
  if (!which) throw std::invalid_argument("no such edge");
  const auto [a, b] = P.edges[*which];
  const auto& A = P.local_vertices[a];
  const auto& B = P.local_vertices[b];
  ExponentVec local;
  if (P.affine_dim == 2) {
    const auto dx = B[0] - A[0], dy = B[1] - A[1];
    local = make_primitive(ExponentVec{dy, -dx});
    for (std::size_t v = 0; v < P.local_vertices.size(); ++v) {
      if (v == a || v == b) continue;
      if (dot(local, sub_vec(P.local_vertices[v], A)) > 0) {
        for (auto& c : local) c = -c;
      }
      break;
    }
  } else {
    local = ExponentVec(3, 0);
    int adjacent = 0;
    for (const auto& f : P.facets) {
      const auto& vs = f.vertices;
      if (std::find(vs.begin(), vs.end(), a) == vs.end() || std::find(vs.begin(), vs.end(), b) == vs.end()) continue;
      local = sub_vec(local, f.inward_normal);
      ++adjacent;
    }
    if (adjacent != 2) throw InternalInconsistency("edge is not shared by exactly two facets");
    local = make_primitive(local);
  }
  ExponentVec w(P.dim, 0);
  for (std::size_t i = 0; i < local.size(); ++i) w = add_vec(w, scale_vec(P.pullback[i], local[i]));
  return make_primitive(w);
}

}  // namespace polymix
