#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace polymix;
using namespace testing_support;

namespace {

Skeleton<Rational> skeleton(std::size_t dim, const std::vector<ExponentVec>& pts, std::vector<EdgeIndex> edges) {
  Skeleton<Rational> S;
  S.dim = dim;
  for (const auto& p : pts) {
    std::vector<Rational> row;
    for (auto x : p) row.emplace_back(x);
    S.positions.push_back(row);
  }
  S.edges = std::move(edges);
  return S;
}

Skeleton<Rational> fixture_skeleton(const std::string& name) {
  return std::get<Skeleton<Rational>>(json_io::parse_skeleton(load_json(name)));
}

// Oracle: unknowns (q, μ) with q_t - q_s = μ_e (p_t - p_s); the redraw
// dimension is the nullity of that system, since μ is determined by q.
// Rank is taken modulo a large prime, which matches the rational rank for
// the small integer inputs used here.
int oracle_dimension(const std::vector<ExponentVec>& pts, const std::vector<EdgeIndex>& edges, std::size_t d) {
  constexpr std::int64_t P = 1'000'000'007;
  const std::size_t n = pts.size(), m = edges.size(), cols = n * d + m;
  std::vector<std::vector<std::int64_t>> A;
  for (std::size_t e = 0; e < m; ++e) {
    auto [s, t] = edges[e];
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<std::int64_t> row(cols, 0);
      row[t * d + i] = 1;
      row[s * d + i] = P - 1;
      row[n * d + e] = ((pts[s][i] - pts[t][i]) % P + P) % P;
      A.push_back(row);
    }
  }
  auto mulmod = [](std::int64_t a, std::int64_t b) { return static_cast<std::int64_t>((__int128)a * b % P); };
  auto inv = [&](std::int64_t a) {
    std::int64_t r = 1, e = P - 2;
    while (e) {
      if (e & 1) r = mulmod(r, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return r;
  };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < A.size(); ++c) {
    std::size_t piv = rank;
    while (piv < A.size() && A[piv][c] == 0) ++piv;
    if (piv == A.size()) continue;
    std::swap(A[piv], A[rank]);
    const auto iv = inv(A[rank][c]);
    for (std::size_t r = 0; r < A.size(); ++r) {
      if (r == rank || A[r][c] == 0) continue;
      const auto f = mulmod(A[r][c], iv);
      for (std::size_t j = c; j < cols; ++j) A[r][j] = ((A[r][j] - mulmod(f, A[rank][j])) % P + P) % P;
    }
    ++rank;
  }
  return static_cast<int>(cols - rank);
}

std::vector<ExponentVec> random_points(std::mt19937_64& rng, std::size_t d, std::size_t n, std::int64_t r) {
  std::set<ExponentVec> pts;
  while (pts.size() < n) pts.insert(random_vec(rng, d, -r, r));
  return {pts.begin(), pts.end()};
}

}  // namespace

TEST(RedrawSpace, Examples) {
  EXPECT_EQ(redraw_space(fixture_skeleton("triangle.json")).dimension, 3);
  EXPECT_TRUE(is_tight(fixture_skeleton("triangle.json")));
  EXPECT_EQ(redraw_space(fixture_skeleton("square.json")).dimension, 4);
  EXPECT_FALSE(is_tight(fixture_skeleton("square.json")));
  EXPECT_EQ(redraw_space(fixture_skeleton("cube.json")).dimension, 6);
  EXPECT_FALSE(is_tight(fixture_skeleton("cube.json")));
  EXPECT_TRUE(is_tight(fixture_skeleton("tetrahedron.json")));
  EXPECT_TRUE(is_tight(fixture_skeleton("octahedron.json")));
  EXPECT_EQ(redraw_space(fixture_skeleton("octahedron.json")).dimension, 4);
}

TEST(RedrawSpace, IcosahedronApproximatePath) {
  const auto S = json_io::parse_skeleton(load_json("icosahedron.json"));
  ASSERT_TRUE(std::holds_alternative<Skeleton<double>>(S));
  const auto r = redraw_space(std::get<Skeleton<double>>(S), 1e-9);
  EXPECT_EQ(r.arithmetic, Arithmetic::approximate);
  EXPECT_EQ(r.dimension, 4);
  EXPECT_TRUE(r.tight);
}

TEST(RedrawSpace, RationalCoordinates) {
  const auto j = json_io::Json::parse(R"({"dim":2,"vertices":[[0,0],["1/2",0],[0,"1/3"]],"edges":[[0,1],[1,2],[2,0]]})");
  const auto S = json_io::parse_skeleton(j);
  ASSERT_TRUE(std::holds_alternative<Skeleton<Rational>>(S));
  EXPECT_EQ(redraw_space(std::get<Skeleton<Rational>>(S)).dimension, 3);
}

TEST(RedrawSpace, RejectsMalformedSkeletons) {
  auto S = skeleton(2, {{0, 0}, {1, 0}}, {{0, 2}});
  EXPECT_THROW(redraw_space(S), std::invalid_argument);
  S = skeleton(2, {{0, 0}, {0, 0}}, {{0, 1}});
  EXPECT_THROW(redraw_space(S), std::invalid_argument);
  S = skeleton(4, {{0, 0, 0, 0}, {1, 0, 0, 0}}, {{0, 1}});
  EXPECT_THROW(redraw_space(S), std::invalid_argument);
  EXPECT_THROW(json_io::parse_skeleton(json_io::Json::parse(R"({"dim":2,"vertices":[[0,0]],"edges":[[0,1]]})")),
               ParseError);
}

TEST(RedrawSpace, Segment) {
  EXPECT_EQ(redraw_space(skeleton(1, {{0}, {3}}, {{0, 1}})).dimension, 2);
  EXPECT_TRUE(is_tight(skeleton(1, {{0}, {3}}, {{0, 1}})));
}

// Random lattice polytopes: redraw dimension ≥ d+1, homotheties lie in the
// kernel, the count agrees with the edge-multiplier oracle and with the
// floating-point path.
TEST(RedrawSpace, RandomPolytopes) {
  std::mt19937_64 rng(41);
  int checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t d = trial % 2 ? 3 : 2;
    const auto P = hull(random_points(rng, d, static_cast<std::size_t>(uniform(rng, d + 1, 10)), 3));
    if (P.affine_dim != static_cast<int>(d)) continue;
    const auto S = skeleton(d, P.vertices, P.edges);
    const auto r = redraw_space(S);
    EXPECT_GE(r.dimension, static_cast<int>(d) + 1);
    const auto M = constraint_matrix(S);
    for (const auto& h : homothety_basis(S)) {
      for (const auto& row : M) {
        Rational s = 0;
        for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * h[j];
        EXPECT_EQ(s, 0);
      }
    }
    EXPECT_EQ(r.dimension, oracle_dimension(P.vertices, P.edges, d));
    EXPECT_EQ(redraw_space(to_double(S)).dimension, r.dimension);
    ++checked;
  }
  EXPECT_GE(checked, 40);
}

// Invertible linear maps preserve parallelism, hence the redraw dimension.
TEST(RedrawSpace, InvariantUnderLinearMaps) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    const auto P = hull(random_points(rng, 3, 8, 3));
    if (P.affine_dim != 3) continue;
    std::vector<ExponentVec> A;
    do {
      A = {random_vec(rng, 3, -2, 2), random_vec(rng, 3, -2, 2), random_vec(rng, 3, -2, 2)};
    } while (determinant(A) == 0);
    std::vector<ExponentVec> image;
    for (const auto& v : P.vertices) image.push_back({dot(A[0], v), dot(A[1], v), dot(A[2], v)});
    EXPECT_EQ(redraw_space(skeleton(3, P.vertices, P.edges)).dimension,
              redraw_space(skeleton(3, image, P.edges)).dimension);
  }
}

// Polygons: only triangles are tight; an n-gon has 2n - n = n free parameters.
TEST(RedrawSpace, PolygonsHaveDimensionN) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const auto P = hull(random_points(rng, 2, 9, 5));
    if (P.affine_dim != 2) continue;
    const auto r = redraw_space(skeleton(2, P.vertices, P.edges));
    EXPECT_EQ(r.dimension, static_cast<int>(P.vertex_count()));
    EXPECT_EQ(r.tight, P.vertex_count() == 3);
  }
}

TEST(RedrawSpace, LatticeFrameOfDegeneratePolytope) {
  // A triangle lying in a plane of Z^3 is still a triangle.
  const auto P = hull({{0, 0, 0}, {1, 1, 1}, {2, -1, 0}});
  EXPECT_EQ(P.affine_dim, 2);
  EXPECT_TRUE(is_tight(skeleton_of(P)));
}
