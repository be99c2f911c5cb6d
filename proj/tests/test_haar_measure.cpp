#include <gtest/gtest.h>

#include <cstdlib>
#include <set>

#include "oracles.hpp"
#include "support.hpp"

using namespace polymix;
using namespace testing_support;

namespace {

CylinderSpec cyl(std::vector<ExponentVec> w, std::vector<Scalar> v) { return {std::move(w), std::move(v)}; }

Rational frac(long n, long d) { return Rational(n) / Rational(d); }

std::int64_t log_p(std::uint64_t x, std::uint64_t p) {
  std::int64_t k = 0;
  while (x > 1) {
    EXPECT_EQ(x % p, 0u);
    x /= p;
    ++k;
  }
  return k;
}

}  // namespace

TEST(SolutionSpace, Examples) {
  EXPECT_EQ(solution_space(ledrappier(), Box{{0, 0}, {1, 1}}).dimension, 3u);
  EXPECT_EQ(solution_space(ledrappier(), Box{{0, 0}, {0, 0}}).dimension, 1u);
  const auto chain = make_poly(FieldSpec(2), 1, {{{0}, 1}, {{1}, 1}});
  EXPECT_EQ(solution_space(chain, Box{{0}, {3}}).dimension, 1u);
}

TEST(SolutionSpace, BasisVectorsSatisfyEveryRelation) {
  for (const auto& f : fixtures()) {
    const Box box{{-2, -1}, {3, 4}};
    const auto s = solution_space(f, box);
    EXPECT_EQ(s.basis.size(), s.dimension);
    for (const auto& v : s.basis) {
      detail::for_each_constraint(f, box, [&](const ExponentVec& m) {
        Scalar t = 0;
        for (const auto& [e, c] : f.terms()) t = f.field().add(t, f.field().mul(c, v[box.index(add_vec(m, e))]));
        EXPECT_EQ(t, 0u);
      });
    }
  }
}

TEST(CylinderMeasure, Examples) {
  const auto f = ledrappier();
  EXPECT_EQ(cylinder_measure(f, cyl({{0, 0}}, {0})).value(), frac(1, 2));
  EXPECT_EQ(cylinder_measure(f, cyl({{0, 0}, {1, 0}, {0, 1}}, {0, 0, 0})).value(), frac(1, 4));
  const auto z = cylinder_measure(f, cyl({{0, 0}, {1, 0}, {0, 1}}, {1, 0, 0}));
  EXPECT_TRUE(z.zero);
  EXPECT_EQ(z.value(), 0);
}

TEST(CylinderMeasure, StabilizationHistory) {
  const auto m = cylinder_measure(ledrappier(), cyl({{0, 0}, {3, 0}}, {1, 1}));
  EXPECT_TRUE(m.stabilized);
  ASSERT_GE(m.dimension_history.size(), 3u);
  const auto& h = m.dimension_history;
  for (std::size_t i = 1; i < h.size(); ++i) EXPECT_LE(h[i], h[i - 1]);
  EXPECT_EQ(m.value(), frac(1, 4));
}

TEST(CylinderMeasure, SquareFixtureOverF3) {
  const auto f = square_f3();
  EXPECT_EQ(cylinder_measure(f, cyl({{0, 0}}, {2})).value(), frac(1, 3));
  EXPECT_EQ(cylinder_measure(f, cyl({{0, 0}, {1, 0}, {0, 1}}, {0, 1, 2})).value(), frac(1, 27));
  // x(1,1) is forced by the other three corners.
  EXPECT_EQ(cylinder_measure(f, cyl({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {0, 0, 0, 0})).value(), frac(1, 27));
  EXPECT_TRUE(cylinder_measure(f, cyl({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {0, 0, 0, 1})).zero);
}

TEST(CylinderMeasure, ThreeDimensional) {
  const auto f = make_poly(FieldSpec(2), 3, {{{0, 0, 0}, 1}, {{1, 0, 0}, 1}, {{0, 1, 0}, 1}, {{0, 0, 1}, 1}});
  EXPECT_EQ(cylinder_measure(f, cyl({{0, 0, 0}}, {1})).value(), frac(1, 2));
  EXPECT_EQ(cylinder_measure(f, cyl({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {1, 1, 1, 1})).value(), frac(1, 8));
}

TEST(CylinderMeasure, Errors) {
  EXPECT_THROW(cylinder_measure(make_poly(FieldSpec(2), 2, {{{1, 0}, 1}}), cyl({{0, 0}}, {0})), DegenerateInput);
  EXPECT_THROW(cylinder_measure(ledrappier(), cyl({{0, 0}, {0, 0}}, {0, 0})), std::invalid_argument);
  EXPECT_THROW(cylinder_measure(ledrappier(), cyl({{0, 0, 0}}, {0})), std::invalid_argument);
  EXPECT_THROW(cylinder_measure(ledrappier(), cyl({}, {})), std::invalid_argument);
  MeasureOptions small;
  small.cell_budget = 20;
  EXPECT_THROW(cylinder_measure(ledrappier(), cyl({{0, 0}, {9, 9}}, {0, 0}), small), BudgetExceeded);
}

TEST(CylinderMeasure, BudgetReachedBeforeStabilizationIsReported) {
  MeasureOptions opt;
  opt.cell_budget = 16;
  const auto m = cylinder_measure(ledrappier(), cyl({{0, 0}}, {0}), opt);
  EXPECT_FALSE(m.stabilized);
}

TEST(CylinderMeasure, EnvironmentBudgetOverride) {
  setenv("POLYMIX_BUDGET", "30", 1);
  MeasureOptions opt;
  unsetenv("POLYMIX_BUDGET");
  EXPECT_EQ(opt.cell_budget, 30u);
  EXPECT_THROW(cylinder_measure(ledrappier(), cyl({{0, 0}, {5, 5}}, {0, 0}), opt), BudgetExceeded);
}

TEST(JointMeasure, Examples) {
  const auto f = ledrappier();
  const auto A = cyl({{0, 0}}, {0});
  EXPECT_EQ(joint_measure(f, {{{0, 0}, A}, {{2, 0}, A}, {{0, 2}, A}}).value(), frac(1, 4));
  EXPECT_EQ(joint_measure(f, {{{0, 0}, A}, {{5, 0}, A}}).value(), frac(1, 4));
  const auto B = cyl({{0, 0}}, {1});
  EXPECT_EQ(joint_measure(f, {{{0, 0}, A}, {{0, 0}, B}}).value(), 0);
  EXPECT_THROW(joint_measure(f, {}), std::invalid_argument);
}

TEST(MixingExperiment, Examples) {
  const auto f = ledrappier();
  const auto A = cyl({{0, 0}}, {0});
  for (const auto& row : mixing_experiment(f, {{0, 0}, {1, 0}, {0, 1}}, {A, A, A}, {2, 4, 8})) {
    ASSERT_TRUE(row.available);
    EXPECT_EQ(row.joint, frac(1, 4));
    EXPECT_EQ(row.product, frac(1, 8));
    EXPECT_EQ(row.gap, frac(1, 8));
  }
  for (const auto& row : mixing_experiment(f, {{0, 0}, {1, 0}}, {A, A}, {2, 3, 4, 5, 6})) {
    ASSERT_TRUE(row.available);
    EXPECT_EQ(row.gap, 0);
  }
  for (const auto& row : mixing_experiment(f, {{0, 0}}, {A}, {1, 7})) EXPECT_EQ(row.gap, 0);
}

TEST(MixingExperiment, DilationsBeyondBudgetAreMarkedUnavailable) {
  MeasureOptions opt;
  opt.cell_budget = 100;
  const auto A = cyl({{0, 0}}, {0});
  const auto rows = mixing_experiment(ledrappier(), {{0, 0}, {1, 0}, {0, 1}}, {A, A, A}, {2, 64}, opt);
  EXPECT_TRUE(rows[0].available);
  EXPECT_FALSE(rows[1].available);
  EXPECT_FALSE(rows[1].note.empty());
}

TEST(BruteForce, Examples) {
  const auto b = brute_force_measure(ledrappier(), cyl({{0, 0}}, {0}), Box{{0, 0}, {1, 1}});
  EXPECT_EQ(b.solutions, 8u);
  EXPECT_EQ(b.matching, 4u);
  EXPECT_EQ(b.measure.value(), frac(1, 2));
  const auto chain = make_poly(FieldSpec(2), 1, {{{0}, 1}, {{1}, 1}});
  const auto c = brute_force_measure(chain, cyl({{0}}, {1}), Box{{0}, {2}});
  EXPECT_EQ(c.solutions, 2u);
  EXPECT_EQ(c.matching, 1u);
  EXPECT_EQ(c.measure.value(), frac(1, 2));
  const auto z = brute_force_measure(ledrappier(), cyl({{0, 0}, {1, 0}, {0, 1}}, {1, 0, 0}), Box{{0, 0}, {1, 1}});
  EXPECT_EQ(z.matching, 0u);
  EXPECT_EQ(z.measure.value(), 0);
}

// Rank-based dimensions on a box against full enumeration of that box.
TEST(OracleEquivalence, RandomCylindersOnSmallBoxes) {
  std::mt19937_64 rng(51);
  int compared = 0;
  for (int trial = 0; trial < 45; ++trial) {
    const auto f = fixtures()[static_cast<std::size_t>(trial % 3)];
    const auto& F = f.field();
    const std::int64_t w = uniform(rng, 1, 4), h = uniform(rng, 1, 16 / w);
    const auto lo = random_vec(rng, 2, -5, 5);
    const Box box{lo, {lo[0] + w - 1, lo[1] + h - 1}};
    const auto cells = box_cells(box);
    if (F.p() == 3 && cells.size() > 12) continue;  // 3^16 is past desk scale
    std::set<ExponentVec> wset;
    const auto wsize = uniform(rng, 1, std::min<std::int64_t>(3, static_cast<std::int64_t>(cells.size())));
    while (static_cast<std::int64_t>(wset.size()) < wsize) wset.insert(cells[uniform(rng, 0, cells.size() - 1)]);
    CylinderSpec c;
    c.window.assign(wset.begin(), wset.end());
    for (std::size_t i = 0; i < c.window.size(); ++i) c.values.push_back(uniform(rng, 0, F.p() - 1));

    const auto oracle = enumerate(f, cells, c.window);
    EXPECT_EQ(static_cast<std::int64_t>(solution_space(f, box).dimension), log_p(oracle.solutions, F.p()));
    const auto proj = project_to_window(f, box, c);
    EXPECT_EQ(static_cast<std::int64_t>(proj.dimension), log_p(oracle.patterns.size(), F.p()));
    EXPECT_EQ(proj.contains_assignment, oracle.patterns.count(c.values) == 1);
    const auto bf = brute_force_measure(f, c, box);
    EXPECT_EQ(bf.solutions, oracle.solutions);
    ++compared;
  }
  EXPECT_GE(compared, 20);
}

// Summing over every assignment of a window gives 1, and translates agree.
TEST(MeasureProperties, NormalizationOverWindows) {
  std::mt19937_64 rng(52);
  for (const auto& f : fixtures()) {
    const auto p = f.field().p();
    for (int trial = 0; trial < 4; ++trial) {
      std::set<ExponentVec> wset;
      const auto wsize = uniform(rng, 1, p == 2 ? 4 : 3);
      while (static_cast<std::int64_t>(wset.size()) < wsize) wset.insert(random_vec(rng, 2, -2, 2));
      std::vector<ExponentVec> window(wset.begin(), wset.end());
      Rational total = 0;
      std::vector<Scalar> values(window.size(), 0);
      for (;;) {
        total += cylinder_measure(f, cyl(window, values)).value();
        std::size_t i = 0;
        while (i < values.size() && ++values[i] == p) values[i++] = 0;
        if (i == values.size()) break;
      }
      EXPECT_EQ(total, 1) << f.to_string();
    }
  }
}

TEST(MeasureProperties, TranslationInvariance) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = fixtures()[static_cast<std::size_t>(trial % 3)];
    std::set<ExponentVec> wset;
    const auto wsize = uniform(rng, 1, 4);
    while (static_cast<std::int64_t>(wset.size()) < wsize) wset.insert(random_vec(rng, 2, -2, 2));
    CylinderSpec c;
    c.window.assign(wset.begin(), wset.end());
    for (std::size_t i = 0; i < c.window.size(); ++i) c.values.push_back(uniform(rng, 0, f.field().p() - 1));
    const auto t = random_vec(rng, 2, -1000, 1000);
    CylinderSpec moved = c;
    for (auto& x : moved.window) x = add_vec(x, t);
    const auto a = cylinder_measure(f, c), b = cylinder_measure(f, moved);
    EXPECT_EQ(a.value(), b.value());
    EXPECT_EQ(a.dimension_history, b.dimension_history);
  }
}

TEST(MeasureProperties, ValuesArePowersOfP) {
  std::mt19937_64 rng(54);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = fixtures()[static_cast<std::size_t>(trial % 3)];
    CylinderSpec c;
    std::set<ExponentVec> wset;
    while (wset.size() < 3) wset.insert(random_vec(rng, 2, -3, 3));
    c.window.assign(wset.begin(), wset.end());
    for (std::size_t i = 0; i < 3; ++i) c.values.push_back(uniform(rng, 0, f.field().p() - 1));
    const auto m = cylinder_measure(f, c);
    if (m.zero) continue;
    EXPECT_LE(m.exponent, 3);
    Rational expected = 1;
    for (std::int64_t i = 0; i < m.exponent; ++i) expected /= static_cast<long>(f.field().p());
    EXPECT_EQ(m.value(), expected);
  }
}

TEST(MeasureProperties, LargerStartingBoxAgrees) {
  const auto f = quadratic_f2();
  const auto c = cyl({{0, 0}, {2, 1}, {-1, 3}}, {1, 0, 1});
  MeasureOptions wide;
  wide.initial_margin = 7;
  EXPECT_EQ(cylinder_measure(f, c).value(), cylinder_measure(f, c, wide).value());
}
