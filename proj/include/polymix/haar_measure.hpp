#pragma once

// Exact Haar measure of cylinder events in
//   X_f = { x : Z^d → F_p  |  Σ_n c_{f,n} x(m + n) = 0 for all m }.
//
// Restricting Haar measure to a finite window W pushes it forward to the
// uniform measure on the image V_W of X_f, a linear subspace of F_p^W. So a
// cylinder has measure p^{-dim V_W} when its assignment lies in V_W, else 0.
// V_W is approximated from above by projecting the solutions on a finite box
// around W; the projected dimension can only drop as the box grows.
//
// Action convention: (α^n x)(m) = x(m + n), hence α^{-n}(cylinder on W) is
// the cylinder on W + n with the same values.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polymix/config.hpp"
#include "polymix/errors.hpp"
#include "polymix/fp_laurent.hpp"
#include "polymix/gfp_echelon.hpp"
#include "polymix/rational.hpp"

namespace polymix {

struct CylinderSpec {
  std::vector<ExponentVec> window;
  std::vector<Scalar> values;
};

struct MeasureResult {
  bool zero = false;
  std::uint64_t p = 2;
  std::int64_t exponent = 0;  // value = p^{-exponent} unless zero
  std::int64_t box_margin_used = 0;
  bool stabilized = false;
  std::vector<std::int64_t> dimension_history;

  Rational value() const {
    if (zero) return Rational(0);
    return Rational(BigInt(1), boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(exponent)));
  }
};

inline constexpr std::size_t kDefaultCellBudget = 10'000;
inline constexpr std::uint64_t kEnumerationBudget = std::uint64_t{1} << 22;

struct MeasureOptions {
  std::size_t cell_budget = budget_from_env(kDefaultCellBudget);
  std::optional<std::int64_t> initial_margin;  // default: ℓ∞ diameter of S(f)
};

// Axis-aligned integer box, both ends inclusive.
struct Box {
  ExponentVec lo, hi;

  std::size_t dim() const noexcept { return lo.size(); }

  // Cell count, or nullopt when it exceeds the limit.
  std::optional<std::size_t> cells(std::size_t limit) const {
    std::size_t n = 1;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (hi[i] < lo[i]) return 0;
      const auto len = static_cast<std::size_t>(hi[i] - lo[i] + 1);
      if (len > limit || n > limit / len) return std::nullopt;
      n *= len;
    }
    return n;
  }

  bool contains(const ExponentVec& x) const {
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x[i] < lo[i] || x[i] > hi[i]) return false;
    }
    return true;
  }

  // First coordinate varies fastest.
  std::size_t index(const ExponentVec& x) const {
    std::size_t idx = 0, stride = 1;
    for (std::size_t i = 0; i < dim(); ++i) {
      idx += static_cast<std::size_t>(x[i] - lo[i]) * stride;
      stride *= static_cast<std::size_t>(hi[i] - lo[i] + 1);
    }
    return idx;
  }

  ExponentVec point(std::size_t idx) const {
    ExponentVec x(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      const auto len = static_cast<std::size_t>(hi[i] - lo[i] + 1);
      x[i] = lo[i] + static_cast<std::int64_t>(idx % len);
      idx /= len;
    }
    return x;
  }
};

namespace detail {

inline void require_dynamics(const LaurentPoly& f) {
  if (f.is_zero() || f.is_monomial()) throw DegenerateInput("trivial quotient: modulus is zero or a monomial");
}

// Calls fn(m) for every m with m + S(f) ⊆ box, in increasing linear order.
template <class Fn>
void for_each_constraint(const LaurentPoly& f, const Box& box, Fn&& fn) {
  const std::size_t d = box.dim();
  ExponentVec smin(d), smax(d);
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    for (std::size_t i = 0; i < d; ++i) {
      smin[i] = first ? e[i] : std::min(smin[i], e[i]);
      smax[i] = first ? e[i] : std::max(smax[i], e[i]);
    }
    first = false;
  }
  Box anchors{sub_vec(box.lo, smin), sub_vec(box.hi, smax)};
  auto count = anchors.cells(SIZE_MAX);
  if (!count || *count == 0) return;
  for (std::size_t k = 0; k < *count; ++k) fn(anchors.point(k));
}

inline SparseRow constraint_row(const LaurentPoly& f, const Box& box, const ExponentVec& m) {
  SparseRow row;
  row.reserve(f.size());
  for (const auto& [e, c] : f.terms()) row.emplace_back(box.index(add_vec(m, e)), c);
  std::sort(row.begin(), row.end());
  return row;
}

inline void validate_cylinder(const CylinderSpec& cyl, std::size_t dim) {
  if (cyl.window.empty()) throw std::invalid_argument("cylinder window is empty");
  if (cyl.window.size() != cyl.values.size()) throw std::invalid_argument("cylinder window and values differ in length");
  for (const auto& w : cyl.window) {
    if (w.size() != dim) throw std::invalid_argument("cylinder point has the wrong dimension");
  }
  std::vector<ExponentVec> sorted = cyl.window;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("cylinder window repeats a point");
  }
}

inline std::int64_t support_diameter(const LaurentPoly& f) {
  std::int64_t diam = 0;
  for (std::size_t i = 0; i < f.dim(); ++i) {
    std::int64_t lo = INT64_MAX, hi = INT64_MIN;
    for (const auto& [e, c] : f.terms()) {
      lo = std::min(lo, e[i]);
      hi = std::max(hi, e[i]);
    }
    diam = std::max(diam, hi - lo);
  }
  return diam;
}

inline Box bounding_box(const std::vector<ExponentVec>& pts, std::int64_t margin) {
  Box b{pts.front(), pts.front()};
  for (const auto& x : pts) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      b.lo[i] = std::min(b.lo[i], x[i]);
      b.hi[i] = std::max(b.hi[i], x[i]);
    }
  }
  for (std::size_t i = 0; i < b.dim(); ++i) {
    b.lo[i] = checked_add(b.lo[i], -margin);
    b.hi[i] = checked_add(b.hi[i], margin);
  }
  return b;
}

}  // namespace detail

struct SolutionSpace {
  Box box;
  std::size_t dimension = 0;
  std::vector<std::vector<Scalar>> basis;  // vectors over box cells (Box::index order)
};

inline SolutionSpace solution_space(const LaurentPoly& f, const Box& box,
                                    std::size_t cell_budget = budget_from_env(kDefaultCellBudget)) {
  detail::require_dynamics(f);
  if (box.dim() != f.dim() || box.hi.size() != f.dim()) throw std::invalid_argument("box dimension mismatch");
  auto n = box.cells(cell_budget);
  if (!n) throw BudgetExceeded("box exceeds the cell budget of " + std::to_string(cell_budget));
  if (*n == 0) throw std::invalid_argument("box is empty");
  return with_echelon(f.field(), *n, [&](auto& ech) {
    detail::for_each_constraint(f, box, [&](const ExponentVec& m) { ech.insert(detail::constraint_row(f, box, m)); });
    SolutionSpace s{box, *n - ech.rank(), ech.nullspace()};
    return s;
  });
}

struct WindowProjection {
  std::size_t dimension = 0;  // dim of V_W on this box
  bool contains_assignment = true;
};

// Projection of the box solution space onto the window, and whether the
// assignment lies in it. Uses dim V_W = |W| - rank C + rank C_{-W}, where
// C_{-W} is the constraint matrix with the window columns removed.
inline WindowProjection project_to_window(const LaurentPoly& f, const Box& box, const CylinderSpec& cyl) {
  const auto n = *box.cells(SIZE_MAX);
  std::vector<int> window_slot(n, -1);
  for (std::size_t i = 0; i < cyl.window.size(); ++i) {
    window_slot[box.index(cyl.window[i])] = static_cast<int>(i);
  }
  const auto& F = f.field();
  std::size_t rank_all = 0, rank_rest = 0;
  bool consistent = true;
  with_echelon(F, n, [&](auto& all) {
    detail::for_each_constraint(f, box, [&](const ExponentVec& m) { all.insert(detail::constraint_row(f, box, m)); });
    rank_all = all.rank();
    return 0;
  });
  with_echelon(F, n, [&](auto& rest) {
    detail::for_each_constraint(f, box, [&](const ExponentVec& m) {
      SparseRow row;
      Scalar rhs = 0;
      for (const auto& [idx, c] : detail::constraint_row(f, box, m)) {
        if (int slot = window_slot[idx]; slot >= 0) {
          rhs = F.sub(rhs, F.mul(c, cyl.values[slot] % F.p()));
        } else {
          row.emplace_back(idx, c);
        }
      }
      rest.insert(row, rhs);
    });
    rank_rest = rest.rank();
    consistent = rest.consistent();
    return 0;
  });
  return {cyl.window.size() - rank_all + rank_rest, consistent};
}

inline MeasureResult cylinder_measure(const LaurentPoly& f, const CylinderSpec& cyl, const MeasureOptions& opt = {}) {
  detail::require_dynamics(f);
  detail::validate_cylinder(cyl, f.dim());
  MeasureResult out;
  out.p = f.field().p();
  std::int64_t margin = opt.initial_margin.value_or(detail::support_diameter(f));
  for (;; ++margin) {
    Box box = detail::bounding_box(cyl.window, margin);
    if (!box.cells(opt.cell_budget)) {
      if (out.dimension_history.empty()) {
        throw BudgetExceeded("window box exceeds the cell budget of " + std::to_string(opt.cell_budget));
      }
      out.stabilized = false;
      return out;
    }
    auto proj = project_to_window(f, box, cyl);
    const auto dim = static_cast<std::int64_t>(proj.dimension);
    if (!out.dimension_history.empty() && dim > out.dimension_history.back()) {
      throw InternalInconsistency("projected dimension increased as the box grew");
    }
    out.dimension_history.push_back(dim);
    out.box_margin_used = margin;
    out.exponent = dim;
    if (!proj.contains_assignment) {
      // Excluded on a finite box means excluded from X_f: the value is final.
      out.zero = true;
      out.stabilized = true;
      return out;
    }
    const auto& h = out.dimension_history;
    if (h.size() >= 3 && h[h.size() - 1] == h[h.size() - 2] && h[h.size() - 2] == h[h.size() - 3]) {
      out.stabilized = true;
      return out;
    }
  }
}

// The event α^{-n_1}A_1 ∩ ... ∩ α^{-n_r}A_r as one cylinder, or nullopt when
// two events prescribe different values on a common cell.
inline std::optional<CylinderSpec> merge_events(const std::vector<std::pair<ExponentVec, CylinderSpec>>& events,
                                                FieldSpec F) {
  std::map<ExponentVec, Scalar> cells;
  for (const auto& [shift, cyl] : events) {
    if (cyl.window.size() != cyl.values.size()) throw std::invalid_argument("cylinder window and values differ in length");
    for (std::size_t i = 0; i < cyl.window.size(); ++i) {
      const Scalar v = cyl.values[i] % F.p();
      auto [it, inserted] = cells.emplace(add_vec(cyl.window[i], shift), v);
      if (!inserted && it->second != v) return std::nullopt;
    }
  }
  CylinderSpec merged;
  for (const auto& [x, v] : cells) {
    merged.window.push_back(x);
    merged.values.push_back(v);
  }
  return merged;
}

inline MeasureResult joint_measure(const LaurentPoly& f, const std::vector<std::pair<ExponentVec, CylinderSpec>>& events,
                                   const MeasureOptions& opt = {}) {
  detail::require_dynamics(f);
  if (events.empty()) throw std::invalid_argument("joint measure of no events");
  auto merged = merge_events(events, f.field());
  if (!merged) {
    MeasureResult empty;
    empty.p = f.field().p();
    empty.zero = true;
    empty.stabilized = true;
    return empty;
  }
  return cylinder_measure(f, *merged, opt);
}

struct ExperimentRow {
  std::int64_t index = 0;  // k for shapes, j for explicit tuples
  bool available = false;
  std::string note;
  Rational joint, product, gap;
};

// Joint measure of the events α^{-n_i}A_i against Π μ(A_i) for each tuple.
inline std::vector<ExperimentRow> mixing_experiment_tuples(
    const LaurentPoly& f, const std::vector<std::pair<std::int64_t, std::vector<ExponentVec>>>& tuples,
    const std::vector<CylinderSpec>& cylinders, const MeasureOptions& opt = {}) {
  detail::require_dynamics(f);
  Rational product = 1;
  for (const auto& c : cylinders) product *= cylinder_measure(f, c, opt).value();
  std::vector<ExperimentRow> rows;
  for (const auto& [index, tuple] : tuples) {
    if (tuple.size() != cylinders.size()) throw std::invalid_argument("tuple and cylinder counts differ");
    ExperimentRow row;
    row.index = index;
    row.product = product;
    std::vector<std::pair<ExponentVec, CylinderSpec>> events;
    for (std::size_t i = 0; i < tuple.size(); ++i) events.emplace_back(tuple[i], cylinders[i]);
    try {
      auto m = joint_measure(f, events, opt);
      row.joint = m.value();
      row.gap = row.joint - row.product;
      row.available = true;
      if (!m.stabilized) row.note = "budget reached before stabilization";
    } catch (const BudgetExceeded& e) {
      row.note = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// Dilations k·shape for each k.
inline std::vector<ExperimentRow> mixing_experiment(const LaurentPoly& f, const std::vector<ExponentVec>& shape,
                                                    const std::vector<CylinderSpec>& cylinders,
                                                    const std::vector<std::int64_t>& ks,
                                                    const MeasureOptions& opt = {}) {
  std::vector<std::pair<std::int64_t, std::vector<ExponentVec>>> tuples;
  for (auto k : ks) {
    std::vector<ExponentVec> t;
    for (const auto& n : shape) t.push_back(scale_vec(n, k));
    tuples.emplace_back(k, std::move(t));
  }
  return mixing_experiment_tuples(f, tuples, cylinders, opt);
}

struct BruteForceCount {
  std::uint64_t solutions = 0;  // configurations on the box satisfying every contained constraint
  std::uint64_t matching = 0;   // those that also match the assignment
  MeasureResult measure;        // matching / solutions
};

// Enumerates all p^{cells} configurations of the box. Test oracle only.
inline BruteForceCount brute_force_measure(const LaurentPoly& f, const CylinderSpec& cyl, const Box& box,
                                           std::uint64_t budget = kEnumerationBudget) {
  detail::require_dynamics(f);
  detail::validate_cylinder(cyl, f.dim());
  const auto& F = f.field();
  const auto n = box.cells(64);
  if (!n) throw BudgetExceeded("box too large to enumerate");
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < *n; ++i) {
    if (total > budget / F.p()) throw BudgetExceeded("enumeration exceeds the budget");
    total *= F.p();
  }
  for (const auto& w : cyl.window) {
    if (!box.contains(w)) throw std::invalid_argument("window is not inside the box");
  }
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> rows;
  detail::for_each_constraint(f, box, [&](const ExponentVec& m) { rows.push_back(detail::constraint_row(f, box, m)); });
  std::vector<std::pair<std::size_t, Scalar>> want;
  for (std::size_t i = 0; i < cyl.window.size(); ++i) want.emplace_back(box.index(cyl.window[i]), cyl.values[i] % F.p());

  BruteForceCount out;
  std::vector<Scalar> x(*n, 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (std::size_t i = 0; i < *n; ++i) {
      x[i] = c % F.p();
      c /= F.p();
    }
    bool ok = true;
    for (const auto& row : rows) {
      Scalar s = 0;
      for (const auto& [idx, coef] : row) s = F.add(s, F.mul(coef, x[idx]));
      if (s != 0) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    ++out.solutions;
    bool match = std::all_of(want.begin(), want.end(), [&](const auto& w) { return x[w.first] == w.second; });
    if (match) ++out.matching;
  }
  out.measure.p = F.p();
  out.measure.stabilized = false;
  if (out.matching == 0) {
    out.measure.zero = true;
  } else {
    std::uint64_t ratio = out.solutions / out.matching;
    if (ratio * out.matching != out.solutions) throw InternalInconsistency("solution count is not a multiple of the matches");
    std::int64_t m = 0;
    while (ratio > 1) {
      if (ratio % F.p() != 0) throw InternalInconsistency("count ratio is not a power of p");
      ratio /= F.p();
      ++m;
    }
    out.measure.exponent = m;
  }
  return out;
}

}  // namespace polymix
