#pragma once

// Mixing-order bounds for the Z^d-action on R_{d,p}/<f>:
//
//   v - 1 ≤ M(α) ≤ S(α) ≤ |S(f)| - 1,
//
// where v counts the vertices of N(f), and M = S whenever N(f) is tight.
// The upper bound is witnessed by the Frobenius family: Σ c_n u^{p^k n} is
// f^{p^k}, hence zero in the quotient for every k, so S(f) is a non-mixing
// shape. Irreducibility of f is a hypothesis of the lower bound that this
// library records but does not check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polymix/config.hpp"
#include "polymix/errors.hpp"
#include "polymix/fp_laurent.hpp"
#include "polymix/newton_polytope.hpp"
#include "polymix/parallel_redraw.hpp"
#include "polymix/quotient_ring.hpp"

namespace polymix {

enum class Tightness { tight, not_tight, undetermined };

inline const char* to_string(Tightness t) {
  switch (t) {
    case Tightness::tight:
      return "tight";
    case Tightness::not_tight:
      return "not_tight";
    default:
      return "undetermined";
  }
}

struct MixingBounds {
  std::size_t vertex_count = 0;
  std::size_t support_size = 0;
  std::size_t lower = 0;
  std::size_t upper = 0;
  int affine_dim = 0;
  Tightness tightness = Tightness::undetermined;
  std::optional<RedrawSpace> redraw;
  std::optional<std::size_t> exact_value;  // set iff lower == upper
  std::string conclusion;
};

inline MixingBounds mixing_bounds(const LaurentPoly& f) {
  if (f.is_zero() || f.is_monomial()) throw DegenerateInput("trivial quotient: modulus is zero or a monomial");
  const auto P = newton_polytope(f);
  MixingBounds b;
  b.vertex_count = P.vertex_count();
  b.support_size = f.size();
  b.lower = b.vertex_count - 1;
  b.upper = b.support_size - 1;
  b.affine_dim = P.affine_dim;
  if (b.lower > b.upper) throw InternalInconsistency("more hull vertices than support points");
  if (P.affine_dim <= 3) {
    b.redraw = redraw_space(skeleton_of(P));
    b.tightness = b.redraw->tight ? Tightness::tight : Tightness::not_tight;
  }
  const auto lo = std::to_string(b.lower), hi = std::to_string(b.upper);
  if (b.lower == b.upper) {
    b.exact_value = b.lower;
    b.conclusion = "M=S=" + lo;
  } else if (b.tightness == Tightness::tight) {
    b.conclusion = "M=S within [" + lo + "," + hi + "]";
  } else {
    b.conclusion = "M in [" + lo + ", ?], S in [?, " + hi + "]";
  }
  return b;
}

struct ShapeCertificate {
  std::vector<ExponentVec> shape;
  std::vector<LaurentPoly> coefficients;  // one per shape point, nonzero mod f
  std::vector<unsigned> verified_k;       // dilation by p^k was checked
  bool frobenius_family = false;          // then the relation holds for every k
  bool certified = false;                 // false: passed the finite filter only
};

inline ShapeCertificate frobenius_certificate(const LaurentPoly& f, unsigned k_max) {
  Divisor div(f);
  ShapeCertificate cert;
  for (const auto& [e, c] : f.terms()) {
    cert.shape.push_back(e);
    cert.coefficients.push_back(LaurentPoly::constant(f.field(), f.dim(), c));
  }
  cert.frobenius_family = true;
  cert.certified = true;
  for (unsigned k = 0; k <= k_max; ++k) {
    if (!is_zero_mod(frobenius_power(f, k), div)) {
      throw InternalInconsistency("Frobenius relation failed at k=" + std::to_string(k) + " for " + f.to_string());
    }
    cert.verified_k.push_back(k);
  }
  return cert;
}

// Σ_i a_i u^{n_i^{(j)}} = 0 in R_{d,p}/<f>, for a family of tuples indexed by j.
struct SequenceRelation {
  std::vector<LaurentPoly> coefficients;
  std::function<std::vector<ExponentVec>(std::int64_t)> tuple_at;
};

// Tuples supplied explicitly; index j starts at 1.
inline SequenceRelation explicit_relation(std::vector<LaurentPoly> coefficients,
                                          std::vector<std::vector<ExponentVec>> tuples) {
  auto shared = std::make_shared<std::vector<std::vector<ExponentVec>>>(std::move(tuples));
  return {std::move(coefficients), [shared](std::int64_t j) {
            if (j < 1 || static_cast<std::size_t>(j) > shared->size()) throw std::out_of_range("tuple index");
            return (*shared)[static_cast<std::size_t>(j - 1)];
          }};
}

// j ↦ p^j · shape.
inline SequenceRelation dilation_relation(std::vector<LaurentPoly> coefficients, std::vector<ExponentVec> shape,
                                          std::uint64_t p) {
  return {std::move(coefficients), [shape = std::move(shape), p](std::int64_t j) {
            const auto factor = ipow(static_cast<std::int64_t>(p), static_cast<unsigned>(j));
            std::vector<ExponentVec> t;
            for (const auto& n : shape) t.push_back(scale_vec(n, factor));
            return t;
          }};
}

inline LaurentPoly relation_polynomial(const std::vector<LaurentPoly>& a, const std::vector<ExponentVec>& tuple) {
  LaurentPoly sum(a.front().field(), a.front().dim());
  for (std::size_t i = 0; i < a.size(); ++i) sum = sum + a[i].shifted(tuple[i]);
  return sum;
}

inline std::vector<std::pair<std::int64_t, bool>> check_relation(const SequenceRelation& rel, const LaurentPoly& f,
                                                                 std::int64_t j_first, std::int64_t j_last) {
  Divisor div(f);
  if (rel.coefficients.empty()) throw std::invalid_argument("relation has no coefficients");
  for (const auto& a : rel.coefficients) {
    a.require_compatible(f);
    if (is_zero_mod(a, div)) throw std::invalid_argument("relation coefficient is zero in the quotient");
  }
  std::vector<std::pair<std::int64_t, bool>> out;
  for (auto j = j_first; j <= j_last; ++j) {
    const auto tuple = rel.tuple_at(j);
    if (tuple.size() != rel.coefficients.size()) throw std::invalid_argument("tuple length differs from r");
    for (const auto& n : tuple) f.check_exponent(n);
    out.emplace_back(j, is_zero_mod(relation_polynomial(rel.coefficients, tuple), div));
  }
  return out;
}

// Smallest ℓ∞ distance between two points of the tuple.
inline std::int64_t min_separation(const std::vector<ExponentVec>& tuple) {
  std::int64_t best = INT64_MAX;
  for (std::size_t s = 0; s < tuple.size(); ++s) {
    for (std::size_t t = s + 1; t < tuple.size(); ++t) {
      std::int64_t dist = 0;
      for (std::size_t i = 0; i < tuple[s].size(); ++i) dist = std::max(dist, std::abs(tuple[s][i] - tuple[t][i]));
      best = std::min(best, dist);
    }
  }
  return best;
}

// Finite-range reading of the moving-apart condition: separations never
// shrink and strictly grow between the ends of the range.
inline bool is_moving_apart(const SequenceRelation& rel, std::int64_t j_first, std::int64_t j_last) {
  std::int64_t prev = min_separation(rel.tuple_at(j_first));
  const std::int64_t start = prev;
  for (auto j = j_first + 1; j <= j_last; ++j) {
    const auto s = min_separation(rel.tuple_at(j));
    if (s < prev) return false;
    prev = s;
  }
  return prev > start;
}

inline constexpr std::uint64_t kSearchBudget = 10'000'000;

struct SearchOptions {
  std::uint64_t candidate_budget = budget_from_env(kSearchBudget);
};

namespace detail {

inline std::vector<ExponentVec> monomials_up_to(std::size_t dim, std::int64_t degree) {
  std::vector<ExponentVec> out;
  ExponentVec e(dim, 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
    if (i == dim) {
      out.push_back(e);
      return;
    }
    for (std::int64_t k = 0; k <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(0, degree);
  std::sort(out.begin(), out.end(), kTermOrder);
  return out;
}

// Points x of [-radius, radius]^d with x > 0 lexicographically.
inline std::vector<ExponentVec> positive_box_points(std::size_t dim, std::int64_t radius) {
  std::vector<ExponentVec> out;
  ExponentVec x(dim, -radius);
  for (;;) {
    if (x > ExponentVec(dim, 0)) out.push_back(x);
    std::size_t i = dim;
    while (i-- > 0) {
      if (x[i] < radius) {
        ++x[i];
        break;
      }
      x[i] = -radius;
    }
    if (i == SIZE_MAX) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  return __builtin_mul_overflow(a, b, &r) ? UINT64_MAX : r;
}

inline std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace detail

// Bounded brute-force search for r-point shapes {0 = n_1 < n_2 < ... < n_r}
// inside [-radius, radius]^d and coefficients a_i of total degree ≤ coeff_degree
// (a_1 normalized to leading coefficient 1) with Σ a_i u^{k n_i} ≡ 0 mod f for
// k ∈ {1, p, p²}. Passing the filter does not prove non-mixing for every k;
// only hits matching the Frobenius pattern come out certified.
inline std::vector<ShapeCertificate> search_relations(const LaurentPoly& f, std::size_t r, std::int64_t radius,
                                                      std::int64_t coeff_degree, const SearchOptions& opt = {}) {
  if (r < 2) throw std::invalid_argument("search needs r ≥ 2");
  if (radius < 0 || coeff_degree < 0) throw std::invalid_argument("search bounds must be non-negative");
  Divisor div(f);
  const auto& F = f.field();
  const std::uint64_t p = F.p();
  const std::size_t d = f.dim();

  const auto monos = detail::monomials_up_to(d, coeff_degree);
  const auto points = detail::positive_box_points(d, radius);
  const std::size_t m = monos.size();

  // Candidate count, checked before any work.
  std::uint64_t per_slot = 1;
  for (std::size_t i = 0; i < m; ++i) per_slot = detail::saturating_mul(per_slot, p);
  per_slot -= 1;
  const std::uint64_t first_slot = per_slot / (p - 1);
  std::uint64_t per_shape = first_slot;
  for (std::size_t i = 1; i < r; ++i) per_shape = detail::saturating_mul(per_shape, per_slot);
  const auto shapes = detail::binomial_saturating(points.size(), r - 1);
  const auto total = detail::saturating_mul(shapes, per_shape);
  if (total > opt.candidate_budget) {
    throw BudgetExceeded("search space of " + (total == UINT64_MAX ? std::string("> 2^64") : std::to_string(total)) +
                         " candidates exceeds the budget of " + std::to_string(opt.candidate_budget));
  }
  std::vector<ShapeCertificate> found;
  if (shapes == 0) return found;

  // Coefficient vectors over the monomial list, enumerated in a fixed order.
  auto decode = [&](std::uint64_t code) {
    LaurentPoly a(F, d);
    for (std::size_t i = 0; i < m; ++i) {
      a.accumulate(monos[i], code % p);
      code /= p;
    }
    return a;
  };
  std::vector<LaurentPoly> slot_options, first_options;
  for (std::uint64_t code = 1; code <= per_slot; ++code) {
    LaurentPoly a = decode(code);
    if (is_zero_mod(a, div)) continue;
    // leading coefficient in the enumeration's lowest monomial slot
    std::uint64_t c = code;
    while (c % p == 0) c /= p;
    slot_options.push_back(a);
    if (c % p == 1) first_options.push_back(a);
  }

  const std::vector<std::int64_t> dilations = {1, static_cast<std::int64_t>(p), static_cast<std::int64_t>(p * p)};

  // Frobenius pattern: the shape is S(f) translated to start at the origin.
  auto sf = support(f);
  for (auto& x : sf) x = sub_vec(x, support(f).front());

  // Frobenius images p^j·(S(f) - n_0) that fit in the search box.
  auto in_frobenius_orbit = [&](const std::vector<ExponentVec>& shape) {
    std::int64_t factor = 1;
    for (;;) {
      std::vector<ExponentVec> image;
      for (const auto& x : sf) image.push_back(scale_vec(x, factor));
      if (shape == image) return true;
      const auto reach = std::any_of(image.begin(), image.end(), [&](const auto& x) {
        return std::any_of(x.begin(), x.end(), [&](auto c) { return c > radius || c < -radius; });
      });
      if (reach) return false;
      factor = checked_mul(factor, static_cast<std::int64_t>(p));
    }
  };

  std::vector<std::size_t> pick(r - 1);
  for (std::size_t i = 0; i < r - 1; ++i) pick[i] = i;
  for (;;) {
    std::vector<ExponentVec> shape{ExponentVec(d, 0)};
    for (auto i : pick) shape.push_back(points[i]);

    // Residues of u^{k n_i}, the relation is linear in the coefficients.
    std::vector<std::vector<LaurentPoly>> shifted(dilations.size());
    for (std::size_t kk = 0; kk < dilations.size(); ++kk) {
      for (const auto& n : shape) shifted[kk].push_back(LaurentPoly::monomial(F, scale_vec(n, dilations[kk])));
    }

    std::vector<std::size_t> choice(r, 0);
    for (;;) {
      std::vector<LaurentPoly> coeffs;
      coeffs.push_back(first_options[choice[0]]);
      for (std::size_t i = 1; i < r; ++i) coeffs.push_back(slot_options[choice[i]]);
      bool ok = true;
      for (std::size_t kk = 0; kk < dilations.size() && ok; ++kk) {
        LaurentPoly sum(F, d);
        for (std::size_t i = 0; i < r; ++i) sum = sum + coeffs[i] * shifted[kk][i];
        ok = is_zero_mod(sum, div);
      }
      if (ok) {
        ShapeCertificate cert;
        cert.shape = shape;
        cert.coefficients = coeffs;
        cert.verified_k = {0, 1, 2};
        if (in_frobenius_orbit(shape) && std::all_of(coeffs.begin(), coeffs.end(), [&](const auto& a) {
              return a.is_monomial() && a.terms().begin()->first == ExponentVec(d, 0);
            })) {
          const Scalar scale = F.mul(coeffs[0].terms().begin()->second, F.inv(f.terms().begin()->second));
          bool proportional = true;
          std::size_t i = 0;
          for (const auto& [e, c] : f.terms()) {
            proportional &= coeffs[i++].terms().begin()->second == F.mul(scale, c);
          }
          cert.frobenius_family = proportional;
          cert.certified = proportional;
        }
        found.push_back(std::move(cert));
      }
      std::size_t pos = r;
      while (pos-- > 0) {
        const auto limit = pos == 0 ? first_options.size() : slot_options.size();
        if (++choice[pos] < limit) break;
        choice[pos] = 0;
      }
      if (pos == SIZE_MAX) break;
    }

    // next combination of r-1 indices from points
    std::size_t i = r - 1;
    while (i-- > 0) {
      if (pick[i] < points.size() - (r - 1 - i)) {
        ++pick[i];
        for (std::size_t j = i + 1; j < r - 1; ++j) pick[j] = pick[j - 1] + 1;
        break;
      }
    }
    if (i == SIZE_MAX) break;
  }
  return found;
}

}  // namespace polymix
