#pragma once

// Computation in R_{d,p}/<f> for a single Laurent polynomial f.
//
// Monomials are units in the Laurent ring, so <f> is determined by the
// polynomial f' = u^{-s} f whose exponents have componentwise minimum 0.
// Since f' is divisible by no variable, g ∈ <f> in the Laurent ring iff the
// polynomial part of g is divisible by f' in F_p[u]. A single generator is a
// Gröbner basis of its ideal, so the division remainder is a canonical,
// F_p-linear normal form.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <unordered_map>
#include <utility>

#include "polymix/errors.hpp"
#include "polymix/fp_laurent.hpp"

namespace polymix {

// Graded lexicographic order with variable precedence u_d > u_{d-1} > ... > u_1.
// Under this order the leading term of 1 + u1 + u2 is u2.
struct GradedLex {
  static std::int64_t degree(const ExponentVec& e) {
    return std::accumulate(e.begin(), e.end(), std::int64_t{0});
  }
  // true iff a < b
  bool operator()(const ExponentVec& a, const ExponentVec& b) const {
    const auto da = degree(a), db = degree(b);
    if (da != db) return da < db;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  }
};

inline constexpr GradedLex kTermOrder{};

struct Residue {
  LaurentPoly value;    // remainder, exponents ≥ 0
  LaurentPoly modulus;  // the normalized divisor f'
  ExponentVec shift;    // g was multiplied by u^{-shift} before division
};

// u^{-shift}·g with componentwise minimum exponent 0.
inline std::pair<LaurentPoly, ExponentVec> normalize(const LaurentPoly& g) {
  if (g.is_zero()) throw DegenerateInput("cannot normalize the zero polynomial");
  ExponentVec lo = g.terms().begin()->first;
  for (const auto& [e, c] : g.terms()) {
    for (std::size_t i = 0; i < lo.size(); ++i) lo[i] = std::min(lo[i], e[i]);
  }
  ExponentVec neg(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) neg[i] = -lo[i];
  return {g.shifted(neg), lo};
}

inline bool divides(const ExponentVec& lead, const ExponentVec& e) {
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] < lead[i]) return false;
  }
  return true;
}

// Reduction modulo one fixed normalized polynomial.
class Divisor {
 public:
  explicit Divisor(const LaurentPoly& f) {
    if (f.is_zero() || f.is_monomial()) {
      throw DegenerateInput("trivial quotient: modulus is zero or a monomial");
    }
    f_ = normalize(f).first;
    auto lead = std::max_element(f_.terms().begin(), f_.terms().end(),
                                 [](const auto& a, const auto& b) { return kTermOrder(a.first, b.first); });
    lead_ = lead->first;
    lead_inv_ = f_.field().inv(lead->second);
    lead_degree_ = GradedLex::degree(lead_);
    threshold_ = std::max<std::int64_t>(32, 4 * lead_degree_);
  }

  const LaurentPoly& modulus() const noexcept { return f_; }
  const ExponentVec& leading_exponent() const noexcept { return lead_; }

  // Plain multivariate division of a polynomial (exponents ≥ 0) by f'.
  LaurentPoly divide(const LaurentPoly& g) const {
    const auto& F = f_.field();
    std::map<ExponentVec, Scalar, GradedLex> work(g.terms().begin(), g.terms().end());
    LaurentPoly rem(F, g.dim());
    while (!work.empty()) {
      auto top = std::prev(work.end());
      const ExponentVec e = top->first;
      const Scalar c = top->second;
      work.erase(top);
      if (!divides(lead_, e)) {
        rem.accumulate(e, c);
        continue;
      }
      const Scalar q = F.mul(c, lead_inv_);
      const ExponentVec m = sub_vec(e, lead_);
      for (const auto& [fe, fc] : f_.terms()) {
        if (fe == lead_) continue;
        auto key = add_vec(fe, m);
        Scalar delta = F.neg(F.mul(q, fc));
        auto [it, inserted] = work.try_emplace(std::move(key), delta);
        if (!inserted) {
          it->second = F.add(it->second, delta);
          if (it->second == 0) work.erase(it);
        }
      }
    }
    return rem;
  }

  // Normal form of a polynomial with exponents ≥ 0. High-degree monomials are
  // reduced through u^m = (u^{m div p})^p · u^{m mod p}, using that the p-th
  // power map is a ring endomorphism preserving <f'>; this keeps the cost
  // logarithmic in the exponent size.
  LaurentPoly normal_form(const LaurentPoly& g) const {
    LaurentPoly low(g.field(), g.dim());
    LaurentPoly out(g.field(), g.dim());
    std::map<ExponentVec, LaurentPoly> memo;
    for (const auto& [e, c] : g.terms()) {
      if (GradedLex::degree(e) <= threshold_) {
        low.accumulate(e, c);
      } else {
        out = out + monomial_normal_form(e, memo).scaled(c);
      }
    }
    return out + divide(low);
  }

 private:
  LaurentPoly monomial_normal_form(const ExponentVec& e, std::map<ExponentVec, LaurentPoly>& memo) const {
    if (auto it = memo.find(e); it != memo.end()) return it->second;
    const auto& F = f_.field();
    LaurentPoly result(F, e.size());
    if (GradedLex::degree(e) <= threshold_) {
      result = divide(LaurentPoly::monomial(F, e));
    } else {
      const auto p = static_cast<std::int64_t>(F.p());
      ExponentVec quot(e.size()), rest(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) {
        quot[i] = e[i] / p;
        rest[i] = e[i] % p;
      }
      LaurentPoly base = monomial_normal_form(quot, memo);
      result = divide(frobenius_power(base, 1).shifted(rest));
    }
    memo.emplace(e, result);
    return result;
  }

  LaurentPoly f_;
  ExponentVec lead_;
  Scalar lead_inv_ = 1;
  std::int64_t lead_degree_ = 0;
  std::int64_t threshold_ = 32;
};

namespace detail {

// Shift that clears negative exponents only; polynomials are left as they are,
// which makes reduce idempotent and compatible with addition of multiples of f.
inline ExponentVec negative_part(const LaurentPoly& g) {
  ExponentVec lo(g.dim(), 0);
  for (const auto& [e, c] : g.terms()) {
    for (std::size_t i = 0; i < lo.size(); ++i) lo[i] = std::min(lo[i], e[i]);
  }
  return lo;
}

inline ExponentVec negated(const ExponentVec& v) {
  ExponentVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
  return r;
}

}  // namespace detail

inline Residue reduce(const LaurentPoly& g, const Divisor& div) {
  g.require_compatible(div.modulus());
  ExponentVec shift = detail::negative_part(g);
  LaurentPoly value = div.normal_form(g.shifted(detail::negated(shift)));
  return Residue{std::move(value), div.modulus(), std::move(shift)};
}

inline Residue reduce(const LaurentPoly& g, const LaurentPoly& f) { return reduce(g, Divisor(f)); }

// Same contract as reduce but through plain division only. Slow for large
// exponents; kept as an independent route for cross-checking.
inline Residue reduce_by_division(const LaurentPoly& g, const LaurentPoly& f) {
  Divisor div(f);
  g.require_compatible(div.modulus());
  ExponentVec shift = detail::negative_part(g);
  LaurentPoly value = div.divide(g.shifted(detail::negated(shift)));
  return Residue{std::move(value), div.modulus(), std::move(shift)};
}

inline bool is_zero_mod(const LaurentPoly& g, const Divisor& div) {
  return g.is_zero() || reduce(g, div).value.is_zero();
}

inline bool is_zero_mod(const LaurentPoly& g, const LaurentPoly& f) { return is_zero_mod(g, Divisor(f)); }

}  // namespace polymix
