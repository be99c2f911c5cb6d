#pragma once

// Sparse Laurent polynomials over a prime field F_p.
//
// A polynomial is a map from integer exponent vectors (negative entries
// allowed) to nonzero residues mod p. Every constructor canonicalizes, so
// structural equality of the term maps is ring equality.

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "polymix/errors.hpp"
#include "polymix/intmath.hpp"
#include "polymix/modular.hpp"

namespace polymix {

// Exponent vectors of a polynomial, sorted lexicographically, no duplicates.
using SupportSet = std::vector<ExponentVec>;

class LaurentPoly {
 public:
  using TermMap = std::map<ExponentVec, Scalar>;

  LaurentPoly() = default;
  LaurentPoly(FieldSpec field, std::size_t dim) : field_(field), dim_(dim) {
    if (dim == 0) throw ParseError("polynomial dimension must be at least 1");
  }

  // Coefficients are reduced mod p, duplicates summed, zeros dropped.
  static LaurentPoly make(FieldSpec field, std::size_t dim,
                          const std::vector<std::pair<ExponentVec, std::int64_t>>& terms) {
    LaurentPoly g(field, dim);
    for (const auto& [e, c] : terms) {
      g.check_exponent(e);
      g.accumulate(e, field.reduce(c));
    }
    return g;
  }

  static LaurentPoly monomial(FieldSpec field, ExponentVec e, Scalar c = 1) {
    LaurentPoly g(field, e.size());
    g.accumulate(e, c % field.p());
    return g;
  }

  static LaurentPoly constant(FieldSpec field, std::size_t dim, Scalar c) {
    return monomial(field, ExponentVec(dim, 0), c);
  }

  const FieldSpec& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return dim_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_monomial() const noexcept { return terms_.size() == 1; }

  Scalar coeff(const ExponentVec& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
  }

  // Adds c·u^e in place. Used by every arithmetic routine below.
  void accumulate(const ExponentVec& e, Scalar c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second = field_.add(it->second, c);
      if (it->second == 0) terms_.erase(it);
    }
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.field_ == b.field_ && a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  LaurentPoly operator-() const {
    LaurentPoly r(field_, dim_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, field_.neg(c));
    return r;
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    a.require_compatible(b);
    LaurentPoly r = a;
    for (const auto& [e, c] : b.terms_) r.accumulate(e, c);
    return r;
  }

  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.require_compatible(b);
    LaurentPoly r(a.field_, a.dim_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        r.accumulate(add_vec(ea, eb), a.field_.mul(ca, cb));
      }
    }
    return r;
  }

  LaurentPoly scaled(Scalar s) const {
    LaurentPoly r(field_, dim_);
    s %= field_.p();
    if (s == 0) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, field_.mul(c, s));
    return r;
  }

  // u^m · g
  LaurentPoly shifted(const ExponentVec& m) const {
    check_exponent(m);
    LaurentPoly r(field_, dim_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(add_vec(e, m), c);
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      bool unit = std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
      if (c != 1 || unit) os << c;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        os << "u" << (i + 1);
        if (e[i] != 1) os << "^" << e[i];
      }
    }
    return os.str();
  }

  void check_exponent(const ExponentVec& e) const {
    if (e.size() != dim_) {
      throw ParseError("exponent vector of length " + std::to_string(e.size()) +
                       " in a polynomial of dimension " + std::to_string(dim_));
    }
  }

  void require_compatible(const LaurentPoly& other) const {
    if (!(field_ == other.field_) || dim_ != other.dim_) {
      throw std::invalid_argument("polynomials over different fields or dimensions");
    }
  }

 private:
  FieldSpec field_;
  std::size_t dim_ = 1;
  TermMap terms_;
};

inline LaurentPoly make_poly(FieldSpec field, std::size_t dim,
                             const std::vector<std::pair<ExponentVec, std::int64_t>>& terms) {
  return LaurentPoly::make(field, dim, terms);
}

inline SupportSet support(const LaurentPoly& g) {
  SupportSet s;
  s.reserve(g.size());
  for (const auto& [e, c] : g.terms()) s.push_back(e);
  return s;
}

// g^n by repeated squaring through the generic product.
inline LaurentPoly power(const LaurentPoly& g, std::uint64_t n) {
  LaurentPoly result = LaurentPoly::constant(g.field(), g.dim(), 1);
  LaurentPoly base = g;
  while (n) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

// Σ c_n u^{p^k n}. In characteristic p this is g^{p^k}, since c^p = c on F_p.
inline LaurentPoly frobenius_power(const LaurentPoly& g, unsigned k) {
  const auto factor = ipow(static_cast<std::int64_t>(g.field().p()), k);
  LaurentPoly r(g.field(), g.dim());
  for (const auto& [e, c] : g.terms()) r.accumulate(scale_vec(e, factor), c);
  return r;
}

}  // namespace polymix
