#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace polymix {

using ExponentVec = std::vector<std::int64_t>;

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("exponent overflow in addition");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("exponent overflow in multiplication");
  return r;
}

inline ExponentVec add_vec(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  ExponentVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
  return r;
}

inline ExponentVec sub_vec(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  ExponentVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], -b[i]);
  return r;
}

inline ExponentVec scale_vec(std::span<const std::int64_t> a, std::int64_t s) {
  ExponentVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_mul(a[i], s);
  return r;
}

inline std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = checked_add(s, checked_mul(a[i], b[i]));
  return s;
}

inline std::int64_t content(std::span<const std::int64_t> v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  return g;
}

inline bool is_primitive(std::span<const std::int64_t> v) { return content(v) == 1; }

// v divided by the gcd of its entries; zero stays zero.
inline ExponentVec make_primitive(std::span<const std::int64_t> v) {
  const auto g = content(v);
  ExponentVec r(v.begin(), v.end());
  if (g > 1) {
    for (auto& x : r) x /= g;
  }
  return r;
}

inline std::int64_t norm_sq(std::span<const std::int64_t> v) { return dot(v, v); }

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Integer power with overflow check.
inline std::int64_t ipow(std::int64_t base, unsigned e) {
  std::int64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

}  // namespace polymix
