#pragma once

#include <cstdint>
#include <string>

#include "polymix/errors.hpp"

namespace polymix {

using Scalar = std::uint64_t;

// A prime field F_p. Primality is checked by trial division on construction.
class FieldSpec {
 public:
  FieldSpec() = default;
  explicit FieldSpec(std::uint64_t p) : p_(p) {
    if (!is_prime(p)) {
      throw ParseError("modulus " + std::to_string(p) + " is not prime");
    }
  }

  std::uint64_t p() const noexcept { return p_; }

  Scalar reduce(std::int64_t c) const noexcept {
    const auto m = static_cast<std::int64_t>(p_);
    std::int64_t r = c % m;
    if (r < 0) r += m;
    return static_cast<Scalar>(r);
  }
  Scalar add(Scalar a, Scalar b) const noexcept {
    Scalar s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Scalar sub(Scalar a, Scalar b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Scalar neg(Scalar a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Scalar mul(Scalar a, Scalar b) const noexcept {
    return static_cast<Scalar>((static_cast<unsigned __int128>(a) * b) % p_);
  }
  Scalar pow(Scalar a, std::uint64_t e) const noexcept {
    Scalar r = 1 % p_;
    a %= p_;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  // a must be nonzero.
  Scalar inv(Scalar a) const noexcept { return pow(a, p_ - 2); }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

  static bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t q = 2; q * q <= n; ++q) {
      if (n % q == 0) return false;
    }
    return true;
  }

 private:
  std::uint64_t p_ = 2;
};

}  // namespace polymix
