#pragma once

#include <cstdlib>
#include <fstream>
#include <random>
#include <string>

#include "polymix/json_io.hpp"
#include "polymix/polymix.hpp"

namespace testing_support {

using namespace polymix;

inline std::string fixture_path(const std::string& name) {
  const char* dir = std::getenv("POLYMIX_FIXTURES");
  return std::string(dir ? dir : "fixtures") + "/" + name;
}

inline json_io::Json load_json(const std::string& name) {
  std::ifstream in(fixture_path(name));
  if (!in) throw std::runtime_error("missing fixture " + name);
  return json_io::Json::parse(in);
}

inline LaurentPoly load_poly(const std::string& name) { return json_io::parse_poly(load_json(name)); }

inline LaurentPoly ledrappier() { return make_poly(FieldSpec(2), 2, {{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 1}}); }
inline LaurentPoly quadratic_f2() {
  return make_poly(FieldSpec(2), 2, {{{0, 0}, 1}, {{1, 0}, 1}, {{2, 0}, 1}, {{0, 1}, 1}});
}
inline LaurentPoly square_f3() {
  return make_poly(FieldSpec(3), 2, {{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 2}});
}

inline std::vector<LaurentPoly> fixtures() { return {ledrappier(), quadratic_f2(), square_f3()}; }

inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline ExponentVec random_vec(std::mt19937_64& rng, std::size_t d, std::int64_t lo, std::int64_t hi) {
  ExponentVec v(d);
  for (auto& x : v) x = uniform(rng, lo, hi);
  return v;
}

// Random Laurent polynomial with up to `terms` terms, exponents in [lo, hi].
inline LaurentPoly random_poly(std::mt19937_64& rng, FieldSpec F, std::size_t d, std::size_t terms, std::int64_t lo,
                               std::int64_t hi) {
  LaurentPoly g(F, d);
  const auto n = uniform(rng, 0, static_cast<std::int64_t>(terms));
  for (std::int64_t i = 0; i < n; ++i) {
    g.accumulate(random_vec(rng, d, lo, hi), static_cast<Scalar>(uniform(rng, 1, static_cast<std::int64_t>(F.p()) - 1)));
  }
  return g;
}

}  // namespace testing_support
