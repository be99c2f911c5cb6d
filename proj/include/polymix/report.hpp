#pragma once

// Report builders behind the command-line tool. Each returns a JSON document
// with a fixed key order and throws the library's error types on bad input.

#include <string>
#include <vector>

#include "polymix/json_io.hpp"

namespace polymix::report {

using json_io::Json;

inline constexpr unsigned kDefaultCertifyDepth = 8;

inline Json analyze(const LaurentPoly& f, unsigned k_max = kDefaultCertifyDepth) {
  const auto bounds = mixing_bounds(f);
  const auto P = newton_polytope(f);
  const auto cert = frobenius_certificate(f, k_max);

  Json warnings = Json::array();
  warnings.push_back("irreducibility of f is assumed, not checked");
  if (bounds.tightness == Tightness::undetermined) {
    warnings.push_back("tightness undetermined for N(f) of dimension " + std::to_string(P.affine_dim));
  }

  Json polytope = json_io::write_polytope(P);
  polytope["v"] = P.vertex_count();
  polytope["tightness"] = to_string(bounds.tightness);

  Json out;
  out["input"] = json_io::write_poly(f);
  out["support"] = json_io::write_points(support(f));
  out["polytope"] = polytope;
  out["bounds"] = json_io::write_bounds(bounds);
  out["certificate"] = json_io::write_certificate(cert);
  out["warnings"] = warnings;
  return out;
}

inline Json tightness(const json_io::AnySkeleton& skeleton, double tolerance = kRedrawTolerance) {
  return std::visit([&](const auto& S) { return json_io::write_redraw(redraw_space(S, tolerance)); }, skeleton);
}

inline Json bounds(const LaurentPoly& f) { return json_io::write_bounds(mixing_bounds(f)); }

inline Json certify(const LaurentPoly& f, unsigned k_max) {
  return json_io::write_certificate(frobenius_certificate(f, k_max));
}

// One cylinder, or the joint event of cylinder i translated by shift i.
inline Json measure(const LaurentPoly& f, const std::vector<CylinderSpec>& cylinders,
                    const std::vector<ExponentVec>& shifts, const MeasureOptions& opt = {}) {
  if (cylinders.empty()) throw std::invalid_argument("no cylinder given");
  if (shifts.empty()) {
    if (cylinders.size() != 1) throw std::invalid_argument("several cylinders need --shifts");
    return json_io::write_measure(cylinder_measure(f, cylinders.front(), opt));
  }
  if (cylinders.size() != 1 && cylinders.size() != shifts.size()) {
    throw std::invalid_argument("need one cylinder, or one per shift");
  }
  std::vector<std::pair<ExponentVec, CylinderSpec>> events;
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    f.check_exponent(shifts[i]);
    events.emplace_back(shifts[i], cylinders.size() == 1 ? cylinders.front() : cylinders[i]);
  }
  return json_io::write_measure(joint_measure(f, events, opt));
}

inline Json experiment(const LaurentPoly& f, const std::vector<ExponentVec>& shape,
                       const std::vector<CylinderSpec>& cylinders, const std::vector<std::int64_t>& ks,
                       const MeasureOptions& opt = {}) {
  if (shape.empty()) throw std::invalid_argument("empty shape");
  for (const auto& n : shape) f.check_exponent(n);
  std::vector<CylinderSpec> per_point = cylinders;
  if (cylinders.size() == 1) per_point.assign(shape.size(), cylinders.front());
  if (per_point.size() != shape.size()) throw std::invalid_argument("need one cylinder, or one per shape point");
  Json out = json_io::write_experiment(mixing_experiment(f, shape, per_point, ks, opt));
  return out;
}

inline Json detect(const LaurentPoly& f, const std::vector<ExponentVec>& tuple, std::int64_t K) {
  const auto m = detect_redrawing(f, tuple, K);
  Json out = json_io::write_match(m);
  if (m) {
    const auto snap = snap_to_homothety(*m, f, tuple);
    Json s{{"homothetic", snap.homothetic}, {"snapped", json_io::write_points(snap.snapped)}};
    if (!snap.homothetic) s["reason"] = snap.reason;
    out["snap"] = s;
  }
  return out;
}

inline Json search(const LaurentPoly& f, std::size_t r, std::int64_t radius, std::int64_t degree,
                   const SearchOptions& opt = {}) {
  Json hits = Json::array();
  for (const auto& c : search_relations(f, r, radius, degree, opt)) hits.push_back(json_io::write_certificate(c));
  return Json{{"r", r}, {"radius", radius}, {"coeff_degree", degree}, {"candidates", hits}};
}

}  // namespace polymix::report
