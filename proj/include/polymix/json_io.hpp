#pragma once

// JSON wire formats.
//
//   polynomial   {"p": 2, "d": 2, "terms": [{"e": [0,0], "c": 1}, ...]}
//   polytope     {"vertices": [[...]], "edges": [[i,j], ...], "affine_dim": k}
//   skeleton     {"dim": d, "vertices": [[...]], "edges": [[i,j], ...]}
//                entries are integers, "a/b" strings, or floats (floats select
//                the approximate path)
//   certificate  {"shape": [[...]], "coeffs": [...], "verified_k": [...], "frobenius_family": b}
//   cylinder     {"window": [[...], ...], "values": [...]}
//   fraction     {"num": 1, "den": 8}

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "polymix/errors.hpp"
#include "polymix/fp_laurent.hpp"
#include "polymix/haar_measure.hpp"
#include "polymix/mixing_analysis.hpp"
#include "polymix/newton_polytope.hpp"
#include "polymix/parallel_redraw.hpp"
#include "polymix/rational.hpp"
#include "polymix/sequence_geometry.hpp"

namespace polymix::json_io {

using Json = nlohmann::ordered_json;

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::int64_t as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

inline ExponentVec parse_vector(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an integer vector");
  ExponentVec v;
  for (const auto& x : j) v.push_back(as_int(x, "vector entry"));
  return v;
}

inline std::vector<ExponentVec> parse_points(const Json& j, std::size_t dim = 0) {
  if (!j.is_array()) throw ParseError("expected a list of integer vectors");
  std::vector<ExponentVec> pts;
  for (const auto& x : j) {
    pts.push_back(parse_vector(x));
    if (dim && pts.back().size() != dim) throw ParseError("point of length " + std::to_string(pts.back().size()) +
                                                          ", expected " + std::to_string(dim));
  }
  return pts;
}

inline Json write_points(const std::vector<ExponentVec>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(p);
  return a;
}

inline LaurentPoly parse_poly(const Json& j) {
  const auto p = as_int(field(j, "p"), "p");
  const auto d = as_int(field(j, "d"), "d");
  if (p < 2) throw ParseError("p must be a prime ≥ 2");
  if (d < 1) throw ParseError("d must be ≥ 1");
  FieldSpec F(static_cast<std::uint64_t>(p));
  const auto& terms = field(j, "terms");
  if (!terms.is_array()) throw ParseError("terms must be a list");
  std::vector<std::pair<ExponentVec, std::int64_t>> list;
  for (const auto& t : terms) {
    auto e = parse_vector(field(t, "e"));
    if (e.size() != static_cast<std::size_t>(d)) {
      throw ParseError("term exponent of length " + std::to_string(e.size()) + " in a polynomial with d=" +
                       std::to_string(d));
    }
    list.emplace_back(std::move(e), as_int(field(t, "c"), "coefficient"));
  }
  return LaurentPoly::make(F, static_cast<std::size_t>(d), list);
}

inline Json write_terms(const LaurentPoly& g) {
  Json terms = Json::array();
  for (const auto& [e, c] : g.terms()) terms.push_back(Json{{"e", e}, {"c", c}});
  return terms;
}

inline Json write_poly(const LaurentPoly& g) {
  return Json{{"p", g.field().p()}, {"d", g.dim()}, {"terms", write_terms(g)}};
}

inline Json write_fraction(const Rational& r) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  auto num = numerator(r), den = denominator(r);
  Json j;
  // Integers when they fit, decimal strings otherwise.
  if (boost::multiprecision::abs(num) <= INT64_MAX) {
    j["num"] = static_cast<std::int64_t>(num);
  } else {
    j["num"] = num.str();
  }
  if (den <= INT64_MAX) {
    j["den"] = static_cast<std::int64_t>(den);
  } else {
    j["den"] = den.str();
  }
  return j;
}

inline Json write_edges(const std::vector<EdgeIndex>& edges) {
  Json a = Json::array();
  for (auto [i, j] : edges) a.push_back(Json::array({i, j}));
  return a;
}

inline Json write_polytope(const LatticePolytope& P) {
  return Json{{"vertices", write_points(P.vertices)}, {"edges", write_edges(P.edges)}, {"affine_dim", P.affine_dim}};
}

inline std::vector<EdgeIndex> parse_edges(const Json& j, std::size_t n) {
  if (!j.is_array()) throw ParseError("edges must be a list of index pairs");
  std::vector<EdgeIndex> edges;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw ParseError("edge must be a pair");
    auto a = as_int(e[0], "edge index"), b = as_int(e[1], "edge index");
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n) {
      throw ParseError("edge index out of range");
    }
    edges.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  }
  return edges;
}

using AnySkeleton = std::variant<Skeleton<Rational>, Skeleton<double>>;

inline AnySkeleton parse_skeleton(const Json& j) {
  const auto dim = as_int(field(j, "dim"), "dim");
  if (dim < 1) throw ParseError("dim must be ≥ 1");
  const auto& verts = field(j, "vertices");
  if (!verts.is_array()) throw ParseError("vertices must be a list");
  bool approximate = false;
  for (const auto& v : verts) {
    if (!v.is_array() || v.size() != static_cast<std::size_t>(dim)) throw ParseError("vertex has the wrong length");
    for (const auto& x : v) {
      if (x.is_number_float()) approximate = true;
      else if (!x.is_number_integer() && !x.is_string()) throw ParseError("vertex entries must be numbers or \"a/b\"");
    }
  }
  auto edges = parse_edges(field(j, "edges"), verts.size());
  auto exact = [&](const Json& x) {
    try {
      return x.is_string() ? parse_rational(x.get<std::string>()) : Rational(x.get<std::int64_t>());
    } catch (const std::exception&) {
      throw ParseError("bad rational entry " + x.dump());
    }
  };
  if (approximate) {
    Skeleton<double> S;
    S.dim = static_cast<std::size_t>(dim);
    S.edges = edges;
    for (const auto& v : verts) {
      std::vector<double> row;
      for (const auto& x : v) row.push_back(x.is_number() ? x.get<double>() : static_cast<double>(exact(x)));
      S.positions.push_back(std::move(row));
    }
    return S;
  }
  Skeleton<Rational> S;
  S.dim = static_cast<std::size_t>(dim);
  S.edges = edges;
  for (const auto& v : verts) {
    std::vector<Rational> row;
    for (const auto& x : v) row.push_back(exact(x));
    S.positions.push_back(std::move(row));
  }
  return S;
}

inline Json write_redraw(const RedrawSpace& r) {
  Json j{{"dimension", r.dimension}, {"tight", r.tight}, {"constraint_rank", r.constraint_rank},
         {"arithmetic", r.arithmetic == Arithmetic::exact ? "exact" : "approximate"}};
  if (r.arithmetic == Arithmetic::approximate) j["tolerance"] = r.tolerance;
  return j;
}

inline Json write_coefficient(const LaurentPoly& a) {
  if (a.is_monomial() && a.terms().begin()->first == ExponentVec(a.dim(), 0)) return Json(a.terms().begin()->second);
  return Json{{"terms", write_terms(a)}};
}

inline Json write_certificate(const ShapeCertificate& c) {
  Json coeffs = Json::array();
  for (const auto& a : c.coefficients) coeffs.push_back(write_coefficient(a));
  return Json{{"shape", write_points(c.shape)},
              {"coeffs", coeffs},
              {"verified_k", c.verified_k},
              {"frobenius_family", c.frobenius_family},
              {"status", c.certified ? "certified" : "candidate"}};
}

inline Json write_bounds(const MixingBounds& b) {
  Json j{{"vertex_count", b.vertex_count},
         {"support_size", b.support_size},
         {"lower", b.lower},
         {"upper", b.upper},
         {"affine_dim", b.affine_dim},
         {"tightness", to_string(b.tightness)},
         {"conclusion", b.conclusion}};
  j["exact_value"] = b.exact_value ? Json(*b.exact_value) : Json(nullptr);
  if (b.redraw) j["redraw"] = write_redraw(*b.redraw);
  return j;
}

inline CylinderSpec parse_cylinder(const Json& j, FieldSpec F, std::size_t dim) {
  CylinderSpec c;
  c.window = parse_points(field(j, "window"), dim);
  const auto& vals = field(j, "values");
  if (!vals.is_array()) throw ParseError("values must be a list");
  for (const auto& v : vals) c.values.push_back(F.reduce(as_int(v, "cylinder value")));
  if (c.values.size() != c.window.size()) throw ParseError("window and values differ in length");
  if (c.window.empty()) throw ParseError("cylinder window is empty");
  return c;
}

inline Json write_cylinder(const CylinderSpec& c) {
  return Json{{"window", write_points(c.window)}, {"values", c.values}};
}

inline Json write_measure(const MeasureResult& m) {
  Json j = write_fraction(m.value());
  j["zero"] = m.zero;
  j["p"] = m.p;
  j["exponent"] = m.zero ? Json(nullptr) : Json(m.exponent);
  j["stabilized"] = m.stabilized;
  j["box_margin"] = m.box_margin_used;
  j["dimension_history"] = m.dimension_history;
  return j;
}

inline Json write_experiment(const std::vector<ExperimentRow>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) {
    Json j{{"k", r.index}, {"available", r.available}};
    if (r.available) {
      j["joint"] = write_fraction(r.joint);
      j["product"] = write_fraction(r.product);
      j["gap"] = write_fraction(r.gap);
    }
    if (!r.note.empty()) j["note"] = r.note;
    a.push_back(j);
  }
  return Json{{"rows", a}};
}

inline Json write_match(const std::optional<RedrawMatch>& m) {
  if (!m) return Json{{"match", false}};
  Json pairing = Json::array();
  for (const auto& p : m->pairing) {
    pairing.push_back(Json{{"edge", Json::array({p.edge.first, p.edge.second})},
                           {"points", Json::array({p.from, p.to})},
                           {"multiple", p.multiple}});
  }
  Json j{{"match", true},
         {"tuple_index", m->tuple_index},
         {"vertex_to_point", m->vertex_to_point},
         {"pairing", pairing},
         {"perturbations", write_points(m->perturbations)},
         {"K", m->K}};
  if (m->homothety) {
    Json t = Json::array();
    for (const auto& x : m->homothety->translation) t.push_back(write_fraction(x));
    j["homothety"] = Json{{"scale", write_fraction(m->homothety->scale)}, {"translation", t}};
  } else {
    j["homothety"] = nullptr;
  }
  return j;
}

}  // namespace polymix::json_io
