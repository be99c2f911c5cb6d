// polymix: mixing analysis for Laurent polynomials over F_p.
//
// Exit status: 0 success, 1 parse error, 2 degenerate input, 3 budget exceeded,
// 4 internal inconsistency.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "polymix/report.hpp"

namespace {

using polymix::json_io::Json;

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw polymix::ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw polymix::ParseError(path + ": " + e.what());
  }
}

// Inline JSON when the argument starts with '[' or '{', a file path otherwise.
Json inline_or_file(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '[' || arg.front() == '{')) {
    try {
      return Json::parse(arg);
    } catch (const Json::parse_error& e) {
      throw polymix::ParseError(e.what());
    }
  }
  return read_json(arg);
}

std::vector<polymix::CylinderSpec> read_cylinders(const std::string& arg, const polymix::LaurentPoly& f) {
  const Json j = inline_or_file(arg);
  std::vector<polymix::CylinderSpec> out;
  if (j.is_array()) {
    for (const auto& c : j) out.push_back(polymix::json_io::parse_cylinder(c, f.field(), f.dim()));
  } else {
    out.push_back(polymix::json_io::parse_cylinder(j, f.field(), f.dim()));
  }
  return out;
}

// "a..b" or "a,b,c".
std::vector<std::int64_t> parse_k_range(const std::string& s) {
  std::vector<std::int64_t> ks;
  try {
    if (auto dots = s.find(".."); dots != std::string::npos) {
      const auto a = std::stoll(s.substr(0, dots)), b = std::stoll(s.substr(dots + 2));
      for (auto k = a; k <= b; ++k) ks.push_back(k);
    } else {
      std::stringstream in(s);
      std::string item;
      while (std::getline(in, item, ',')) ks.push_back(std::stoll(item));
    }
  } catch (const std::logic_error&) {
    throw polymix::ParseError("bad k range '" + s + "'");
  }
  if (ks.empty()) throw polymix::ParseError("empty k range");
  return ks;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace polymix;
  CLI::App app{"Mixing analysis for Laurent polynomials over F_p"};
  app.require_subcommand(1);

  std::string poly_file, skeleton_file, cylinder_arg, shifts_arg, shape_arg, tuple_arg, k_range = "1..8";
  unsigned max_k = report::kDefaultCertifyDepth;
  double tolerance = kRedrawTolerance;
  std::int64_t K = 0, radius = 1, degree = 0;
  std::size_t r = 2;

  auto* analyze = app.add_subcommand("analyze", "full report: hull, tightness, bounds, certificate");
  analyze->add_option("poly", poly_file, "polynomial JSON")->required();
  analyze->add_option("--max-k", max_k, "certificate depth");

  auto* tight = app.add_subcommand("tightness", "dimension of the parallel-redrawing space");
  tight->add_option("skeleton", skeleton_file, "skeleton JSON")->required();
  tight->add_option("--tolerance", tolerance, "rank tolerance for floating-point input");

  auto* bounds = app.add_subcommand("bounds", "mixing-order bounds");
  bounds->add_option("poly", poly_file, "polynomial JSON")->required();

  auto* certify = app.add_subcommand("certify", "Frobenius non-mixing-shape certificate");
  certify->add_option("poly", poly_file, "polynomial JSON")->required();
  certify->add_option("--max-k", max_k, "largest Frobenius exponent to verify");

  auto* measure = app.add_subcommand("measure", "Haar measure of a cylinder or joint event");
  measure->add_option("poly", poly_file, "polynomial JSON")->required();
  measure->add_option("--cylinder", cylinder_arg, "cylinder JSON (file or inline; a list for several)")->required();
  measure->add_option("--shifts", shifts_arg, "list of shift vectors (file or inline)");

  auto* experiment = app.add_subcommand("experiment", "joint measure against product along k·shape");
  experiment->add_option("poly", poly_file, "polynomial JSON")->required();
  experiment->add_option("--shape", shape_arg, "list of shape points (file or inline)")->required();
  experiment->add_option("--cylinder", cylinder_arg, "cylinder JSON, one or one per shape point")->required();
  experiment->add_option("--k-range", k_range, "a..b or a,b,c");

  auto* detect = app.add_subcommand("detect", "match a tuple against a redrawing of N(f)");
  detect->add_option("poly", poly_file, "polynomial JSON")->required();
  detect->add_option("--tuple", tuple_arg, "list of points (file or inline)")->required();
  detect->add_option("--K", K, "perturbation tolerance");

  auto* search = app.add_subcommand("search", "bounded search for relations along p-power dilations");
  search->add_option("poly", poly_file, "polynomial JSON")->required();
  search->add_option("--r", r, "number of shape points");
  search->add_option("--radius", radius, "shape points lie in [-radius, radius]^d");
  search->add_option("--degree", degree, "coefficient degree bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    Json out;
    auto poly = [&] { return json_io::parse_poly(read_json(poly_file)); };
    if (*analyze) {
      out = report::analyze(poly(), max_k);
    } else if (*tight) {
      out = report::tightness(json_io::parse_skeleton(read_json(skeleton_file)), tolerance);
    } else if (*bounds) {
      out = report::bounds(poly());
    } else if (*certify) {
      out = report::certify(poly(), max_k);
    } else if (*measure) {
      const auto f = poly();
      std::vector<ExponentVec> shifts;
      if (!shifts_arg.empty()) shifts = json_io::parse_points(inline_or_file(shifts_arg), f.dim());
      out = report::measure(f, read_cylinders(cylinder_arg, f), shifts);
    } else if (*experiment) {
      const auto f = poly();
      const auto shape = json_io::parse_points(inline_or_file(shape_arg), f.dim());
      out = report::experiment(f, shape, read_cylinders(cylinder_arg, f), parse_k_range(k_range));
    } else if (*detect) {
      const auto f = poly();
      out = report::detect(f, json_io::parse_points(inline_or_file(tuple_arg), f.dim()), K);
    } else if (*search) {
      out = report::search(poly(), r, radius, degree);
    }
    std::cout << out.dump(2) << '\n';
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 1;
  } catch (const DegenerateInput& e) {
    std::cerr << "degenerate input: " << e.what() << '\n';
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 3;
  } catch (const InternalInconsistency& e) {
    std::cerr << "internal inconsistency: " << e.what() << '\n';
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
