#include "report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "atcurv/errors.hpp"

namespace atcurv::cli {

json poly_json(const PolyRational& p) {
  json out = json::array();
  for (int k = 0; k <= p.degree(); ++k) out.push_back(p.coeff(k).str());
  return out;
}

json to_json(const CurvatureResult& r) {
  json j;
  j["vertex"] = r.vertex;
  j["generation"] = r.generation ? json(*r.generation) : json(nullptr);
  j["measure"] = r.measure;
  j["K"] = r.K;
  j["K_bracket"] = {r.lo.str(), r.hi.str()};
  j["positive"] = r.positive;
  j["certified"] = r.certified;
  j["method"] = r.method;
  return j;
}

json to_json(const KappaCurve& c) {
  json segs = json::array();
  for (const auto& s : c.segments)
    segs.push_back({{"from", s.from.str()}, {"to", s.to.str()}, {"slope", s.slope.str()}, {"intercept", s.intercept.str()}});
  json bps = json::array();
  for (const auto& b : c.breakpoints()) bps.push_back(b.str());
  return {{"breakpoints", bps}, {"segments", segs}};
}

json to_json(const SymbolicCharPoly& s) {
  json coeffs = json::object();
  for (int k = 1; k < s.dimension; ++k) coeffs["p" + std::to_string(k)] = poly_json(s.p[static_cast<std::size_t>(k)]);
  json j;
  j["family"] = to_string(s.family);
  j["measure"] = measure_label(s.measure);
  j["dimension"] = s.dimension;
  j["scale"] = poly_json(s.scale);
  j["coefficients"] = coeffs;
  return j;
}

std::string decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string decimal(const Rational& r) { return decimal(r.to_double()); }

std::string format_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], row[i].size());
    }
  std::ostringstream os;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << row[i];
      if (i + 1 < row.size()) os << std::string(width[i] - row[i].size() + 2, ' ');
    }
    os << '\n';
  }
  return os.str();
}

std::string measure_label(VertexMeasure::Kind k) {
  switch (k) {
    case VertexMeasure::Kind::Normalized: return "norm";
    case VertexMeasure::Kind::NonNormalized: return "nonnorm";
    case VertexMeasure::Kind::Custom: return "custom";
  }
  return "custom";
}

VertexMeasure::Kind parse_measure(const std::string& text) {
  if (text == "norm" || text == "normalized") return VertexMeasure::Kind::Normalized;
  if (text == "nonnorm" || text == "non-normalized") return VertexMeasure::Kind::NonNormalized;
  throw InvalidArgument("unknown measure '" + text + "' (expected norm or nonnorm)");
}

}  // namespace atcurv::cli
