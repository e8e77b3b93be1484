#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "atcurv/bakry_emery.hpp"
#include "atcurv/block_reduction.hpp"
#include "atcurv/ollivier.hpp"

namespace atcurv::cli {

using nlohmann::json;

/// "num/den" strings, lowest degree first.
json poly_json(const PolyRational& p);

json to_json(const CurvatureResult& r);
json to_json(const KappaCurve& c);
json to_json(const SymbolicCharPoly& s);

/// 12 significant digits for human-readable tables.
std::string decimal(double v);
std::string decimal(const Rational& r);

/// Fixed-width text table; the first row is the header.
std::string format_table(const std::vector<std::vector<std::string>>& rows);

std::string measure_label(VertexMeasure::Kind k);
VertexMeasure::Kind parse_measure(const std::string& text);

}  // namespace atcurv::cli
