#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "report.hpp"

namespace atcurv::cli {

enum class CurvatureKind { BakryEmery, Ollivier, Both };
enum class OutputFormat { Json, Csv, Table };

CurvatureKind parse_kind(const std::string& text);
OutputFormat parse_format(const std::string& text);
/// "a..b" or a single generation "k".
std::pair<int, int> parse_generation_range(const std::string& text);
/// Comma-separated rationals in [0,1].
std::vector<Rational> parse_p_grid(const std::string& text);

struct RunConfig {
  std::string spec;
  VertexMeasure::Kind measure = VertexMeasure::Kind::NonNormalized;
  CurvatureKind kind = CurvatureKind::BakryEmery;
  std::optional<std::pair<int, int>> generations;
  std::vector<Rational> p_grid{Rational(0)};
  OutputFormat format = OutputFormat::Table;
  double tol = 1e-9;
  int jobs = 1;
  bool all = false;
};

struct BeRecord {
  int generation = 0;
  int vertex = -1;
  std::optional<CurvatureResult> result;
  std::string error;
};

struct OrRecord {
  EdgeClass cls = EdgeClass::RadialRoot;
  int k = 0;
  int x = -1, y = -1;
  Rational p;
  std::optional<Rational> kappa;
  std::string method = "lp";
  std::string error;
};

struct SweepReport {
  std::vector<BeRecord> bakry_emery;
  std::vector<OrRecord> ollivier;
  bool ok() const;
};

SweepReport run_sweep(const RunConfig& config);
std::string render(const SweepReport& report, const RunConfig& config);

/// Runs tasks on `jobs` threads; each task writes only its own slot.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& task);

}  // namespace atcurv::cli
