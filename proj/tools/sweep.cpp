#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <sstream>
#include <thread>

#include "atcurv/errors.hpp"

namespace atcurv::cli {

CurvatureKind parse_kind(const std::string& text) {
  if (text == "be") return CurvatureKind::BakryEmery;
  if (text == "or") return CurvatureKind::Ollivier;
  if (text == "both") return CurvatureKind::Both;
  throw InvalidArgument("unknown curvature kind '" + text + "' (expected be, or or both)");
}

OutputFormat parse_format(const std::string& text) {
  if (text == "json") return OutputFormat::Json;
  if (text == "csv") return OutputFormat::Csv;
  if (text == "table") return OutputFormat::Table;
  throw InvalidArgument("unknown format '" + text + "' (expected json, csv or table)");
}

std::pair<int, int> parse_generation_range(const std::string& text) {
  try {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
      const int k = std::stoi(text);
      return {k, k};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::logic_error&) {
    throw InvalidArgument("bad generation range '" + text + "' (expected a..b)");
  }
}

std::vector<Rational> parse_p_grid(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const Rational p = Rational::parse(item);
    if (p.sign() < 0 || p > Rational(1)) throw InvalidArgument("idleness " + item + " is outside [0,1]");
    out.push_back(p);
  }
  if (out.empty()) throw InvalidArgument("empty idleness grid");
  return out;
}

bool SweepReport::ok() const {
  for (const auto& r : bakry_emery)
    if (!r.error.empty()) return false;
  for (const auto& r : ollivier)
    if (!r.error.empty()) return false;
  return true;
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& task) {
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, count); ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < count; i = next++) task(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

namespace {

// Generations whose records stay clear of a truncation cut; radial edges at
// generation k also touch k+1.
std::pair<int, int> default_range(const Graph& g, int low_margin, int high_margin) {
  const auto& spec = *g.antitree();
  int lo = spec.first_generation, hi = spec.last_generation();
  if (spec.first_generation > 1) lo += low_margin;
  if (spec.truncated) hi -= high_margin;
  return {lo, hi};
}

}  // namespace

SweepReport run_sweep(const RunConfig& config) {
  const Graph g = build_antitree(parse_antitree_spec(config.spec));
  const VertexMeasure mu =
      config.measure == VertexMeasure::Kind::Normalized ? VertexMeasure::normalized() : VertexMeasure::non_normalized();
  SweepReport report;

  if (config.kind != CurvatureKind::Ollivier) {
    const auto [lo, hi] = config.generations.value_or(default_range(g, 2, 2));
    for (int k = lo; k <= hi; ++k) {
      const auto verts = g.generation_vertices(k);
      if (verts.empty()) {
        report.bakry_emery.push_back({k, -1, std::nullopt, "generation " + std::to_string(k) + " does not exist"});
        continue;
      }
      const std::size_t take = config.all ? verts.size() : 1;
      for (std::size_t i = 0; i < take; ++i) report.bakry_emery.push_back({k, verts[i], std::nullopt, ""});
    }
    CurvatureOptions opts;
    opts.tol = config.tol;
    parallel_for(report.bakry_emery.size(), config.jobs, [&](std::size_t i) {
      auto& rec = report.bakry_emery[i];
      if (rec.vertex < 0) return;
      try {
        rec.result = curvature_infinity(g, mu, rec.vertex, opts);
      } catch (const Error& e) {
        rec.error = e.what();
      }
    });
  }

  if (config.kind != CurvatureKind::BakryEmery) {
    const auto [lo, hi] = config.generations.value_or(default_range(g, 1, 2));
    std::vector<OrRecord> tasks;
    for (int k = lo; k <= hi; ++k) {
      if (g.generation_vertices(k).empty()) {
        OrRecord rec;
        rec.k = k;
        rec.error = "generation " + std::to_string(k) + " does not exist";
        tasks.push_back(rec);
        continue;
      }
      const bool root = g.antitree()->first_generation == 1 && k == 1;
      const EdgeClass radial = root ? EdgeClass::RadialRoot : EdgeClass::InnerRadial;
      const EdgeClass spherical = root ? EdgeClass::SphericalRoot : EdgeClass::InnerSpherical;
      std::vector<std::pair<EdgeClass, std::pair<int, int>>> edges;
      if (config.all) {
        const auto here = g.generation_vertices(k);
        const auto next = g.generation_vertices(k + 1);
        for (std::size_t i = 0; i < here.size(); ++i) {
          for (std::size_t j = i + 1; j < here.size(); ++j) edges.push_back({spherical, {here[i], here[j]}});
          for (int y : next) edges.push_back({radial, {here[i], y}});
        }
        std::stable_sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      } else {
        for (EdgeClass c : {radial, spherical})
          if (auto e = representative_edge(g, c, k)) edges.push_back({c, *e});
      }
      for (const auto& [cls, e] : edges)
        for (const auto& p : config.p_grid) {
          OrRecord rec;
          rec.cls = cls;
          rec.k = k;
          rec.x = e.first;
          rec.y = e.second;
          rec.p = p;
          tasks.push_back(rec);
        }
    }
    report.ollivier = std::move(tasks);
    parallel_for(report.ollivier.size(), config.jobs, [&](std::size_t i) {
      auto& rec = report.ollivier[i];
      if (rec.x < 0) return;
      try {
        rec.kappa = kappa_p(g, rec.x, rec.y, rec.p);
      } catch (const Error& e) {
        rec.error = e.what();
      }
    });
  }
  return report;
}

std::string render(const SweepReport& report, const RunConfig& config) {
  std::ostringstream os;
  const bool be = config.kind != CurvatureKind::Ollivier;
  const bool orc = config.kind != CurvatureKind::BakryEmery;

  if (config.format == OutputFormat::Json) {
    json out = json::object();
    if (be) {
      json arr = json::array();
      for (const auto& r : report.bakry_emery) {
        json j = r.result ? to_json(*r.result) : json{{"vertex", r.vertex}, {"generation", r.generation}};
        if (!r.error.empty()) j["error"] = r.error;
        arr.push_back(j);
      }
      out["bakry_emery"] = arr;
    }
    if (orc) {
      json arr = json::array();
      for (const auto& r : report.ollivier) {
        json j = {{"edge_class", to_string(r.cls)}, {"k", r.k}, {"x", r.x}, {"y", r.y}, {"p", r.p.str()}, {"method", r.method}};
        j["kappa"] = r.kappa ? json(r.kappa->str()) : json(nullptr);
        if (!r.error.empty()) j["error"] = r.error;
        arr.push_back(j);
      }
      out["ollivier"] = arr;
    }
    os << out.dump(2) << '\n';
    return os.str();
  }

  if (config.format == OutputFormat::Csv) {
    if (be) {
      os << "vertex,generation,measure,K,K_lo,K_hi,positive,error\n";
      for (const auto& r : report.bakry_emery) {
        os << r.vertex << ',' << r.generation << ',';
        if (r.result)
          os << r.result->measure << ',' << decimal(r.result->K) << ',' << r.result->lo.str() << ',' << r.result->hi.str() << ','
             << (r.result->positive ? "true" : "false");
        else
          os << ",,,,";
        os << ',' << r.error << '\n';
      }
      if (orc) os << '\n';
    }
    if (orc) {
      os << "edge_class,k,x,y,p_num,p_den,kappa_num,kappa_den,method\n";
      for (const auto& r : report.ollivier) {
        if (!r.kappa) continue;
        os << to_string(r.cls) << ',' << r.k << ',' << r.x << ',' << r.y << ',' << r.p.numerator().get_str() << ','
           << r.p.denominator().get_str() << ',' << r.kappa->numerator().get_str() << ','
           << r.kappa->denominator().get_str() << ',' << r.method << '\n';
      }
    }
    return os.str();
  }

  if (be) {
    std::vector<std::vector<std::string>> rows = {{"generation", "vertex", "measure", "K", "positive"}};
    for (const auto& r : report.bakry_emery) {
      if (r.result)
        rows.push_back({std::to_string(r.generation), std::to_string(r.vertex), r.result->measure, decimal(r.result->K),
                        r.result->positive ? "yes" : "no"});
      else
        rows.push_back({std::to_string(r.generation), std::to_string(r.vertex), "-", "error: " + r.error, "-"});
    }
    os << format_table(rows);
    if (orc) os << '\n';
  }
  if (orc) {
    std::vector<std::vector<std::string>> rows = {{"edge_class", "k", "x", "y", "p", "kappa"}};
    for (const auto& r : report.ollivier)
      rows.push_back({to_string(r.cls), std::to_string(r.k), std::to_string(r.x), std::to_string(r.y), decimal(r.p),
                      r.kappa ? decimal(*r.kappa) : "error: " + r.error});
    os << format_table(rows);
  }
  return os.str();
}

}  // namespace atcurv::cli
