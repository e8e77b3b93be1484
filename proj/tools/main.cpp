// atcurv: curvature of antitrees from the command line.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>
#include <sstream>

#include "atcurv/errors.hpp"
#include "report.hpp"
#include "suites.hpp"
#include "sweep.hpp"

using namespace atcurv;
using namespace atcurv::cli;

namespace {

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("atcurv");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("ATCURV_LOG")) spdlog::set_level(spdlog::level::from_str(env));
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out_path);
  if (!os) throw InvalidArgument("cannot open '" + out_path + "' for writing");
  os << text;
  spdlog::info("wrote {}", out_path);
}

EdgeClass parse_edge_class(const std::string& s) {
  for (EdgeClass c : {EdgeClass::RadialRoot, EdgeClass::SphericalRoot, EdgeClass::InnerRadial, EdgeClass::InnerSpherical})
    if (to_string(c) == s) return c;
  throw InvalidArgument("unknown edge class '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Bakry-Emery and Ollivier-Ricci curvature of antitrees"};
  app.require_subcommand(1);

  std::string spec, out, measure = "nonnorm", kind = "be", p_text = "0", gen_text, format = "table";
  double tol = 1e-9;
  int jobs = 1;
  bool all = false;

  auto* gen = app.add_subcommand("generate", "Write an antitree in the graph text format");
  gen->add_option("--spec", spec, "Antitree spec, e.g. 2,3,5 or identity:5")->required();
  gen->add_option("--out", out, "Output file");

  auto* curv = app.add_subcommand("curvature", "Curvature sweep over generations");
  curv->add_option("--spec", spec, "Antitree spec")->required();
  curv->add_option("--measure", measure, "norm or nonnorm")->check(CLI::IsMember({"norm", "nonnorm"}));
  curv->add_option("--kind", kind, "be, or or both")->check(CLI::IsMember({"be", "or", "both"}));
  curv->add_option("--p", p_text, "Idleness grid, comma-separated rationals");
  curv->add_option("--gen", gen_text, "Generation range a..b");
  curv->add_option("--format", format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
  curv->add_option("--tol", tol, "Bisection tolerance");
  curv->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  curv->add_flag("--all", all, "Every vertex or edge instead of one per generation and class");
  curv->add_option("--out", out, "Output file");

  std::string suite;
  SuiteOptions sopts;
  std::string delta_text = "1";
  bool all_suites = false;
  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  ver->add_option("suite", suite, "blocks, charpoly, appendixA, appendixB, appendixC, or-formulas or decay");
  ver->add_flag("--all", all_suites, "Run every suite");
  ver->add_option("--delta", delta_text, "delta for the decay suite");
  ver->add_option("--max-generations", sopts.max_generations, "or-formulas: longest antitree");
  ver->add_option("--max-size", sopts.max_size, "or-formulas: largest generation");
  ver->add_option("--tol", sopts.tol, "Bisection tolerance");
  ver->add_option("--out", out, "Output file");

  std::string family = "V3";
  auto* cp = app.add_subcommand("charpoly", "Symbolic characteristic polynomial of A_red");
  cp->add_option("--family", family, "V1, V2 or V3");
  cp->add_option("--measure", measure, "norm or nonnorm")->check(CLI::IsMember({"norm", "nonnorm"}));
  cp->add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));
  cp->add_option("--out", out, "Output file");

  std::string edge_text, cls_text;
  int curve_gen = 1;
  auto* kc = app.add_subcommand("kappa-curve", "Piecewise-linear idleness curve of an edge");
  kc->add_option("--spec", spec, "Antitree spec")->required();
  kc->add_option("--edge", edge_text, "Edge as x,y");
  kc->add_option("--class", cls_text, "radial-root, spherical-root, inner-radial or inner-spherical");
  kc->add_option("--gen", curve_gen, "Generation of the lower endpoint");
  kc->add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));
  kc->add_option("--out", out, "Output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      std::ostringstream os;
      write_graph(os, build_antitree(parse_antitree_spec(spec)));
      emit(os.str(), out);
      return 0;
    }

    if (*curv) {
      RunConfig cfg;
      cfg.spec = spec;
      cfg.measure = parse_measure(measure);
      cfg.kind = parse_kind(kind);
      cfg.p_grid = parse_p_grid(p_text);
      if (!gen_text.empty()) cfg.generations = parse_generation_range(gen_text);
      cfg.format = parse_format(format);
      cfg.tol = tol;
      cfg.jobs = jobs;
      cfg.all = all;
      spdlog::info("sweep over {} with {} worker(s)", spec, jobs);
      const SweepReport report = run_sweep(cfg);
      emit(render(report, cfg), out);
      for (const auto& r : report.bakry_emery)
        if (!r.error.empty()) spdlog::error("generation {} vertex {}: {}", r.generation, r.vertex, r.error);
      for (const auto& r : report.ollivier)
        if (!r.error.empty()) spdlog::error("edge {} {} at generation {}: {}", r.x, r.y, r.k, r.error);
      return report.ok() ? 0 : 1;
    }

    if (*ver) {
      sopts.delta = Rational::parse(delta_text);
      std::vector<std::string> names;
      if (all_suites)
        names = suite_names();
      else if (!suite.empty())
        names = {suite};
      else
        throw InvalidArgument("verify: name a suite or pass --all");
      std::ostringstream os;
      bool ok = true;
      for (const auto& n : names) {
        spdlog::info("running suite {}", n);
        const SuiteResult r = run_suite(n, sopts);
        for (const auto& l : r.lines) os << "  " << l << '\n';
        os << (r.pass ? "PASS " : "FAIL ") << n;
        if (!r.pass) os << ": " << r.first_failure;
        os << '\n';
        ok = ok && r.pass;
      }
      emit(os.str(), out);
      return ok ? 0 : 1;
    }

    if (*cp) {
      const auto sym = symbolic_antitree_charpoly(parse_antitree_family(family), parse_measure(measure));
      if (format == "json") {
        emit(to_json(sym).dump(2) + "\n", out);
      } else {
        std::ostringstream os;
        os << "family " << to_string(sym.family) << ", measure " << measure_label(sym.measure) << ", scale "
           << sym.scale.to_string("n") << '\n';
        for (int k = sym.dimension - 1; k >= 1; --k) os << "p" << k << "(n) = " << sym.p[static_cast<std::size_t>(k)].to_string("n") << '\n';
        emit(os.str(), out);
      }
      return 0;
    }

    if (*kc) {
      const Graph g = build_antitree(parse_antitree_spec(spec));
      int x = -1, y = -1;
      if (!edge_text.empty()) {
        char sep = 0;
        std::istringstream is(edge_text);
        if (!(is >> x >> sep >> y) || sep != ',') throw InvalidArgument("bad edge '" + edge_text + "' (expected x,y)");
      } else if (!cls_text.empty()) {
        const auto e = representative_edge(g, parse_edge_class(cls_text), curve_gen);
        if (!e) throw InvalidArgument("no " + cls_text + " edge at generation " + std::to_string(curve_gen));
        x = e->first;
        y = e->second;
      } else {
        throw InvalidArgument("kappa-curve: pass --edge or --class");
      }
      const KappaCurve c = kappa_curve(g, x, y);
      if (format == "json") {
        json j = to_json(c);
        j["x"] = x;
        j["y"] = y;
        emit(j.dump(2) + "\n", out);
      } else {
        std::vector<std::vector<std::string>> rows = {{"from", "to", "slope", "intercept"}};
        for (const auto& s : c.segments) rows.push_back({s.from.short_str(), s.to.short_str(), s.slope.short_str(), s.intercept.short_str()});
        emit(format_table(rows), out);
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
