#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "horseshoe/dsl.hpp"
#include "horseshoe/error.hpp"
#include "horseshoe/gallery.hpp"
#include "horseshoe/holder.hpp"
#include "horseshoe/mdim.hpp"
#include "horseshoe/separation.hpp"
#include "horseshoe/serialize.hpp"
#include "scenarios.hpp"

using namespace horseshoe;

namespace {

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kBudget = 3, kAcceptance = 4 };

struct Config {
  std::string map;
  std::string spec;
  unsigned precision = kDefaultPrecision;
  std::size_t K = 10;
  std::size_t n_max = 8;
  std::vector<std::string> eps;
  std::string grid;
  std::vector<std::string> alpha;
  std::size_t workers = 1;
  std::string out;
  std::vector<std::string> points;
  std::string example;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct Source {
  System system;
  std::string id;
  std::string hash;
};

Source load(const Config& c) {
  if (c.map.empty() == c.spec.empty()) throw UsageError("exactly one of --map or --spec is required");
  GalleryOptions go;
  go.precision = c.precision;
  if (!c.map.empty()) return {build_gallery(c.map, go), c.map, fnv1a_hex(c.map)};
  const std::string text = read_file(c.spec);
  dsl::FamilySpec spec = dsl::parse(text);
  if (!spec.mode.rational) spec.mode.bits = c.precision;
  return {dsl::compile(spec), c.spec, fnv1a_hex(text)};
}

const IntervalMap& interval_of(const Source& s) {
  const IntervalMap* m = s.system.interval_map();
  if (!m) throw UsageError("this command needs a one-dimensional map");
  return *m;
}

Provenance provenance(const Source& s, const Config& c) {
  Provenance p;
  p.map_id = s.id;
  p.spec_hash = s.hash;
  p.mode = s.system.is_exact() ? "rational" : "float";
  p.precision = c.precision;
  p.K = c.K;
  p.n_max = c.n_max;
  return p;
}

std::vector<Real> epsilons(const Config& c) {
  if (c.eps.empty()) throw UsageError("--eps is required");
  std::vector<Real> out;
  for (const std::string& e : c.eps) {
    Real v = Real::parse(e);
    if (!definitely_greater(v, Real(0))) throw UsageError("epsilon must be positive: " + e);
    out.push_back(std::move(v));
  }
  return out;
}

Real grid_for(const Config& c, const Real& eps) { return c.grid.empty() ? eps / Real(8) : Real::parse(c.grid); }

bool wants_json(const std::string& out) { return out.size() >= 5 && out.compare(out.size() - 5, 5, ".json") == 0; }

void write(const Config& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw Error(ErrorCode::io, "cannot write " + c.out);
  f << text;
  if (!f) throw Error(ErrorCode::io, "write failed for " + c.out);
}

CurveOptions curve_options(const Config& c) {
  CurveOptions o;
  o.K = c.K;
  o.n_max = c.n_max;
  o.workers = c.workers;
  return o;
}

int cmd_build(const Config& c) {
  const Source s = load(c);
  write(c, map_json(interval_of(s), c.K));
  return kOk;
}

int cmd_eval(const Config& c) {
  const Source s = load(c);
  const IntervalMap& m = interval_of(s);
  std::string out = "x,value,truncated\n";
  for (const std::string& p : c.points) {
    const MapValue v = m.eval(Real::parse(p));
    out += p + "," + (v.value.is_exact() ? v.value.to_string() : v.value.to_string(17)) + "," +
           (v.truncated ? "true" : "false") + "\n";
  }
  write(c, out);
  return kOk;
}

int cmd_count(const Config& c, bool separated) {
  const Source s = load(c);
  CountOptions co;
  co.workers = c.workers;
  std::vector<SepCount> rows;
  for (const Real& eps : epsilons(c)) {
    for (std::size_t n = 1; n <= c.n_max; ++n) {
      const BowenContext ctx{s.system, n};
      const Real h = grid_for(c, eps);
      rows.push_back(separated ? sep_count_greedy(ctx, eps, h, co) : span_count_greedy(ctx, eps, h, co));
      if (separated) {
        rows.push_back(system_lower_bound(s.system, c.K, n, eps));
        rows.push_back(system_upper_bound(s.system, c.K, n, eps));
      }
    }
  }
  write(c, sep_counts_csv(rows));
  return kOk;
}

int cmd_curve(const Config& c) {
  const Source s = load(c);
  const CurveOptions o = curve_options(c);
  if (wants_json(c.out)) {
    write(c, mdim_report_json(run_mdim(s.system, o, c.K), provenance(s, c)));
  } else {
    write(c, curve_csv(mdim_curve(s.system, o)));
  }
  return kOk;
}

int cmd_predict(const Config& c) {
  const Source s = load(c);
  const IntervalMap& m = interval_of(s);
  const PredictorSeries series = predictor_misiu(m, c.K);
  if (wants_json(c.out)) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json points = nlohmann::ordered_json::array();
    for (const PredictorPoint& p : series.points) {
      points.push_back({{"index", p.index}, {"component", p.component}, {"value", p.value.to_double()}});
    }
    j["points"] = points;
    const auto lim = series.limit();
    j["limit"] = lim ? nlohmann::ordered_json(lim->to_double()) : nlohmann::ordered_json(nullptr);
    write(c, j.dump(2) + "\n");
    return kOk;
  }
  std::string out = "index,component,log_length,log_legs,value\n";
  for (const PredictorPoint& p : series.points) {
    out += std::to_string(p.index) + "," + std::to_string(p.component) + "," + format_double(p.log_length.to_double()) +
           "," + format_double(p.log_legs.to_double()) + "," + format_double(p.value.to_double()) + "\n";
  }
  write(c, out);
  return kOk;
}

int cmd_holder(const Config& c) {
  const Source s = load(c);
  const IntervalMap& m = interval_of(s);
  const Provenance p = provenance(s, c);
  if (c.alpha.empty()) {
    SamplePlan plan;
    plan.K = c.K;
    plan.workers = c.workers;
    write(c, holder_report_json(modulus_check(m, Modulus::omega(), plan), p));
    return kOk;
  }
  std::string out;
  for (const std::string& a : c.alpha) out += holder_report_json(holder_verdict(m, Real::parse(a), c.K, c.workers), p);
  write(c, out);
  return kOk;
}

int cmd_reproduce(const Config& c) {
  const std::vector<int> ids = scenarios::criteria_for_example(c.example);
  scenarios::ScenarioOptions o;
  o.workers = c.workers;
  std::vector<scenarios::CriterionResult> results;
  bool all = true;
  for (int id : ids) {
    results.push_back(scenarios::run_criterion(id, o));
    const auto& r = results.back();
    std::fprintf(stderr, "%s %d %s: %s\n", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(), r.detail.c_str());
    all = all && r.pass;
  }
  write(c, scenarios::results_json(c.example, results, o));
  return all ? kOk : kAcceptance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-scale metric mean dimension and Hölder diagnostics for horseshoe interval maps"};
  app.require_subcommand(1);
  Config c;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--map", c.map, "gallery map, e.g. phi_a:r=1");
    sub->add_option("--spec", c.spec, "schedule file (.hsf)")->check(CLI::ExistingFile);
    sub->add_option("--precision", c.precision, "float precision in bits")->check(CLI::Range(32u, 1u << 16));
    sub->add_option("--K", c.K, "blocks, scales or horseshoes considered")->check(CLI::PositiveNumber);
    sub->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", c.out, "output path (.csv or .json)");
  };

  auto* build = app.add_subcommand("build", "describe the blocks of a map");
  common(build);
  auto* eval = app.add_subcommand("eval", "evaluate a map at points");
  common(eval);
  eval->add_option("points", c.points, "points in [0,1]")->required();
  auto* sep = app.add_subcommand("sep", "separated-set counts and certified bounds");
  common(sep);
  auto* span = app.add_subcommand("span", "spanning-set counts");
  common(span);
  for (auto* sub : {sep, span}) {
    sub->add_option("--nmax", c.n_max, "largest orbit length")->check(CLI::PositiveNumber);
    sub->add_option("--eps", c.eps, "scales, e.g. 1/9")->delimiter(',');
    sub->add_option("--grid", c.grid, "grid step (default eps/8)");
  }
  auto* curve = app.add_subcommand("curve", "mean dimension curve (.csv) or report (.json)");
  common(curve);
  auto* sweep = app.add_subcommand("sweep", "mean dimension curve as CSV");
  common(sweep);
  for (auto* sub : {curve, sweep}) sub->add_option("--nmax", c.n_max, "largest orbit length")->check(CLI::PositiveNumber);
  auto* predict = app.add_subcommand("predict", "horseshoe predictor series");
  common(predict);
  auto* holder = app.add_subcommand("holder", "Hölder verdicts, or the omega modulus without --alpha");
  common(holder);
  holder->add_option("--alpha", c.alpha, "exponents")->delimiter(',');
  auto* reproduce = app.add_subcommand("reproduce", "run the scenarios behind one example");
  reproduce->add_option("example", c.example, "example id")->required();
  reproduce->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
  reproduce->add_option("--out", c.out, "report path (.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*build) return cmd_build(c);
    if (*eval) return cmd_eval(c);
    if (*sep) return cmd_count(c, true);
    if (*span) return cmd_count(c, false);
    if (*curve) return cmd_curve(c);
    if (*sweep) {
      if (wants_json(c.out)) throw UsageError("sweep writes CSV");
      return cmd_curve(c);
    }
    if (*predict) return cmd_predict(c);
    if (*holder) return cmd_holder(c);
    if (*reproduce) return cmd_reproduce(c);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << " (try --grid " << e.suggested_grid_step() << ")\n";
    return kBudget;
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::budget_exceeded: return kBudget;
      case ErrorCode::unknown_id:
      case ErrorCode::invalid_argument: return kUsage;
      default: return kFailure;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
