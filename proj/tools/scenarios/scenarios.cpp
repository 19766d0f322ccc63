#include "scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include <json.hpp>

#include "horseshoe/dsl.hpp"
#include "horseshoe/error.hpp"
#include "horseshoe/gallery.hpp"
#include "horseshoe/holder.hpp"
#include "horseshoe/mdim.hpp"
#include "horseshoe/separation.hpp"
#include "horseshoe/serialize.hpp"

namespace horseshoe::scenarios {

namespace {

// Pinned tolerances.
constexpr double kPredictorExact = 1e-12;
constexpr double kFiniteScaleBand = 0.07;
constexpr double kHazardPredictorMax = 0.1;
constexpr double kHazardUpperMax = 0.12;
constexpr double kTowerPredictorMin = 0.99;
constexpr double kDdfMax = 0.05;
constexpr double kGapPredictorBand = 0.03;
constexpr double kGrowthRelative = 0.20;
constexpr double kLegPairRelative = 0.01;
constexpr double kOmegaSupMax = 3.5;
constexpr double kAdjacentSupMax = 3.0 + 1e-6;
constexpr double kAdditivity = 1e-12;
constexpr int kSupplementPhi0b = 14;

constexpr std::size_t kHazardDepth = 30;
constexpr std::size_t kTowerDepth = 5;
constexpr std::size_t kDdfDepth = 10;
constexpr std::size_t kHolderBlocks = 15;
constexpr std::size_t kDslSamples = 1000;
constexpr std::size_t kFuzzMaxBytes = 1024;

using Check = std::function<void(CriterionResult&, const ScenarioOptions&)>;

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

void record(CriterionResult& r, const std::string& name, double value) { r.values.emplace_back(name, value); }

double rel_error(double measured, double expected) { return std::abs(measured - expected) / std::abs(expected); }

// 1. predictor limits of phi_a(r).
void predictor_exactness(CriterionResult& r, const ScenarioOptions&) {
  r.pass = true;
  for (const Real& rate : {Real::ratio(1, 2), Real(1), Real(2)}) {
    const PredictorSeries s = predictor_misiu(phi_a(rate), 10);
    const auto limit = s.limit();
    const double expected = 1.0 / (1.0 + rate.to_double());
    const double got = limit ? limit->to_double() : -1.0;
    record(r, "limit_r=" + rate.to_string(), got);
    r.pass = r.pass && limit && std::abs(got - expected) <= kPredictorExact;
    r.detail += "r=" + rate.to_string() + ": " + fmt(got) + " ";
  }
}

// 2. finite-scale band for phi_a(1).
void finite_scale(CriterionResult& r, const ScenarioOptions& o) {
  CurveOptions c;
  c.K = 10;
  c.n_max = 8;
  c.workers = o.workers;
  const MdimRun run = run_mdim(phi_a(Real(1)), c, 10);
  const double lo = run.report.liminf_est;
  const double hi = run.report.limsup_est;
  record(r, "liminf_est", lo);
  record(r, "limsup_est", hi);
  record(r, "rows", static_cast<double>(run.curve.points.size()));
  r.pass = std::abs(lo - 0.5) <= kFiniteScaleBand && std::abs(hi - 0.5) <= kFiniteScaleBand &&
           run.curve.points.size() == 10 && run.report.upper_certified;
  r.detail = "liminf=" + fmt(lo) + " limsup=" + fmt(hi) + " methods=" + run.curve.points.back().method_lower + "/" +
             run.curve.points.back().method_upper;
}

// 3. hazard map decays to zero.
void zero_mdim(CriterionResult& r, const ScenarioOptions& o) {
  const IntervalMap map = hazard_map();
  const PredictorSeries s = predictor_misiu(map, kHazardDepth);
  const double p = s.points.back().value.to_double();
  CurveOptions c;
  c.K = kHazardDepth;
  c.n_max = 8;
  c.workers = o.workers;
  const MdimCurve curve = mdim_curve(map, c);
  const double upper = curve.points.back().upper_ratio;
  record(r, "predictor_at_30", p);
  record(r, "upper_ratio_at_30", upper);
  record(r, "predictor_limit", s.limit() ? s.limit()->to_double() : -1.0);
  r.pass = p <= kHazardPredictorMax && upper <= kHazardUpperMax;
  r.detail = "p_30=" + fmt(p) + " (need <= 0.1) upper_ratio=" + fmt(upper) + " (need <= 0.12) limit=" +
             fmt(s.limit() ? s.limit()->to_double() : -1.0);
}

// 4. phi01 tends to full mean dimension from above, zero from below.
void full_trend(CriterionResult& r, const ScenarioOptions&) {
  const IntervalMap map = phi_zero_one();
  const PredictorSeries s = predictor_misiu(map, kTowerDepth);
  const double p = s.points.back().value.to_double();
  const DdfEstimate d = ddf_lower(map, kDdfDepth);
  record(r, "predictor_tower_5", p);
  record(r, "ddf_lower", d.value);
  r.pass = s.points.back().index == 3125 && p >= kTowerPredictorMin && d.value <= kDdfMax;
  r.detail = "p(3125)=" + fmt(p) + " ddf=" + fmt(d.value);
}

// 5. gap family varphi(0, 1/2).
void gap_family(CriterionResult& r, const ScenarioOptions&) {
  const IntervalMap map = varphi_ab(Real(0), Real::ratio(1, 2));
  const PredictorSeries s = predictor_misiu(map, kTowerDepth);
  double p = 0.0;
  for (const PredictorPoint& q : s.points) p = std::max(p, q.value.to_double());
  const DdfEstimate d = ddf_lower(map, kDdfDepth);
  record(r, "predictor_limsup_side", p);
  record(r, "ddf_lower", d.value);
  r.pass = std::abs(p - 0.5) <= kGapPredictorBand && d.value <= kDdfMax;
  r.detail = "p=" + fmt(p) + " ddf=" + fmt(d.value);
}

// 6. certified sandwich around the exhaustive oracle on one 3-leg block.
void counting_sandwich(CriterionResult& r, const ScenarioOptions& o) {
  const Block block = uniform_block(Interval(Real(0), Real(1)), LegCount(3));
  const IntervalMap map = IntervalMap::from_blocks("block3", {block});
  CountOptions co;
  co.workers = o.workers;
  std::size_t cases = 0;
  std::size_t bad = 0;
  for (long d : {9L, 27L}) {
    const Real eps = Real::ratio(1, d);
    const Real h = eps / Real(5);
    for (std::size_t n = 1; n <= 5; ++n) {
      const BowenContext ctx{map, n};
      const SepCount lower = sep_lower_itinerary(block, n, eps);
      const SepCount oracle = sep_count_exhaustive(ctx, eps, h, co);
      const SepCount greedy = sep_count_greedy(ctx, eps, h, co);
      const SepCount upper = span_upper_lipschitz(LegCount(3), n, eps, Real(1));
      const bool ok = *lower.exact <= *oracle.exact && *oracle.exact <= *upper.exact && *greedy.exact == *oracle.exact;
      ++cases;
      if (!ok) {
        ++bad;
        r.detail += "n=" + std::to_string(n) + " eps=1/" + std::to_string(d) + ": " + lower.count_string() + " " +
                    oracle.count_string() + " " + greedy.count_string() + " " + upper.count_string() + "; ";
      }
    }
  }
  record(r, "cases", static_cast<double>(cases));
  record(r, "violations", static_cast<double>(bad));
  r.pass = bad == 0;
  if (r.detail.empty()) r.detail = std::to_string(cases) + " cases, lower <= oracle <= upper and greedy == oracle";
}

std::vector<std::pair<std::string, System>> instance_maps() {
  return {{"identity", IntervalMap::identity()},
          {"block3", IntervalMap::from_blocks("block3", {uniform_block(Interval(Real(0), Real(1)), LegCount(3))})},
          {"block5", IntervalMap::from_blocks("block5", {uniform_block(Interval(Real(0), Real(1)), LegCount(5))})},
          {"phi_a", phi_a(Real(1))},
          {"hazard", hazard_map()},
          {"phi_beta", phi_beta(Real(2))},
          {"psi_b", build_gallery("psi_b:b=1,n=2")}};
}

// 7. span(eps) <= sep(eps) <= span(eps/2).
void separation_inequalities(CriterionResult& r, const ScenarioOptions& o) {
  CountOptions co;
  co.workers = o.workers;
  std::size_t cases = 0;
  std::size_t bad = 0;
  for (const auto& [name, system] : instance_maps()) {
    for (std::size_t n : {1, 2, 3}) {
      for (long d : {4L, 8L, 16L}) {
        if (system.dimension() > 1 && d > 8) continue;
        const Real eps = Real::ratio(1, d);
        const Real h = Real::ratio(1, 8 * d);
        const BowenContext ctx{system, n};
        const double span = span_count_greedy(ctx, eps, h, co).log_value();
        const double sep = sep_count_greedy(ctx, eps, h, co).log_value();
        const double span_half = span_count_greedy(ctx, eps / Real(2), h, co).log_value();
        ++cases;
        if (span > sep || sep > span_half) {
          ++bad;
          r.detail += name + " n=" + std::to_string(n) + " eps=1/" + std::to_string(d) + "; ";
        }
      }
    }
  }
  record(r, "instances", static_cast<double>(cases));
  record(r, "violations", static_cast<double>(bad));
  r.pass = cases >= 50 && bad == 0;
  if (r.detail.empty()) r.detail = std::to_string(cases) + " instances, no violations";
}

// 8. Hölder frontier of phi_a(1).
void holder_frontier(CriterionResult& r, const ScenarioOptions& o) {
  const IntervalMap map = phi_a(Real(1));
  r.pass = true;
  for (const char* a : {"0.45", "0.5", "0.55", "0.6"}) {
    const Real alpha = Real::parse(a);
    const HolderReport h = holder_verdict(map, alpha, kHolderBlocks, o.workers);
    const bool want_bounded = alpha.to_double() <= 0.5;
    bool ok = (h.verdict == Verdict::bounded) == want_bounded;
    if (!want_bounded) {
      const double expected = (2.0 * alpha.to_double() - 1.0) * std::log(3.0);
      ok = ok && rel_error(h.growth_fit, expected) <= kGrowthRelative;
    }
    record(r, std::string("growth_alpha=") + a, h.growth_fit);
    r.pass = r.pass && ok;
    r.detail += std::string(a) + ":" + to_string(h.verdict) + "(" + fmt(h.growth_fit) + ") ";
  }
}

// 9. phi_beta(2) is not Hölder for any exponent.
void non_holder(CriterionResult& r, const ScenarioOptions& o) {
  const IntervalMap map = phi_beta(Real(2));
  r.pass = true;
  for (const char* a : {"0.1", "0.3", "0.5", "0.7", "0.9"}) {
    const HolderReport h = holder_verdict(map, Real::parse(a), kHolderBlocks, o.workers);
    r.pass = r.pass && h.verdict == Verdict::diverging;
    r.detail += std::string(a) + ":" + to_string(h.verdict) + " ";
  }
  const double C = 6.0 / (M_PI * M_PI);
  const std::vector<Block> blocks = map.blocks(12);
  double worst = 0.0;
  for (const char* a : {"0.1", "0.3", "0.5", "0.7", "0.9"}) {
    const Real alpha = Real::parse(a);
    const double al = alpha.to_double();
    for (std::size_t n = 2; n <= 12; ++n) {
      const Block& b = blocks[n - 1];
      const Real x = b.interval().left();
      const Real y = x + b.critical_scale();
      const double got = holder_ratio(map, x, y, Modulus::power(alpha)).to_double();
      const double expected = std::pow(3.0, al * n) * std::pow(C, 1.0 - al) / std::pow(double(n), 2.0 * (1.0 - al));
      worst = std::max(worst, rel_error(got, expected));
    }
  }
  record(r, "worst_leg_pair_rel_error", worst);
  r.pass = r.pass && worst <= kLegPairRelative;
  r.detail += "leg-pair rel err " + fmt(worst);
}

// 10. omega bound for the hazard map.
void modulus_bound(CriterionResult& r, const ScenarioOptions& o) {
  SamplePlan plan;
  plan.K = kHazardDepth;
  plan.workers = o.workers;
  const HolderReport h = modulus_check(hazard_map(), Modulus::omega(), plan);
  record(r, "sup_ratio", h.sup_ratio);
  record(r, "adjacent_sup", h.adjacent_sup);
  r.pass = h.sup_ratio <= kOmegaSupMax && h.adjacent_sup <= kAdjacentSupMax;
  r.detail = "sup=" + fmt(h.sup_ratio) + " adjacent=" + fmt(h.adjacent_sup) + " verdict=" + to_string(h.verdict);
}

// 11. product additivity.
void product_additivity(CriterionResult& r, const ScenarioOptions& o) {
  CurveOptions c;
  c.K = 6;
  c.n_max = 4;
  c.workers = o.workers;
  const MdimRun run = run_mdim(build_gallery("psi_b:b=1,n=2"), c, 10);
  r.pass = run.report.factor_predictors.size() == 2 && run.report.predictor_misiu.has_value();
  for (std::size_t i = 0; i < run.report.factor_predictors.size(); ++i) {
    const double f = run.report.factor_predictors[i];
    record(r, "factor_" + std::to_string(i), f);
    r.pass = r.pass && std::abs(f - 0.5) <= kAdditivity;
    r.detail += "factor" + std::to_string(i) + "=" + fmt(f) + " ";
  }
  const double sum = run.report.predictor_misiu.value_or(-1.0);
  record(r, "sum", sum);
  r.pass = r.pass && std::abs(sum - 1.0) <= kAdditivity;
  r.detail += "sum=" + fmt(sum);
}

bool same_value(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return a.rational() == b.rational();
  return !definitely_less(a, b) && !definitely_greater(a, b);
}

std::string mutate(std::string s, std::mt19937_64& rng) {
  static const std::string alphabet =
      "familysegmentshorseshoewherealltowerdefaultidentitymoderationalfloat()kjn=.:+-*/^<>!#0123456789 \n\t";
  const int edits = 1 + static_cast<int>(rng() % 6);
  for (int i = 0; i < edits; ++i) {
    const std::size_t p = rng() % (s.size() + 1);
    switch (rng() % 4) {
      case 0: s.insert(p, 1, alphabet[rng() % alphabet.size()]); break;
      case 1:
        if (p < s.size()) s.erase(p, 1);
        break;
      case 2:
        if (p < s.size()) s[p] = static_cast<char>(rng() % 256);
        break;
      default: {
        const std::size_t q = rng() % (s.size() + 1);
        s.insert(p, s.substr(std::min(p, q), 1 + rng() % 16));
      }
    }
  }
  if (s.size() > kFuzzMaxBytes) s.resize(kFuzzMaxBytes);
  return s;
}

std::string random_bytes(std::mt19937_64& rng) {
  std::string s(rng() % (kFuzzMaxBytes + 1), '\0');
  for (char& c : s) c = static_cast<char>(rng() % 256);
  return s;
}

// 12. schedule-language fidelity.
void dsl_fidelity(CriterionResult& r, const ScenarioOptions& o) {
  std::size_t mismatches = 0;
  std::size_t round_trip_failures = 0;
  std::mt19937_64 rng(12);
  for (const GallerySpec& g : gallery_specs()) {
    const dsl::FamilySpec spec = dsl::parse(g.text);
    if (!dsl::same_spec(spec, dsl::parse(dsl::emit(spec)))) ++round_trip_failures;
    const IntervalMap compiled = dsl::compile(spec);
    const System reference = build_gallery(g.gallery);
    const IntervalMap& ref = *reference.interval_map();
    for (std::size_t i = 0; i < kDslSamples; ++i) {
      const Real x = Real(mpq_class(mpz_class(static_cast<unsigned long>(rng() >> 24)), mpz_class(1) << 40));
      const MapValue a = compiled.eval(x);
      const MapValue b = ref.eval(x);
      const bool exact = spec.mode.rational;
      const bool ok = exact ? (a.value.is_exact() && b.value.is_exact() && a.value.rational() == b.value.rational())
                            : same_value(a.value, b.value);
      if (!ok) ++mismatches;
    }
  }
  std::size_t parsed = 0;
  std::size_t rejected = 0;
  std::size_t crashes = 0;
  const auto& specs = gallery_specs();
  for (std::size_t i = 0; i < o.fuzz_inputs; ++i) {
    const std::string input = i % 4 == 3 ? random_bytes(rng) : mutate(specs[i % specs.size()].text, rng);
    try {
      dsl::compile_text(input, {8});
      ++parsed;
    } catch (const Error&) {
      ++rejected;
    } catch (...) {
      ++crashes;
    }
  }
  record(r, "mismatches", static_cast<double>(mismatches));
  record(r, "round_trip_failures", static_cast<double>(round_trip_failures));
  record(r, "fuzz_inputs", static_cast<double>(o.fuzz_inputs));
  record(r, "fuzz_accepted", static_cast<double>(parsed));
  record(r, "fuzz_crashes", static_cast<double>(crashes));
  r.pass = mismatches == 0 && round_trip_failures == 0 && crashes == 0;
  r.detail = std::to_string(gallery_specs().size()) + " families x " + std::to_string(kDslSamples) +
             " points, mismatches=" + std::to_string(mismatches) + ", round-trip failures=" +
             std::to_string(round_trip_failures) + ", fuzz " + std::to_string(o.fuzz_inputs) + " inputs (" +
             std::to_string(parsed) + " accepted, " + std::to_string(crashes) + " crashes)";
}

// Every serialized output for one worker count.
std::vector<std::pair<std::string, std::string>> outputs_for(std::size_t workers) {
  std::vector<std::pair<std::string, std::string>> out;
  CurveOptions c;
  c.K = 10;
  c.n_max = 8;
  c.workers = workers;
  const IntervalMap phi = phi_a(Real(1));
  const Provenance prov{"phi_a:r=1", fnv1a_hex("phi_a:r=1"), phi.mode(), phi.precision(), 10, 8, ""};
  out.emplace_back("curve.csv", curve_csv(mdim_curve(phi, c)));
  out.emplace_back("report.json", mdim_report_json(run_mdim(phi, c, 10), prov));
  CurveOptions pc = c;
  pc.K = 6;
  pc.n_max = 4;
  out.emplace_back("product.json", mdim_report_json(run_mdim(build_gallery("psi_b:b=1,n=2"), pc, 10), prov));
  CountOptions co;
  co.workers = workers;
  std::vector<SepCount> counts;
  for (const auto& [name, system] : instance_maps()) {
    if (system.dimension() > 1) continue;
    for (std::size_t n : {1, 3}) {
      counts.push_back(sep_count_greedy({system, n}, Real::ratio(1, 8), Real::ratio(1, 64), co));
      counts.push_back(span_count_greedy({system, n}, Real::ratio(1, 8), Real::ratio(1, 64), co));
    }
  }
  out.emplace_back("sep.csv", sep_counts_csv(counts));
  out.emplace_back("holder.json", holder_report_json(holder_verdict(phi, Real::parse("0.55"), 12, workers), prov));
  SamplePlan plan;
  plan.K = 20;
  plan.workers = workers;
  out.emplace_back("omega.json", holder_report_json(modulus_check(hazard_map(), Modulus::omega(), plan), prov));
  return out;
}

// 13. byte-identical outputs across worker counts.
void determinism(CriterionResult& r, const ScenarioOptions&) {
  const auto one = outputs_for(1);
  const auto eight = outputs_for(8);
  std::size_t differing = 0;
  for (std::size_t i = 0; i < one.size(); ++i) {
    if (one[i].second != eight[i].second) {
      ++differing;
      r.detail += one[i].first + " differs; ";
    }
  }
  record(r, "outputs", static_cast<double>(one.size()));
  record(r, "differing", static_cast<double>(differing));
  r.pass = differing == 0;
  if (r.detail.empty()) r.detail = std::to_string(one.size()) + " outputs identical for workers 1 and 8";
}

// phi0b(1): upper predictor 1/(1+r), lower side collapsing.
void gap_phi0b(CriterionResult& r, const ScenarioOptions&) {
  const IntervalMap map = phi_zero_b(Real(1));
  const PredictorSeries s = predictor_misiu(map, kTowerDepth);
  const auto up = s.upper_limit();
  const DdfEstimate d = ddf_lower(map, kDdfDepth);
  record(r, "predictor_tower_5", s.points.back().value.to_double());
  record(r, "predictor_limit", up ? up->to_double() : -1.0);
  record(r, "ddf_lower", d.value);
  r.pass = up && std::abs(up->to_double() - 0.5) <= kPredictorExact && d.value <= kDdfMax;
  r.detail = "limit=" + fmt(up ? up->to_double() : -1.0) + " p(3125)=" + fmt(s.points.back().value.to_double()) +
             " ddf=" + fmt(d.value);
}

struct Entry {
  const char* title;
  Check run;
};

const std::map<int, Entry>& registry() {
  static const std::map<int, Entry> entries{
      {1, {"predictor exactness", predictor_exactness}},
      {2, {"finite-scale mdim", finite_scale}},
      {3, {"zero-mdim hazard map", zero_mdim}},
      {4, {"full-mdim trend", full_trend}},
      {5, {"gap family", gap_family}},
      {6, {"counting sandwich", counting_sandwich}},
      {7, {"separation inequalities", separation_inequalities}},
      {8, {"Hölder frontier", holder_frontier}},
      {9, {"non-Hölder path", non_holder}},
      {10, {"modulus bound", modulus_bound}},
      {11, {"product additivity", product_additivity}},
      {12, {"DSL fidelity", dsl_fidelity}},
      {13, {"determinism", determinism}},
      {kSupplementPhi0b, {"tower gap family", gap_phi0b}},
  };
  return entries;
}

}  // namespace

CriterionResult run_criterion(int id, const ScenarioOptions& options) {
  const auto it = registry().find(id);
  if (it == registry().end()) throw Error(ErrorCode::unknown_id, "unknown criterion " + std::to_string(id));
  CriterionResult r;
  r.id = id;
  r.title = it->second.title;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    it->second.run(r, options);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

const std::vector<std::string>& example_ids() {
  static const std::vector<std::string> ids{"phi_a_r1",   "hazard",     "phi01", "phi0b_r1",
                                            "phi_beta_2", "varphi_0_1", "psi_b"};
  return ids;
}

std::vector<int> criteria_for_example(std::string_view example_id) {
  static const std::map<std::string, std::vector<int>, std::less<>> table{
      {"phi_a_r1", {1, 2, 8}},  {"hazard", {3, 10}},     {"phi01", {4}}, {"phi0b_r1", {kSupplementPhi0b}},
      {"phi_beta_2", {9}},      {"varphi_0_1", {5}},     {"psi_b", {11}},
  };
  const auto it = table.find(example_id);
  if (it == table.end()) throw Error(ErrorCode::unknown_id, "unknown example id '" + std::string(example_id) + "'");
  return it->second;
}

std::string results_json(std::string_view example_id, const std::vector<CriterionResult>& results,
                         const ScenarioOptions& options) {
  nlohmann::ordered_json j;
  j["example"] = example_id;
  j["workers"] = options.workers;
  bool all = true;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const CriterionResult& r : results) {
    nlohmann::ordered_json e;
    e["criterion"] = r.id;
    e["title"] = r.title;
    e["verdict"] = r.pass ? "PASS" : "FAIL";
    e["detail"] = r.detail;
    nlohmann::ordered_json values;
    for (const auto& [k, v] : r.values) values[k] = v;
    e["measured"] = values;
    list.push_back(e);
    all = all && r.pass;
  }
  j["criteria"] = list;
  j["all_pass"] = all;
  return j.dump(2) + "\n";
}

const std::vector<GallerySpec>& gallery_specs() {
  static const std::vector<GallerySpec> specs{
      {"phi_a:r=1",
       "family phi_a mode rational\n"
       "segments k = 1..inf : length (2/3)/3^(k-1)\n"
       "horseshoe where all : legs 3^k\n"
       "default : identity\n"},
      {"phi_beta:beta=2",
       "family phi_beta mode float(256)\n"
       "segments k = 1..inf : length 6/(pi^2*k^2)\n"
       "horseshoe where k >= 2 : legs 3^k\n"
       "default : identity\n"},
      {"hazard",
       "family hazard mode rational\n"
       "segments k = 1..inf from right : length 1/2^k\n"
       "horseshoe where all : legs 2*k+1\n"
       "default : identity\n"},
      {"phi01",
       "family phi01 mode float(256)\n"
       "segments j = 1..inf : length 6/(pi^2*j^2)\n"
       "horseshoe where tower : legs 3^j\n"
       "default : identity\n"},
      {"phi0b:r=1",
       "family phi0b mode rational\n"
       "segments j = 1..inf : length (2/3)/3^(j-1)\n"
       "horseshoe where tower : legs 3^j\n"
       "default : identity\n"},
  };
  return specs;
}

}  // namespace horseshoe::scenarios
