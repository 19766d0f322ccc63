#include "horseshoe/serialize.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace horseshoe {

namespace {

using nlohmann::ordered_json;

constexpr std::size_t kMaxExactText = 40;

const char* kind_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::identity: return "identity";
    case FamilyKind::hazard: return "hazard";
    case FamilyKind::phi01: return "phi01";
    case FamilyKind::phi0b: return "phi0b";
    case FamilyKind::phi_beta: return "phi_beta";
    case FamilyKind::phi_a: return "phi_a";
    case FamilyKind::glued: return "glued";
    case FamilyKind::embedded: return "embedded";
    case FamilyKind::custom: return "custom";
  }
  return "custom";
}

// Short exact rationals verbatim, everything else as 17 significant digits.
std::string real_text(const Real& x) {
  if (x.is_exact()) {
    std::string s = x.to_string();
    if (s.size() <= kMaxExactText) return s;
  }
  return x.to_float(128).to_string(17);
}

ordered_json provenance_json(const Provenance& p) {
  ordered_json j;
  j["map_id"] = p.map_id;
  j["spec_hash"] = p.spec_hash;
  j["mode"] = p.mode;
  j["precision"] = p.precision;
  j["K"] = p.K;
  j["n_max"] = p.n_max;
  j["schedule"] = p.schedule;
  return j;
}

ordered_json optional_number(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

}  // namespace

std::uint64_t fnv1a(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fnv1a_hex(std::string_view bytes) {
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(fnv1a(bytes)));
  return buffer;
}

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string sep_counts_csv(const std::vector<SepCount>& counts) {
  std::ostringstream out;
  out << "n,epsilon,count_or_logcount,method,direction\n";
  for (const SepCount& c : counts) {
    out << c.n << ',' << real_text(c.epsilon) << ',' << c.count_string() << ',' << to_string(c.method) << ','
        << to_string(c.direction) << '\n';
  }
  return out.str();
}

std::string curve_csv(const MdimCurve& curve) {
  std::ostringstream out;
  out << "k,epsilon,log_eps,lower_ratio,upper_ratio,method_lower,method_upper\n";
  for (const CurvePoint& p : curve.points) {
    out << p.k << ',' << real_text(p.epsilon) << ',' << format_double(p.log_eps) << ','
        << format_double(p.lower_ratio) << ',' << format_double(p.upper_ratio) << ',' << p.method_lower << ','
        << p.method_upper << '\n';
  }
  return out.str();
}

std::string map_json(const IntervalMap& map, std::size_t K) {
  ordered_json j;
  j["name"] = map.name();
  j["mode"] = map.mode();
  j["precision"] = map.precision();
  if (const auto& params = map.params()) {
    ordered_json p;
    p["kind"] = kind_name(params->kind);
    if (params->r) p["r"] = real_text(*params->r);
    if (params->beta) p["beta"] = real_text(*params->beta);
    if (params->a) p["a"] = real_text(*params->a);
    if (params->b) p["b"] = real_text(*params->b);
    if (params->C) p["C"] = real_text(*params->C);
    if (params->holder_exponent) p["holder_exponent"] = real_text(*params->holder_exponent);
    j["params"] = p;
  }
  const MapLayout layout = map.layout(K);
  ordered_json blocks = ordered_json::array();
  for (const Block& b : layout.segments) {
    ordered_json e;
    e["index"] = b.index();
    e["component"] = b.component();
    e["kind"] = to_string(b.kind());
    e["left"] = real_text(b.interval().left());
    e["right"] = real_text(b.interval().right());
    e["legs"] = b.legs().to_string();
    blocks.push_back(e);
  }
  j["blocks"] = blocks;
  ordered_json tails = ordered_json::array();
  for (const Tail& t : layout.tails) {
    tails.push_back({{"left", real_text(t.region.left())},
                     {"right", real_text(t.region.right())},
                     {"component", t.component}});
  }
  j["tails"] = tails;
  ordered_json limits = ordered_json::array();
  for (const LogRatioLimit& l : map.log_ratio_limits()) {
    limits.push_back(l.minus_infinity ? ordered_json("-inf") : ordered_json(l.value.to_double()));
  }
  j["log_ratio_limits"] = limits;
  return j.dump(2) + "\n";
}

std::string mdim_report_json(const MdimRun& run, const Provenance& provenance) {
  const MdimReport& r = run.report;
  ordered_json j;
  j["liminf_est"] = r.liminf_est;
  j["limsup_est"] = r.limsup_est;
  j["predictor_misiu"] = optional_number(r.predictor_misiu);
  j["predictor_lower"] = optional_number(r.predictor_lower);
  j["predictor_diverges"] = r.predictor_diverges;
  j["factor_predictors"] = r.factor_predictors;
  j["ddf_lower"] = r.ddf_lower;
  j["ddf_lower_raw"] = r.ddf_lower_raw;
  j["box_bound"] = r.box_bound;
  j["tolerance"] = r.tolerance;
  j["window"] = r.window;
  j["upper_certified"] = r.upper_certified;
  j["label"] = r.label;
  ordered_json points = ordered_json::array();
  for (const CurvePoint& p : run.curve.points) {
    points.push_back({{"k", p.k},
                      {"epsilon", real_text(p.epsilon)},
                      {"log_eps", p.log_eps},
                      {"lower_ratio", p.lower_ratio},
                      {"upper_ratio", p.upper_ratio},
                      {"method_lower", p.method_lower},
                      {"method_upper", p.method_upper},
                      {"upper_certified", p.upper_certified}});
  }
  j["curve"] = points;
  ordered_json series = ordered_json::array();
  for (const PredictorSeries& s : run.predictors) {
    ordered_json values = ordered_json::array();
    for (const PredictorPoint& p : s.points) {
      values.push_back({{"index", p.index}, {"component", p.component}, {"value", p.value.to_double()}});
    }
    ordered_json limits = ordered_json::array();
    for (const Real& l : s.limits) limits.push_back(l.to_double());
    series.push_back({{"points", values}, {"limits", limits}});
  }
  j["predictors"] = series;
  auto pr = provenance;
  if (pr.schedule.empty()) pr.schedule = run.curve.schedule;
  j["provenance"] = provenance_json(pr);
  return j.dump(2) + "\n";
}

std::string holder_report_json(const HolderReport& report, const Provenance& provenance) {
  ordered_json j;
  j["modulus"] = report.modulus.to_string();
  j["sample_plan"] = report.sample_plan;
  j["verdict"] = to_string(report.verdict);
  j["sup_ratio"] = report.sup_ratio;
  j["far_sup"] = report.far_sup;
  j["endpoint_sup"] = report.endpoint_sup;
  j["adjacent_sup"] = report.adjacent_sup;
  j["growth_fit"] = report.growth_fit;
  j["log_term"] = report.log_term;
  j["fit_rms"] = report.fit_rms;
  j["pairs"] = report.pairs;
  auto rows = [](const std::vector<BlockSup>& v) {
    ordered_json a = ordered_json::array();
    for (const BlockSup& b : v) a.push_back({{"k", b.k}, {"component", b.component}, {"sup_ratio", b.sup_ratio}});
    return a;
  };
  j["per_block_sup"] = rows(report.per_block_sup);
  j["cross_block_sup"] = rows(report.cross_block_sup);
  j["provenance"] = provenance_json(provenance);
  return j.dump(2) + "\n";
}

}  // namespace horseshoe
