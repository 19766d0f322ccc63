#include "horseshoe/mdim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "horseshoe/error.hpp"
#include "horseshoe/parallel.hpp"

namespace horseshoe {

namespace {

std::vector<IntervalMap> factors_of(const System& system) {
  if (const IntervalMap* m = system.interval_map()) return {*m};
  return system.product_map()->factors();
}

std::size_t depth_for(const IntervalMap& map, std::size_t layout_depth) {
  return layout_depth == 0 ? map.k_max() : layout_depth;
}

struct ScaleEntry {
  double log_scale;
  Real scale;
  Real log_length;
};

// Horseshoe leg widths in decreasing order, each followed by the length of the
// next block when that length falls strictly between the two widths.
std::vector<Real> bracketed_scales(std::vector<ScaleEntry> entries, std::size_t K) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const ScaleEntry& a, const ScaleEntry& b) { return a.log_scale > b.log_scale; });
  std::vector<ScaleEntry> unique;
  for (ScaleEntry& e : entries) {
    if (!unique.empty() && compare(unique.back().scale, e.scale) == Ordering::equal) continue;
    unique.push_back(std::move(e));
    if (unique.size() == K) break;
  }
  std::vector<Real> out;
  for (std::size_t i = 0; i < unique.size(); ++i) {
    if (i > 0) {
      const double log_len = unique[i].log_length.to_double();
      if (log_len < unique[i - 1].log_scale && log_len > unique[i].log_scale) {
        out.push_back(exp(unique[i].log_length));
      }
    }
    out.push_back(unique[i].scale);
  }
  return out;
}

const char* method_name(const SepCount& c) { return to_string(c.method); }

}  // namespace

std::vector<Real> critical_schedule(const System& system, std::size_t K, std::size_t layout_depth,
                                    std::string* description) {
  if (K == 0) throw Error(ErrorCode::invalid_argument, "schedule needs K >= 1");
  std::vector<ScaleEntry> entries;
  for (const IntervalMap& f : factors_of(system)) {
    for (const Block& b : f.layout(depth_for(f, layout_depth)).horseshoes()) {
      Real log_scale = b.log_critical_scale();
      entries.push_back({log_scale.to_double(), b.critical_scale(), b.log_length()});
    }
  }
  if (entries.empty()) {
    if (description) *description = "dyadic";
    std::vector<Real> out;
    for (std::size_t k = 1; k <= K; ++k) out.push_back(pow(Real::ratio(1, 2), static_cast<long>(k)));
    return out;
  }
  if (description) *description = "critical";
  return bracketed_scales(std::move(entries), K);
}

MdimCurve mdim_curve(const System& system, const CurveOptions& options) {
  if (options.n_max < 3) throw Error(ErrorCode::invalid_argument, "curve needs n_max >= 3");
  MdimCurve curve;
  const std::vector<Real> scales = critical_schedule(system, options.K, options.layout_depth, &curve.schedule);

  const std::vector<IntervalMap> factors = factors_of(system);
  std::vector<MapLayout> layouts;
  layouts.reserve(factors.size());
  for (const IntervalMap& f : factors) layouts.push_back(f.layout(depth_for(f, options.layout_depth)));
  const Real dimension(static_cast<long>(factors.size()));
  const bool exact = system.is_exact();

  curve.points.resize(scales.size());
  parallel_for(scales.size(), options.workers, [&](std::size_t i) {
    const Real& eps = scales[i];
    const Real eps_upper = eps / dimension;
    std::vector<SepCount> lower;
    std::vector<SepCount> upper;
    for (std::size_t n = 1; n <= options.n_max; ++n) {
      std::vector<SepCount> lo;
      std::vector<SepCount> up;
      for (const MapLayout& layout : layouts) {
        lo.push_back(layout_lower_bound(layout, n, eps));
        up.push_back(layout_upper_bound(layout, n, eps_upper));
      }
      if (layouts.size() == 1) {
        lower.push_back(std::move(lo.front()));
        upper.push_back(std::move(up.front()));
      } else {
        lower.push_back(product_of_counts(lo, n, eps, lo.front().method, Direction::lower_bound));
        upper.push_back(product_of_counts(up, n, eps, up.front().method, Direction::upper_bound));
      }
    }
    const RateEstimate rate = rate_estimate(lower, upper, 1, exact ? 1e-9 : 1e-6);
    CurvePoint& p = curve.points[i];
    p.k = i + 1;
    p.epsilon = eps;
    p.log_eps = log(eps).to_double();
    const double denom = std::fabs(p.log_eps);
    if (denom == 0.0) throw Error(ErrorCode::degenerate, "scale 1 has no logarithmic ratio");
    p.lower_ratio = rate.lower_rate.to_double() / denom;
    p.upper_ratio = rate.upper_rate.to_double() / denom;
    p.method_lower = method_name(lower.back());
    p.method_upper = method_name(upper.back());
    p.upper_certified = std::all_of(upper.begin(), upper.end(), [](const SepCount& c) { return c.certified; });
  });
  return curve;
}

std::optional<Real> PredictorSeries::limit() const {
  if (limits.empty()) return std::nullopt;
  for (const Real& l : limits) {
    if (compare(l, limits.front()) != Ordering::equal) return std::nullopt;
  }
  return limits.front();
}

std::optional<Real> PredictorSeries::upper_limit() const {
  if (limits.empty()) return std::nullopt;
  Real best = limits.front();
  for (const Real& l : limits) best = max(best, l);
  return best;
}

std::optional<Real> PredictorSeries::lower_limit() const {
  if (limits.empty()) return std::nullopt;
  Real best = limits.front();
  for (const Real& l : limits) best = min(best, l);
  return best;
}

PredictorSeries predictor_misiu(const IntervalMap& map, std::size_t K) {
  PredictorSeries out;
  for (const HorseshoeInfo& h : map.log_horseshoes(K)) {
    const Real& log_legs = h.legs.log();
    if (log_legs.sign() == 0) throw Error(ErrorCode::degenerate, "block with one leg has no predictor");
    PredictorPoint p;
    p.index = h.index;
    p.component = h.component;
    p.log_length = h.log_length;
    p.log_legs = log_legs;
    p.value = Real(1) / abs(Real(1) - h.log_length / log_legs);
    out.points.push_back(std::move(p));
  }
  for (const LogRatioLimit& l : map.log_ratio_limits()) {
    out.limits.push_back(l.minus_infinity ? Real(0) : Real(1) / abs(Real(1) - l.value));
  }
  return out;
}

DdfEstimate ddf_lower(const IntervalMap& map, std::size_t K, std::size_t window) {
  if (window == 0) throw Error(ErrorCode::invalid_argument, "window must be positive");
  std::vector<HorseshoeInfo> infos = map.log_horseshoes(K);
  if (infos.size() < 2) throw Error(ErrorCode::invalid_argument, "need at least two horseshoe blocks");
  std::stable_sort(infos.begin(), infos.end(), [](const HorseshoeInfo& a, const HorseshoeInfo& b) {
    return a.legs.log().to_double() < b.legs.log().to_double();
  });
  DdfEstimate out;
  for (std::size_t k = 1; k < infos.size(); ++k) {
    const LegCount& prev = infos[k - 1].legs;
    const Real denom = infos[k].legs.log() - infos[k].log_length;
    Real half;
    if (prev.is_exact()) {
      mpz_class h = (prev.value() + 1) / 2;
      half = log(Real(h));
    } else {
      half = prev.log() - log(Real(2));
    }
    out.certified_terms.push_back(half / denom);
    out.raw_terms.push_back(prev.log() / denom);
  }
  auto trailing_min = [&](const std::vector<Real>& terms) {
    const std::size_t w = std::min(window, terms.size());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = terms.size() - w; i < terms.size(); ++i) best = std::min(best, terms[i].to_double());
    return best;
  };
  out.value = trailing_min(out.certified_terms);
  out.raw_value = trailing_min(out.raw_terms);
  return out;
}

MdimReport mdim_report(const MdimCurve& curve, const std::vector<PredictorSeries>& predictors,
                       const std::vector<DdfEstimate>& ddf, double box_bound, bool exact_mode, std::size_t window) {
  if (curve.points.empty()) throw Error(ErrorCode::invalid_argument, "empty curve");
  if (window == 0) throw Error(ErrorCode::invalid_argument, "window must be positive");
  MdimReport r;
  r.box_bound = box_bound;
  r.tolerance = exact_mode ? 1e-9 : 1e-6;
  r.window = std::min(window, curve.points.size());
  r.liminf_est = std::numeric_limits<double>::infinity();
  r.limsup_est = -std::numeric_limits<double>::infinity();
  for (std::size_t i = curve.points.size() - r.window; i < curve.points.size(); ++i) {
    r.liminf_est = std::min(r.liminf_est, curve.points[i].lower_ratio);
    r.limsup_est = std::max(r.limsup_est, curve.points[i].upper_ratio);
  }
  for (const CurvePoint& p : curve.points) r.upper_certified = r.upper_certified && p.upper_certified;

  if (predictors.size() == 1) {
    if (auto u = predictors.front().upper_limit()) r.predictor_misiu = u->to_double();
    if (auto l = predictors.front().lower_limit()) r.predictor_lower = l->to_double();
  } else if (!predictors.empty()) {
    double upper = 0.0;
    double lower = 0.0;
    bool complete = true;
    for (const PredictorSeries& s : predictors) {
      auto u = s.upper_limit();
      auto l = s.lower_limit();
      if (!u || !l) {
        complete = false;
        r.factor_predictors.push_back(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      r.factor_predictors.push_back(u->to_double());
      upper += u->to_double();
      lower += l->to_double();
    }
    if (complete) {
      r.predictor_misiu = upper;
      r.predictor_lower = lower;
    }
  }
  if (r.predictor_misiu && !std::isfinite(*r.predictor_misiu)) r.predictor_diverges = true;

  for (const DdfEstimate& d : ddf) {
    r.ddf_lower += d.value;
    r.ddf_lower_raw += d.raw_value;
  }

  const double tol = r.tolerance;
  auto check = [&](double a, double b, const char* what) {
    if (a > b + tol) {
      throw Error(ErrorCode::ordering_violation,
                  std::string(what) + " (" + std::to_string(a) + " > " + std::to_string(b) + ")");
    }
  };
  check(0.0, r.ddf_lower + 2 * tol, "ddf estimate is negative");
  check(r.ddf_lower, r.liminf_est, "ddf estimate exceeds liminf estimate");
  check(r.liminf_est, r.limsup_est, "liminf estimate exceeds limsup estimate");
  check(r.limsup_est, r.box_bound, "limsup estimate exceeds box dimension");
  return r;
}

MdimRun run_mdim(const System& system, const CurveOptions& options, std::size_t predictor_depth) {
  MdimRun run;
  run.curve = mdim_curve(system, options);
  for (const IntervalMap& f : factors_of(system)) {
    run.predictors.push_back(predictor_misiu(f, predictor_depth));
    if (f.log_horseshoes(2).size() >= 2) run.ddf.push_back(ddf_lower(f, predictor_depth));
  }
  run.report = mdim_report(run.curve, run.predictors, run.ddf, static_cast<double>(system.dimension()),
                           system.is_exact());
  return run;
}

}  // namespace horseshoe
