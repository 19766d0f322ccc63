#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "horseshoe/interval_map.hpp"
#include "horseshoe/product.hpp"
#include "horseshoe/separation.hpp"

namespace horseshoe {

struct CurvePoint {
  std::size_t k = 0;
  Real epsilon;
  double log_eps = 0.0;
  double lower_ratio = 0.0;
  double upper_ratio = 0.0;
  std::string method_lower;
  std::string method_upper;
  /// False when part of the space had no certified upper count at this scale.
  bool upper_certified = true;
};

struct MdimCurve {
  std::vector<CurvePoint> points;
  std::string schedule;
};

struct CurveOptions {
  /// Number of scales.
  std::size_t K = 10;
  std::size_t n_max = 8;
  /// Blocks materialized per family for the counting bounds; 0 = the map's K_max.
  std::size_t layout_depth = 0;
  std::size_t workers = 1;
};

/// Critical scales of the first K horseshoes in decreasing order, or 2^-k
/// when the map has none.
std::vector<Real> critical_schedule(const System& system, std::size_t K, std::size_t layout_depth,
                                    std::string* description = nullptr);

/// Certified rates (itinerary lower, cell upper) over |log eps| on the schedule.
MdimCurve mdim_curve(const System& system, const CurveOptions& options);

struct PredictorPoint {
  std::size_t index = 0;
  int component = 0;
  Real log_length;
  Real log_legs;
  Real value;
};

struct PredictorSeries {
  std::vector<PredictorPoint> points;
  /// Values of 1/(1 - L) over the symbolic cluster points L of log|I|/log s.
  std::vector<Real> limits;
  std::optional<Real> limit() const;
  std::optional<Real> upper_limit() const;
  std::optional<Real> lower_limit() const;
};

/// p_k = 1 / |1 - log|I_k| / log s_k| over the first K horseshoes of every family.
PredictorSeries predictor_misiu(const IntervalMap& map, std::size_t K);

struct DdfEstimate {
  /// log ceil(s_{k-1}/2) / (log s_k - log|I_k|) per consecutive pair.
  std::vector<Real> certified_terms;
  /// log s_{k-1} / (log s_k - log|I_k|) per consecutive pair.
  std::vector<Real> raw_terms;
  double value = 0.0;      // trailing-window minimum of certified_terms
  double raw_value = 0.0;  // trailing-window minimum of raw_terms
};

DdfEstimate ddf_lower(const IntervalMap& map, std::size_t K, std::size_t window = 5);

struct MdimReport {
  double liminf_est = 0.0;
  double limsup_est = 0.0;
  std::optional<double> predictor_misiu;
  std::optional<double> predictor_lower;
  bool predictor_diverges = false;
  std::vector<double> factor_predictors;
  double ddf_lower = 0.0;
  double ddf_lower_raw = 0.0;
  double box_bound = 1.0;
  double tolerance = 1e-9;
  std::size_t window = 5;
  bool upper_certified = true;
  std::string label = "finite-scale";
};

/// Trailing-window summary of a curve with predictors attached. Raises
/// ordering_violation when 0 <= ddf <= liminf <= limsup <= box fails.
MdimReport mdim_report(const MdimCurve& curve, const std::vector<PredictorSeries>& predictors,
                       const std::vector<DdfEstimate>& ddf, double box_bound, bool exact_mode,
                       std::size_t window = 5);

/// Curve, predictors and report for an interval or product map.
struct MdimRun {
  MdimCurve curve;
  std::vector<PredictorSeries> predictors;
  std::vector<DdfEstimate> ddf;
  MdimReport report;
};

MdimRun run_mdim(const System& system, const CurveOptions& options, std::size_t predictor_depth);

}  // namespace horseshoe
