#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "horseshoe/holder.hpp"
#include "horseshoe/interval_map.hpp"
#include "horseshoe/mdim.hpp"
#include "horseshoe/separation.hpp"

namespace horseshoe {

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes) noexcept;
std::string fnv1a_hex(std::string_view bytes);

/// Enough to replay a run.
struct Provenance {
  std::string map_id;
  /// Hash of the map source (gallery string or spec text).
  std::string spec_hash;
  std::string mode;
  unsigned precision = kDefaultPrecision;
  std::size_t K = 0;
  std::size_t n_max = 0;
  std::string schedule;
};

/// Columns n, epsilon, count_or_logcount, method, direction.
std::string sep_counts_csv(const std::vector<SepCount>& counts);

/// Columns k, epsilon, log_eps, lower_ratio, upper_ratio, method_lower, method_upper.
std::string curve_csv(const MdimCurve& curve);

/// Name, mode, parameters and the first K blocks.
std::string map_json(const IntervalMap& map, std::size_t K);

std::string mdim_report_json(const MdimRun& run, const Provenance& provenance);
std::string holder_report_json(const HolderReport& report, const Provenance& provenance);

/// Fixed-format decimal (%.17g), independent of locale.
std::string format_double(double value);

}  // namespace horseshoe
