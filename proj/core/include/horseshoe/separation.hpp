#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "horseshoe/block.hpp"
#include "horseshoe/interval_map.hpp"
#include "horseshoe/product.hpp"

namespace horseshoe {

enum class CountMethod { greedy_grid, itinerary_lower, lipschitz_upper, exhaustive_oracle };
enum class Direction { lower_bound, upper_bound, empirical };

const char* to_string(CountMethod method) noexcept;
const char* to_string(Direction direction) noexcept;

/// One count of an (n, eps)-separated or spanning set. Counts of 2^63 and
/// above are kept as natural logs only.
struct SepCount {
  std::size_t n = 1;
  Real epsilon;
  std::optional<std::uint64_t> exact;
  Real log_count;
  CountMethod method = CountMethod::greedy_grid;
  Direction direction = Direction::empirical;
  /// lim sup (1/n) log count when the count follows a known closed form.
  std::optional<Real> asymptotic_rate;
  /// False when part of the space had no certified bound (upper bounds only).
  bool certified = true;
  std::string note;

  static SepCount from_integer(const mpz_class& count, std::size_t n, Real epsilon, CountMethod method,
                               Direction direction);
  static SepCount from_log(Real log_count, std::size_t n, Real epsilon, CountMethod method, Direction direction);

  /// Integer text, or "ln:<value>" when only the log is known.
  std::string count_string() const;
  double log_value() const { return log_count.to_double(); }
};

struct BowenContext {
  System system;
  std::size_t n = 1;
};

struct CountOptions {
  std::size_t workers = 1;
  /// Upper limit on grid points times n.
  std::uint64_t budget = 4'000'000;
};

Real dn_distance(const BowenContext& ctx, const Point& x, const Point& y);

/// Grid {i h} plus the far corner, in every coordinate.
std::vector<Point> grid_points(std::size_t dimension, const Real& step);

/// Orbits of a point set and the Bowen distances between them.
class OrbitTable {
 public:
  OrbitTable(const BowenContext& ctx, std::vector<Point> points, std::size_t workers);

  std::size_t size() const noexcept { return points_.size(); }
  const Point& point(std::size_t i) const { return points_[i]; }
  bool truncated() const noexcept { return truncated_; }
  Real distance(std::size_t i, std::size_t j) const;
  /// Sign of d_n(i, j) - eps, exact except for indistinguishable float ties (0).
  int compare_to(std::size_t i, std::size_t j, const Real& eps) const;

 private:
  const BowenContext* ctx_;
  std::vector<Point> points_;
  std::vector<std::vector<Point>> orbits_;
  std::vector<std::vector<double>> approx_;
  bool truncated_ = false;
};

/// Adjacency rows as 64-bit words.
using BitRows = std::vector<std::vector<std::uint64_t>>;

/// rows[i] has bit j set when d_n(i,j) > eps (separated = true) or
/// d_n(i,j) < eps (separated = false).
BitRows relation_rows(const OrbitTable& table, const Real& eps, bool separated, std::size_t workers);

/// Ascending sweep keeping points farther than eps from every kept point.
std::vector<std::size_t> greedy_separated(const BitRows& far, std::size_t size);
/// Cover by open d_n balls of radius eps centered at grid points.
std::vector<std::size_t> greedy_spanning(const BitRows& near, std::size_t size);
/// Maximum clique of the far-graph (exact; intended for <= 200 vertices).
std::vector<std::size_t> maximum_separated(const BitRows& far, std::size_t size);

SepCount sep_count_greedy(const BowenContext& ctx, const Real& epsilon, const Real& grid_step,
                          const CountOptions& options = {});
SepCount span_count_greedy(const BowenContext& ctx, const Real& epsilon, const Real& grid_step,
                           const CountOptions& options = {});
/// Exact maximum separated subset of the grid; at most 200 grid points.
SepCount sep_count_exhaustive(const BowenContext& ctx, const Real& epsilon, const Real& grid_step,
                              const CountOptions& options = {});

/// ceil(s/2)^n: one point per itinerary over every other leg.
SepCount sep_lower_itinerary(const Block& block, std::size_t n, const Real& epsilon);
/// ceil(length * slope^n / eps), slope given by its log.
SepCount span_upper_lipschitz(const Real& log_slope, std::size_t n, const Real& epsilon, const Real& length);
/// Same bound with an integer slope; exact whenever the inputs are.
SepCount span_upper_lipschitz(const LegCount& slope, std::size_t n, const Real& epsilon, const Real& length);
/// Cell-refinement bound c * min(c, s+1)^(n-1) with c = floor(|I|/eps) + 1;
/// bounds both span and sep on one invariant block.
SepCount block_upper_bound(const Block& block, std::size_t n, const Real& epsilon);

/// Largest itinerary bound over horseshoes with eps at most their critical scale.
SepCount map_lower_bound(const IntervalMap& map, std::size_t K, std::size_t n, const Real& epsilon);
/// Sum of block bounds over segments and tails. Not certified when a tail
/// is at least eps long or a non-invariant piece is present.
SepCount map_upper_bound(const IntervalMap& map, std::size_t K, std::size_t n, const Real& epsilon);
/// Same bounds on a precomputed layout.
SepCount layout_lower_bound(const MapLayout& layout, std::size_t n, const Real& epsilon);
SepCount layout_upper_bound(const MapLayout& layout, std::size_t n, const Real& epsilon);
/// Product of per-factor counts; rates add.
SepCount product_of_counts(const std::vector<SepCount>& factors, std::size_t n, const Real& epsilon,
                           CountMethod method, Direction direction);

/// Product of factor lower bounds at eps.
SepCount system_lower_bound(const System& system, std::size_t K, std::size_t n, const Real& epsilon);
/// Product of factor upper bounds at eps / dimension.
SepCount system_upper_bound(const System& system, std::size_t K, std::size_t n, const Real& epsilon);

struct LapCount {
  std::size_t n = 1;
  std::optional<std::uint64_t> exact;
  Real log_laps;
  /// (1/n) log(laps) of each horseshoe block, in block order.
  std::vector<Real> block_rates;
};

/// Monotone laps of f^n: sum of s_k^n over horseshoes plus identity segments.
LapCount lap_count(const IntervalMap& map, std::size_t K, std::size_t n);

struct RateEstimate {
  Real epsilon;
  Real lower_rate;
  Real upper_rate;
  std::vector<std::size_t> n_used;
  Real entropy_proxy;
  /// True when both rates came from closed forms rather than finite n.
  bool from_closed_form = false;
};

/// lower = max_n (1/n) log lower_n, upper = min_{n >= n_min} (1/n) log upper_n,
/// or the closed-form limits when every count carries one.
RateEstimate rate_estimate(const std::vector<SepCount>& lower, const std::vector<SepCount>& upper,
                           std::size_t n_min = 1, double tolerance = 1e-9);

}  // namespace horseshoe
