#include "horseshoe/separation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "horseshoe/error.hpp"
#include "horseshoe/parallel.hpp"

namespace horseshoe {

namespace {

constexpr std::size_t kExhaustiveLimit = 200;

const mpz_class& exact_threshold() {
  static const mpz_class value = mpz_class(1) << 63;
  return value;
}

std::size_t word_count(std::size_t size) { return (size + 63) / 64; }

void set_bit(std::vector<std::uint64_t>& row, std::size_t j) { row[j / 64] |= std::uint64_t{1} << (j % 64); }

bool test_bit(const std::vector<std::uint64_t>& row, std::size_t j) {
  return (row[j / 64] >> (j % 64)) & std::uint64_t{1};
}

std::size_t popcount_and(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  std::size_t out = 0;
  for (std::size_t w = 0; w < a.size(); ++w) out += static_cast<std::size_t>(std::popcount(a[w] & b[w]));
  return out;
}

std::optional<std::size_t> first_bit(const std::vector<std::uint64_t>& row) {
  for (std::size_t w = 0; w < row.size(); ++w) {
    if (row[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(row[w]));
  }
  return std::nullopt;
}

bool empty(const std::vector<std::uint64_t>& row) {
  return std::all_of(row.begin(), row.end(), [](std::uint64_t w) { return w == 0; });
}

// Upper bound on floor(x) for a possibly inexact x.
mpz_class floor_upper(const Real& x) {
  if (x.is_exact()) return x.floor();
  return x.upper_endpoint().floor();
}

// b^e as a count; exact below 2^63 bits worth, else only the log.
struct Magnitude {
  std::optional<mpz_class> exact;
  Real log_value;
};

Magnitude power_magnitude(const mpz_class& base, std::size_t exponent) {
  const double bits = static_cast<double>(exponent) * static_cast<double>(magnitude_bits(base));
  if (bits <= 4096) {
    mpz_class v;
    mpz_pow_ui(v.get_mpz_t(), base.get_mpz_t(), exponent);
    return {v, log(Real(v))};
  }
  return {std::nullopt, Real(static_cast<long>(exponent)) * log(Real(base))};
}

SepCount from_magnitude(const Magnitude& m, std::size_t n, const Real& eps, CountMethod method, Direction dir) {
  if (m.exact) return SepCount::from_integer(*m.exact, n, eps, method, dir);
  return SepCount::from_log(m.log_value, n, eps, method, dir);
}

// log(sum exp(l_i)) computed stably.
Real log_sum_exp(const std::vector<Real>& logs) {
  if (logs.empty()) throw Error(ErrorCode::invalid_argument, "empty log sum");
  Real top = logs.front();
  for (const Real& l : logs) top = max(top, l);
  Real sum(0);
  for (const Real& l : logs) sum += exp(l - top);
  return top + log(sum);
}

void check_grid_request(const Real& epsilon, const Real& step, std::size_t dimension, std::size_t n,
                        std::uint64_t budget) {
  if (epsilon.sign() <= 0) throw Error(ErrorCode::domain, "epsilon must be positive");
  if (step.sign() <= 0) throw Error(ErrorCode::domain, "grid step must be positive");
  if (definitely_greater(step, epsilon / Real(4))) {
    throw Error(ErrorCode::domain, "grid step must not exceed epsilon/4");
  }
  const double axis = std::floor(1.0 / step.to_double()) + 2.0;
  const double points = std::pow(axis, static_cast<double>(dimension));
  if (points * static_cast<double>(n) > static_cast<double>(budget)) {
    const double per_axis = std::pow(static_cast<double>(budget) / static_cast<double>(n), 1.0 / dimension);
    const double suggestion = per_axis > 2.0 ? 1.0 / (std::floor(per_axis) - 2.0) : 1.0;
    std::ostringstream msg;
    msg << "grid of about " << points << " points x n=" << n << " exceeds the budget " << budget
        << "; smallest feasible grid step is about " << suggestion;
    throw BudgetError(msg.str(), suggestion);
  }
}

}  // namespace

const char* to_string(CountMethod method) noexcept {
  switch (method) {
    case CountMethod::greedy_grid: return "greedy-grid";
    case CountMethod::itinerary_lower: return "itinerary-lower";
    case CountMethod::lipschitz_upper: return "lipschitz-upper";
    case CountMethod::exhaustive_oracle: return "exhaustive-oracle";
  }
  return "unknown";
}

const char* to_string(Direction direction) noexcept {
  switch (direction) {
    case Direction::lower_bound: return "lower-bound";
    case Direction::upper_bound: return "upper-bound";
    case Direction::empirical: return "empirical";
  }
  return "unknown";
}

SepCount SepCount::from_integer(const mpz_class& count, std::size_t n, Real epsilon, CountMethod method,
                                Direction direction) {
  if (count < 1) throw Error(ErrorCode::invalid_argument, "counts are at least 1");
  SepCount out;
  out.n = n;
  out.epsilon = std::move(epsilon);
  out.method = method;
  out.direction = direction;
  if (count < exact_threshold()) out.exact = count.get_ui();
  out.log_count = log(Real(count));
  return out;
}

SepCount SepCount::from_log(Real log_count, std::size_t n, Real epsilon, CountMethod method, Direction direction) {
  if (definitely_less(log_count, Real(0))) throw Error(ErrorCode::invalid_argument, "counts are at least 1");
  SepCount out;
  out.n = n;
  out.epsilon = std::move(epsilon);
  out.method = method;
  out.direction = direction;
  out.log_count = std::move(log_count);
  return out;
}

std::string SepCount::count_string() const {
  if (exact) return std::to_string(*exact);
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "ln:%.17g", log_count.to_double());
  return buffer;
}

Real dn_distance(const BowenContext& ctx, const Point& x, const Point& y) {
  if (ctx.n == 0) throw Error(ErrorCode::invalid_argument, "n must be >= 1");
  Point a = x;
  Point b = y;
  Real out = ctx.system.distance(a, b);
  for (std::size_t i = 1; i < ctx.n; ++i) {
    a = ctx.system.step(a);
    b = ctx.system.step(b);
    out = max(out, ctx.system.distance(a, b));
  }
  return out;
}

std::vector<Point> grid_points(std::size_t dimension, const Real& step) {
  if (step.sign() <= 0) throw Error(ErrorCode::domain, "grid step must be positive");
  std::vector<Real> axis;
  for (long i = 0;; ++i) {
    Real v = step * Real(i);
    if (definitely_greater(v, Real(1))) break;
    axis.push_back(std::move(v));
  }
  if (definitely_less(axis.back(), Real(1))) axis.push_back(Real(1));
  std::vector<Point> out{Point{}};
  for (std::size_t d = 0; d < dimension; ++d) {
    std::vector<Point> next;
    next.reserve(out.size() * axis.size());
    for (const Point& p : out) {
      for (const Real& v : axis) {
        Point q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    }
    out = std::move(next);
  }
  return out;
}

OrbitTable::OrbitTable(const BowenContext& ctx, std::vector<Point> points, std::size_t workers)
    : ctx_(&ctx), points_(std::move(points)), orbits_(points_.size()), approx_(points_.size()) {
  std::vector<char> flags(points_.size(), 0);
  parallel_for(points_.size(), workers, [&](std::size_t i) {
    std::vector<Point> orbit;
    orbit.reserve(ctx.n);
    orbit.push_back(points_[i]);
    bool truncated = false;
    for (std::size_t t = 1; t < ctx.n; ++t) orbit.push_back(ctx.system.step(orbit.back(), &truncated));
    std::vector<double> approx;
    approx.reserve(ctx.n * ctx.system.dimension());
    for (const Point& p : orbit) {
      for (const Real& v : p) approx.push_back(v.to_double());
    }
    orbits_[i] = std::move(orbit);
    approx_[i] = std::move(approx);
    flags[i] = truncated ? 1 : 0;
  });
  truncated_ = std::any_of(flags.begin(), flags.end(), [](char f) { return f != 0; });
}

Real OrbitTable::distance(std::size_t i, std::size_t j) const {
  Real out(0);
  for (std::size_t t = 0; t < ctx_->n; ++t) out = max(out, ctx_->system.distance(orbits_[i][t], orbits_[j][t]));
  return out;
}

int OrbitTable::compare_to(std::size_t i, std::size_t j, const Real& eps) const {
  const std::size_t d = ctx_->system.dimension();
  const std::vector<double>& a = approx_[i];
  const std::vector<double>& b = approx_[j];
  double dist = 0.0;
  for (std::size_t t = 0; t < ctx_->n; ++t) {
    double s = 0.0;
    for (std::size_t c = 0; c < d; ++c) s += std::fabs(a[t * d + c] - b[t * d + c]);
    dist = std::max(dist, s);
  }
  const double e = eps.to_double();
  constexpr double kMargin = 1e-12;
  if (dist > e + kMargin) return 1;
  if (dist < e - kMargin) return -1;
  switch (compare(distance(i, j), eps)) {
    case Ordering::greater: return 1;
    case Ordering::less: return -1;
    default: return 0;
  }
}

BitRows relation_rows(const OrbitTable& table, const Real& eps, bool separated, std::size_t workers) {
  const std::size_t size = table.size();
  BitRows rows(size, std::vector<std::uint64_t>(word_count(size), 0));
  parallel_for(size, workers, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < size; ++j) {
      const int c = table.compare_to(i, j, eps);
      if ((separated && c > 0) || (!separated && c < 0)) set_bit(rows[i], j);
    }
  });
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i + 1; j < size; ++j) {
      if (test_bit(rows[i], j)) set_bit(rows[j], i);
    }
    if (!separated) set_bit(rows[i], i);
  }
  return rows;
}

std::vector<std::size_t> greedy_separated(const BitRows& far, std::size_t size) {
  std::vector<std::size_t> kept;
  std::vector<std::uint64_t> kept_bits(word_count(size), 0);
  for (std::size_t i = 0; i < size; ++i) {
    bool ok = true;
    for (std::size_t w = 0; w < kept_bits.size() && ok; ++w) ok = (kept_bits[w] & ~far[i][w]) == 0;
    if (ok) {
      kept.push_back(i);
      set_bit(kept_bits, i);
    }
  }
  return kept;
}

std::vector<std::size_t> greedy_spanning(const BitRows& near, std::size_t size) {
  std::vector<std::uint64_t> uncovered(word_count(size), 0);
  for (std::size_t i = 0; i < size; ++i) set_bit(uncovered, i);
  std::vector<std::size_t> centers;
  while (auto first = first_bit(uncovered)) {
    // the next center must cover `first`; take the candidate covering the most
    std::size_t best = *first;
    std::size_t best_gain = 0;
    for (std::size_t c = 0; c < size; ++c) {
      if (!test_bit(near[*first], c)) continue;
      const std::size_t gain = popcount_and(near[c], uncovered);
      if (gain > best_gain) {
        best = c;
        best_gain = gain;
      }
    }
    centers.push_back(best);
    for (std::size_t w = 0; w < uncovered.size(); ++w) uncovered[w] &= ~near[best][w];
  }
  return centers;
}

namespace {

class CliqueSearch {
 public:
  CliqueSearch(const BitRows& adj, std::size_t size) : adj_(adj), size_(size) {}

  std::vector<std::size_t> run() {
    std::vector<std::uint64_t> all(word_count(size_), 0);
    for (std::size_t i = 0; i < size_; ++i) set_bit(all, i);
    best_ = greedy_separated(adj_, size_);
    expand(all);
    std::sort(best_.begin(), best_.end());
    return best_;
  }

 private:
  void expand(std::vector<std::uint64_t> candidates) {
    std::vector<std::size_t> order;
    std::vector<std::size_t> colors;
    color(candidates, order, colors);
    for (std::size_t idx = order.size(); idx-- > 0;) {
      if (current_.size() + colors[idx] <= best_.size()) return;
      const std::size_t v = order[idx];
      current_.push_back(v);
      std::vector<std::uint64_t> next(candidates.size());
      for (std::size_t w = 0; w < next.size(); ++w) next[w] = candidates[w] & adj_[v][w];
      if (empty(next)) {
        if (current_.size() > best_.size()) best_ = current_;
      } else {
        expand(std::move(next));
      }
      current_.pop_back();
      candidates[v / 64] &= ~(std::uint64_t{1} << (v % 64));
    }
  }

  // Greedy sequential coloring; colors[i] bounds the clique size among order[0..i].
  void color(const std::vector<std::uint64_t>& candidates, std::vector<std::size_t>& order,
             std::vector<std::size_t>& colors) const {
    std::vector<std::uint64_t> uncolored = candidates;
    std::size_t k = 0;
    while (!empty(uncolored)) {
      ++k;
      std::vector<std::uint64_t> available = uncolored;
      while (auto v = first_bit(available)) {
        uncolored[*v / 64] &= ~(std::uint64_t{1} << (*v % 64));
        available[*v / 64] &= ~(std::uint64_t{1} << (*v % 64));
        for (std::size_t w = 0; w < available.size(); ++w) available[w] &= ~adj_[*v][w];
        order.push_back(*v);
        colors.push_back(k);
      }
    }
  }

  const BitRows& adj_;
  std::size_t size_;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_;
};

struct GridRun {
  std::size_t points = 0;
  bool truncated = false;
  std::vector<std::size_t> chosen;
};

template <typename Select>
GridRun run_on_grid(const BowenContext& ctx, const Real& epsilon, const Real& step, const CountOptions& options,
                    bool separated, Select&& select) {
  check_grid_request(epsilon, step, ctx.system.dimension(), ctx.n, options.budget);
  OrbitTable table(ctx, grid_points(ctx.system.dimension(), step), options.workers);
  const BitRows rows = relation_rows(table, epsilon, separated, options.workers);
  GridRun out;
  out.points = table.size();
  out.truncated = table.truncated();
  out.chosen = select(rows, table.size());
  return out;
}

std::string grid_note(const GridRun& run, const Real& step) {
  std::string note = "grid points=" + std::to_string(run.points) + " step=" + step.to_string(8);
  if (run.truncated) note += "; truncated-region";
  return note;
}

}  // namespace

std::vector<std::size_t> maximum_separated(const BitRows& far, std::size_t size) {
  return CliqueSearch(far, size).run();
}

SepCount sep_count_greedy(const BowenContext& ctx, const Real& epsilon, const Real& grid_step,
                          const CountOptions& options) {
  const GridRun run = run_on_grid(ctx, epsilon, grid_step, options, true, greedy_separated);
  SepCount out = SepCount::from_integer(mpz_class(static_cast<unsigned long>(run.chosen.size())), ctx.n, epsilon,
                                        CountMethod::greedy_grid, Direction::lower_bound);
  out.note = grid_note(run, grid_step);
  return out;
}

SepCount span_count_greedy(const BowenContext& ctx, const Real& epsilon, const Real& grid_step,
                           const CountOptions& options) {
  const GridRun run = run_on_grid(ctx, epsilon, grid_step, options, false, greedy_spanning);
  SepCount out = SepCount::from_integer(mpz_class(static_cast<unsigned long>(run.chosen.size())), ctx.n, epsilon,
                                        CountMethod::greedy_grid, Direction::empirical);
  out.note = grid_note(run, grid_step) +
             "; open balls of radius eps cover the grid only; off-grid points need slack Lip^(n-1)*step/2";
  return out;
}

SepCount sep_count_exhaustive(const BowenContext& ctx, const Real& epsilon, const Real& grid_step,
                              const CountOptions& options) {
  const std::size_t points = grid_points(ctx.system.dimension(), grid_step).size();
  if (points > kExhaustiveLimit) {
    throw BudgetError("exhaustive search is limited to " + std::to_string(kExhaustiveLimit) + " grid points, got " +
                          std::to_string(points),
                      1.0 / static_cast<double>(kExhaustiveLimit - 2));
  }
  const GridRun run = run_on_grid(ctx, epsilon, grid_step, options, true, maximum_separated);
  SepCount out = SepCount::from_integer(mpz_class(static_cast<unsigned long>(run.chosen.size())), ctx.n, epsilon,
                                        CountMethod::exhaustive_oracle, Direction::lower_bound);
  out.note = grid_note(run, grid_step);
  return out;
}

SepCount sep_lower_itinerary(const Block& block, std::size_t n, const Real& epsilon) {
  if (!block.is_horseshoe()) throw Error(ErrorCode::domain, "itinerary bound needs a horseshoe block");
  if (n == 0) throw Error(ErrorCode::invalid_argument, "n must be >= 1");
  const Real scale = block.critical_scale();
  if (definitely_greater(epsilon, scale)) {
    throw Error(ErrorCode::scale, "epsilon " + epsilon.to_string(12) + " exceeds the critical scale " +
                                      scale.to_string(12));
  }
  SepCount out;
  Real rate;
  if (block.legs().is_exact()) {
    const mpz_class half = (block.legs().value() + 1) / 2;
    out = from_magnitude(power_magnitude(half, n), n, epsilon, CountMethod::itinerary_lower, Direction::lower_bound);
    rate = log(Real(half));
  } else {
    // ceil(s/2) >= s/2
    rate = block.legs().log() - log(Real(2).to_float(kDefaultPrecision));
    out = SepCount::from_log(rate * Real(static_cast<long>(n)), n, epsilon, CountMethod::itinerary_lower,
                             Direction::lower_bound);
  }
  out.asymptotic_rate = rate;
  out.note = "block " + std::to_string(block.index());
  return out;
}

SepCount span_upper_lipschitz(const Real& log_slope, std::size_t n, const Real& epsilon, const Real& length) {
  if (epsilon.sign() <= 0) throw Error(ErrorCode::domain, "epsilon must be positive");
  if (definitely_less(log_slope, Real(0))) throw Error(ErrorCode::domain, "slope must be >= 1");
  const Real log_value = log(length / epsilon) + log_slope * Real(static_cast<long>(n));
  SepCount out;
  if (log_slope.is_exact() && log_slope.sign() == 0) {
    mpz_class c = (length / epsilon).floor();
    if (!((length / epsilon).is_exact() && (length / epsilon).is_integer())) c += 1;
    out = SepCount::from_integer(c, n, epsilon, CountMethod::lipschitz_upper, Direction::upper_bound);
  } else if (log_value.to_double() < 60.0) {
    const Real v = exp(log_value);
    out = SepCount::from_integer(floor_upper(v) + 1, n, epsilon, CountMethod::lipschitz_upper,
                                 Direction::upper_bound);
  } else {
    // ceil(v) <= v (1 + 2^-59) once v > 2^60
    out = SepCount::from_log(log_value + Real::ratio(1, 1L << 59), n, epsilon, CountMethod::lipschitz_upper,
                             Direction::upper_bound);
  }
  out.asymptotic_rate = log_slope;
  return out;
}

SepCount span_upper_lipschitz(const LegCount& slope, std::size_t n, const Real& epsilon, const Real& length) {
  if (!slope.is_exact()) return span_upper_lipschitz(slope.log(), n, epsilon, length);
  if (epsilon.sign() <= 0) throw Error(ErrorCode::domain, "epsilon must be positive");
  const Real ratio = length / epsilon;
  if (ratio.is_exact() && magnitude_bits(slope.value()) * static_cast<long>(n) <= 4096) {
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), slope.value().get_mpz_t(), n);
    const mpq_class v = ratio.rational() * mpq_class(p);
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    SepCount out = SepCount::from_integer(c, n, epsilon, CountMethod::lipschitz_upper, Direction::upper_bound);
    out.asymptotic_rate = slope.log();
    return out;
  }
  return span_upper_lipschitz(slope.log(), n, epsilon, length);
}

SepCount block_upper_bound(const Block& block, std::size_t n, const Real& epsilon) {
  if (epsilon.sign() <= 0) throw Error(ErrorCode::domain, "epsilon must be positive");
  if (n == 0) throw Error(ErrorCode::invalid_argument, "n must be >= 1");
  const Real ratio = block.interval().length() / epsilon;
  const mpz_class cells = floor_upper(ratio) + 1;
  SepCount out;
  if (!block.is_horseshoe()) {
    out = SepCount::from_integer(cells, n, epsilon, CountMethod::lipschitz_upper, Direction::upper_bound);
    out.asymptotic_rate = Real(0);
    return out;
  }
  Real log_branch;
  Magnitude tail_part;
  if (block.legs().is_exact()) {
    const mpz_class legs_plus = block.legs().value() + 1;
    const mpz_class branch = cells < legs_plus ? cells : legs_plus;
    tail_part = power_magnitude(branch, n - 1);
    log_branch = log(Real(branch));
  } else {
    // s is astronomically larger than any representable cell count
    log_branch = log(Real(cells));
    tail_part = power_magnitude(cells, n - 1);
  }
  if (tail_part.exact) {
    out = SepCount::from_integer(cells * *tail_part.exact, n, epsilon, CountMethod::lipschitz_upper,
                                 Direction::upper_bound);
  } else {
    out = SepCount::from_log(log(Real(cells)) + tail_part.log_value, n, epsilon, CountMethod::lipschitz_upper,
                             Direction::upper_bound);
  }
  out.asymptotic_rate = log_branch;
  out.note = "block " + std::to_string(block.index());
  return out;
}

SepCount map_lower_bound(const IntervalMap& map, std::size_t K, std::size_t n, const Real& epsilon) {
  return layout_lower_bound(map.layout(K), n, epsilon);
}

SepCount map_upper_bound(const IntervalMap& map, std::size_t K, std::size_t n, const Real& epsilon) {
  return layout_upper_bound(map.layout(K), n, epsilon);
}

SepCount layout_lower_bound(const MapLayout& layout, std::size_t n, const Real& epsilon) {
  SepCount best = SepCount::from_integer(1, n, epsilon, CountMethod::itinerary_lower, Direction::lower_bound);
  best.asymptotic_rate = Real(0);
  for (const Block& b : layout.segments) {
    if (!b.is_horseshoe()) continue;
    if (definitely_greater(epsilon, b.critical_scale())) continue;
    SepCount c = sep_lower_itinerary(b, n, epsilon);
    if (definitely_greater(c.log_count, best.log_count)) {
      best = std::move(c);
    }
  }
  return best;
}

SepCount layout_upper_bound(const MapLayout& layout, std::size_t n, const Real& epsilon) {
  std::vector<Real> logs;
  std::optional<mpz_class> total = mpz_class(0);
  Real rate(0);
  bool certified = true;
  std::string note;
  for (const Block& b : layout.segments) {
    SepCount c = block_upper_bound(b, n, epsilon);
    if (total && c.exact) {
      *total += mpz_class(static_cast<unsigned long>(*c.exact));
    } else {
      total.reset();
    }
    logs.push_back(c.log_count);
    rate = max(rate, *c.asymptotic_rate);
  }
  for (const Tail& t : layout.tails) {
    if (definitely_less(t.region.length(), epsilon)) {
      if (total) *total += 1;
      logs.push_back(Real(0));
    } else {
      certified = false;
      note += "tail [" + t.region.left().to_string(8) + ", " + t.region.right().to_string(8) +
              "] is not below eps; ";
    }
  }
  for (const FreePiece& f : layout.free_pieces) {
    certified = false;
    note += f.role + " piece on [" + f.domain.left().to_string(8) + ", " + f.domain.right().to_string(8) +
            "] is not invariant; ";
  }
  SepCount out;
  if (logs.empty()) {
    out = SepCount::from_integer(1, n, epsilon, CountMethod::lipschitz_upper, Direction::upper_bound);
  } else if (total && *total > 0) {
    out = SepCount::from_integer(*total, n, epsilon, CountMethod::lipschitz_upper, Direction::upper_bound);
  } else {
    out = SepCount::from_log(log_sum_exp(logs), n, epsilon, CountMethod::lipschitz_upper, Direction::upper_bound);
  }
  out.asymptotic_rate = rate;
  out.certified = certified;
  out.note = note;
  return out;
}

namespace {

template <typename Bound>
SepCount product_bound(const System& system, const Real& epsilon, std::size_t n, Bound&& bound,
                       CountMethod method, Direction direction) {
  std::vector<SepCount> counts;
  for (const IntervalMap& f : system.product_map()->factors()) counts.push_back(bound(f));
  return product_of_counts(counts, n, epsilon, method, direction);
}

}  // namespace

SepCount product_of_counts(const std::vector<SepCount>& factors, std::size_t n, const Real& epsilon,
                           CountMethod method, Direction direction) {
  Real log_total(0);
  Real rate(0);
  bool certified = true;
  std::optional<mpz_class> exact = mpz_class(1);
  for (const SepCount& c : factors) {
    log_total += c.log_count;
    rate += c.asymptotic_rate.value_or(Real(0));
    certified = certified && c.certified;
    if (exact && c.exact) {
      *exact *= mpz_class(static_cast<unsigned long>(*c.exact));
    } else {
      exact.reset();
    }
  }
  SepCount out = exact ? SepCount::from_integer(*exact, n, epsilon, method, direction)
                       : SepCount::from_log(log_total, n, epsilon, method, direction);
  out.asymptotic_rate = rate;
  out.certified = certified;
  return out;
}

SepCount system_lower_bound(const System& system, std::size_t K, std::size_t n, const Real& epsilon) {
  if (const IntervalMap* m = system.interval_map()) return map_lower_bound(*m, K, n, epsilon);
  return product_bound(
      system, epsilon, n, [&](const IntervalMap& f) { return map_lower_bound(f, K, n, epsilon); },
      CountMethod::itinerary_lower, Direction::lower_bound);
}

SepCount system_upper_bound(const System& system, std::size_t K, std::size_t n, const Real& epsilon) {
  if (const IntervalMap* m = system.interval_map()) return map_upper_bound(*m, K, n, epsilon);
  // sum metric below eps when every coordinate is below eps/d
  const Real share = epsilon / Real(static_cast<long>(system.dimension()));
  return product_bound(
      system, epsilon, n, [&](const IntervalMap& f) { return map_upper_bound(f, K, n, share); },
      CountMethod::lipschitz_upper, Direction::upper_bound);
}

LapCount lap_count(const IntervalMap& map, std::size_t K, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "n must be >= 1");
  const MapLayout layout = map.layout(K);
  LapCount out;
  out.n = n;
  std::vector<Real> logs;
  std::optional<mpz_class> total = mpz_class(0);
  for (const Block& b : layout.segments) {
    if (!b.is_horseshoe()) {
      if (total) *total += 1;
      logs.push_back(Real(0));
      continue;
    }
    out.block_rates.push_back(b.legs().log());
    if (b.legs().is_exact()) {
      const Magnitude m = power_magnitude(b.legs().value(), n);
      if (total && m.exact) {
        *total += *m.exact;
      } else {
        total.reset();
      }
      logs.push_back(m.log_value);
    } else {
      total.reset();
      logs.push_back(b.legs().log() * Real(static_cast<long>(n)));
    }
  }
  for (std::size_t i = 0; i < layout.tails.size() + layout.free_pieces.size(); ++i) {
    if (total) *total += 1;
    logs.push_back(Real(0));
  }
  if (logs.empty()) {
    out.exact = 1;
    out.log_laps = Real(0);
    return out;
  }
  if (total && *total < exact_threshold()) {
    out.exact = total->get_ui();
    out.log_laps = log(Real(*total));
  } else {
    out.log_laps = log_sum_exp(logs);
  }
  return out;
}

RateEstimate rate_estimate(const std::vector<SepCount>& lower, const std::vector<SepCount>& upper,
                           std::size_t n_min, double tolerance) {
  if (lower.empty() || upper.empty()) throw Error(ErrorCode::invalid_argument, "rate estimate needs counts");
  RateEstimate out;
  out.epsilon = lower.front().epsilon;
  std::vector<std::size_t> horizons;
  for (const SepCount& c : lower) horizons.push_back(c.n);
  for (const SepCount& c : upper) horizons.push_back(c.n);
  std::sort(horizons.begin(), horizons.end());
  horizons.erase(std::unique(horizons.begin(), horizons.end()), horizons.end());
  if (horizons.size() < 3) throw Error(ErrorCode::invalid_argument, "rate estimate needs at least 3 horizons");
  out.n_used = horizons;

  const bool lower_closed = std::all_of(lower.begin(), lower.end(), [](const SepCount& c) {
    return c.asymptotic_rate.has_value();
  });
  const bool upper_closed = std::all_of(upper.begin(), upper.end(), [](const SepCount& c) {
    return c.asymptotic_rate.has_value();
  });
  auto per_step = [](const SepCount& c) { return c.log_count / Real(static_cast<long>(c.n)); };

  if (lower_closed) {
    out.lower_rate = *lower.back().asymptotic_rate;
  } else {
    out.lower_rate = per_step(lower.front());
    for (const SepCount& c : lower) out.lower_rate = max(out.lower_rate, per_step(c));
  }
  if (upper_closed) {
    out.upper_rate = *upper.back().asymptotic_rate;
  } else {
    std::optional<Real> best;
    for (const SepCount& c : upper) {
      if (c.n < n_min) continue;
      best = best ? min(*best, per_step(c)) : per_step(c);
    }
    if (!best) throw Error(ErrorCode::invalid_argument, "no upper count at n >= n_min");
    out.upper_rate = *best;
  }
  out.from_closed_form = lower_closed && upper_closed;
  out.entropy_proxy = out.upper_rate;
  if (out.lower_rate.to_double() > out.upper_rate.to_double() + tolerance) {
    throw Error(ErrorCode::inconsistency, "lower rate " + out.lower_rate.to_string(12) + " exceeds upper rate " +
                                              out.upper_rate.to_string(12));
  }
  return out;
}

}  // namespace horseshoe
