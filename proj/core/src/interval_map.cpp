#include "horseshoe/interval_map.hpp"

#include <algorithm>
#include <mutex>
#include <utility>

#include "horseshoe/error.hpp"

namespace horseshoe {
namespace detail {

class MapNode {
 public:
  virtual ~MapNode() = default;
  virtual MapValue eval(const Real& x) const = 0;
  virtual MapLayout layout(std::size_t K) const = 0;
  virtual std::vector<HorseshoeInfo> log_horseshoes(std::size_t count) const = 0;
  virtual std::vector<LogRatioLimit> log_ratio_limits() const = 0;
  virtual bool is_identity() const { return false; }
  virtual bool is_exact() const = 0;
  virtual unsigned precision() const = 0;
  virtual std::size_t k_max() const { return 0; }
};

}  // namespace detail

namespace {

using detail::MapNode;

class IdentityNode final : public MapNode {
 public:
  MapValue eval(const Real& x) const override { return {x, false}; }
  MapLayout layout(std::size_t) const override {
    MapLayout out;
    out.segments.emplace_back(1, Interval(Real(0), Real(1)), LegCount(1), BlockKind::identity);
    return out;
  }
  std::vector<HorseshoeInfo> log_horseshoes(std::size_t) const override { return {}; }
  std::vector<LogRatioLimit> log_ratio_limits() const override { return {}; }
  bool is_identity() const override { return true; }
  bool is_exact() const override { return true; }
  unsigned precision() const override { return 0; }
};

// Blocks of a rule, ordered by position, plus the ascending boundary list.
struct Materialized {
  std::vector<Block> blocks;
  std::vector<Real> boundaries;
  bool reaches_end = false;  // finite rule fully materialized
  Real covered;              // total length of the materialized blocks
};

Materialized materialize(const SegmentRule& rule, std::size_t K) {
  Materialized out;
  std::size_t n = K;
  if (rule.count) n = std::min(n, *rule.count);
  out.reaches_end = rule.count.has_value() && n == *rule.count;
  std::vector<Real> lengths;
  lengths.reserve(n);
  Real sum(0);
  for (std::size_t k = 1; k <= n; ++k) {
    Real len = rule.length(k);
    if (len.sign() <= 0) throw Error(ErrorCode::geometry, "segment " + std::to_string(k) + " has non-positive length");
    if (!rule.exact && len.is_exact()) len = len.to_float(rule.precision);
    sum += len;
    if (definitely_greater(sum, Real(1))) {
      throw Error(ErrorCode::geometry, "segment lengths exceed 1 at k=" + std::to_string(k));
    }
    lengths.push_back(std::move(len));
  }
  out.covered = sum;
  // Position order: left anchor keeps k order, right anchor reverses it.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = rule.anchor == Anchor::left ? i + 1 : n - i;
  Real cursor = rule.anchor == Anchor::left ? Real(0) : Real(1) - sum;
  if (rule.anchor == Anchor::right && rule.exact && !cursor.is_exact()) cursor = cursor.to_float(rule.precision);
  out.boundaries.push_back(cursor);
  for (std::size_t k : order) {
    Real next = cursor + lengths[k - 1];
    // Pin the last boundary to the anchored end so it is exact.
    if (rule.anchor == Anchor::right && k == 1) next = Real(1);
    std::optional<LegCount> legs = rule.legs(k);
    if (legs) {
      out.blocks.emplace_back(k, Interval(cursor, next), *legs, BlockKind::horseshoe);
    } else {
      out.blocks.emplace_back(k, Interval(cursor, next), LegCount(1), BlockKind::identity);
    }
    out.boundaries.push_back(next);
    cursor = std::move(next);
  }
  return out;
}

class FamilyNode final : public MapNode {
 public:
  FamilyNode(SegmentRule rule, std::vector<LogRatioLimit> limits, std::size_t k_max)
      : rule_(std::move(rule)), limits_(std::move(limits)), k_max_(k_max) {
    if (!rule_.length || !rule_.legs) throw Error(ErrorCode::invalid_argument, "segment rule is incomplete");
    if (k_max_ == 0) throw Error(ErrorCode::invalid_argument, "K_max must be positive");
  }

  MapValue eval(const Real& x) const override {
    const Materialized& m = cache();
    const auto& b = m.boundaries;
    if (m.blocks.empty()) return {x, !m.reaches_end};
    if (definitely_less(x, b.front())) {
      // Below the materialized span: only right-anchored lazy families.
      if (rule_.anchor == Anchor::left) return {x, false};
      if (x.sign() == 0) return {x, false};
      return {x, !m.reaches_end};
    }
    if (definitely_greater(x, b.back())) {
      if (rule_.anchor == Anchor::right) return {x, false};
      if (x.is_exact() && x.rational() == 1) return {x, false};
      return {x, !m.reaches_end};
    }
    // First boundary with x <= b_i; a boundary point takes the block on its left.
    std::size_t lo = 1;
    std::size_t hi = b.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (less_or_close(x, b[mid])) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return {m.blocks[lo - 1].eval(x), false};
  }

  MapLayout layout(std::size_t K) const override {
    MapLayout out;
    const Materialized fresh = K <= k_max_ ? Materialized{} : materialize(rule_, K);
    const Materialized& m = K <= k_max_ ? cache() : fresh;
    std::size_t take = std::min<std::size_t>(K, m.blocks.size());
    // Blocks are in position order; select those with index <= K.
    for (const Block& block : m.blocks) {
      if (block.index() <= take) out.segments.push_back(block);
    }
    Real reached(0);
    for (const Block& block : out.segments) reached += block.interval().length();
    const bool complete = m.reaches_end && take == m.blocks.size();
    if (rule_.anchor == Anchor::left) {
      Real edge = out.segments.empty() ? Real(0) : out.segments.back().interval().right();
      if (definitely_less(edge, Real(1))) {
        if (complete) {
          out.segments.emplace_back(take + 1, Interval(edge, Real(1)), LegCount(1), BlockKind::identity);
        } else {
          out.tails.push_back(Tail{Interval(edge, Real(1)), 0});
        }
      }
    } else {
      Real edge = out.segments.empty() ? Real(1) : out.segments.front().interval().left();
      if (definitely_greater(edge, Real(0))) {
        if (complete) {
          out.segments.insert(out.segments.begin(),
                              Block(take + 1, Interval(Real(0), edge), LegCount(1), BlockKind::identity));
        } else {
          out.tails.push_back(Tail{Interval(Real(0), edge), 0});
        }
      }
    }
    return out;
  }

  std::vector<HorseshoeInfo> log_horseshoes(std::size_t count) const override {
    std::vector<HorseshoeInfo> out;
    std::size_t k = 1;
    const std::size_t scan_limit = rule_.count.value_or(static_cast<std::size_t>(1) << 40);
    while (out.size() < count && k <= scan_limit) {
      std::optional<std::size_t> next;
      if (rule_.next_horseshoe) {
        next = rule_.next_horseshoe(k);
      } else {
        // bounded linear scan
        for (std::size_t j = k; j <= scan_limit && j < k + 100000; ++j) {
          if (rule_.legs(j)) {
            next = j;
            break;
          }
        }
      }
      if (!next || *next > scan_limit) break;
      std::optional<LegCount> legs = rule_.legs(*next);
      if (!legs) break;
      Real log_len = rule_.log_length ? rule_.log_length(*next) : log(rule_.length(*next));
      out.push_back(HorseshoeInfo{*next, 0, std::move(log_len), std::move(*legs)});
      k = *next + 1;
    }
    return out;
  }

  std::vector<LogRatioLimit> log_ratio_limits() const override { return limits_; }
  bool is_exact() const override { return rule_.exact; }
  unsigned precision() const override { return rule_.exact ? 0 : rule_.precision; }
  std::size_t k_max() const override { return k_max_; }

 private:
  const Materialized& cache() const {
    std::call_once(once_, [this] { cache_ = materialize(rule_, k_max_); });
    return cache_;
  }

  SegmentRule rule_;
  std::vector<LogRatioLimit> limits_;
  std::size_t k_max_;
  mutable std::once_flag once_;
  mutable Materialized cache_;
};

class BlocksNode final : public MapNode {
 public:
  explicit BlocksNode(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
    std::sort(blocks_.begin(), blocks_.end(), [](const Block& a, const Block& b) {
      return definitely_less(a.interval().left(), b.interval().left());
    });
    for (std::size_t i = 1; i < blocks_.size(); ++i) {
      if (definitely_greater(blocks_[i - 1].interval().right(), blocks_[i].interval().left())) {
        throw Error(ErrorCode::geometry, "blocks overlap");
      }
    }
    for (const Block& b : blocks_) {
      exact_ = exact_ && b.interval().left().is_exact() && b.interval().right().is_exact();
      precision_ = std::max(precision_, b.interval().length().precision());
      if (definitely_less(b.interval().left(), Real(0)) || definitely_greater(b.interval().right(), Real(1))) {
        throw Error(ErrorCode::geometry, "block outside [0,1]");
      }
    }
  }

  MapValue eval(const Real& x) const override {
    for (const Block& b : blocks_) {
      if (less_or_close(x, b.interval().right())) {
        if (greater_or_close(x, b.interval().left())) return {b.eval(x), false};
        return {x, false};
      }
    }
    return {x, false};
  }

  MapLayout layout(std::size_t K) const override {
    MapLayout out;
    Real cursor(0);
    std::size_t gap_index = 0;
    std::size_t taken = 0;
    for (const Block& b : blocks_) {
      if (taken++ >= K) break;
      if (definitely_less(cursor, b.interval().left())) {
        out.segments.emplace_back(++gap_index, Interval(cursor, b.interval().left()), LegCount(1),
                                  BlockKind::identity);
      }
      out.segments.push_back(b);
      cursor = b.interval().right();
    }
    if (definitely_less(cursor, Real(1))) {
      out.segments.emplace_back(++gap_index, Interval(cursor, Real(1)), LegCount(1), BlockKind::identity);
    }
    return out;
  }

  std::vector<HorseshoeInfo> log_horseshoes(std::size_t count) const override {
    std::vector<HorseshoeInfo> out;
    for (const Block& b : blocks_) {
      if (out.size() >= count) break;
      if (b.is_horseshoe()) out.push_back(HorseshoeInfo{b.index(), 0, b.log_length(), b.legs()});
    }
    std::stable_sort(out.begin(), out.end(), [](const HorseshoeInfo& a, const HorseshoeInfo& b) {
      return definitely_less(a.legs.log(), b.legs.log());
    });
    return out;
  }

  std::vector<LogRatioLimit> log_ratio_limits() const override { return {}; }
  bool is_exact() const override { return exact_; }
  unsigned precision() const override { return precision_; }
  std::size_t k_max() const override { return blocks_.size(); }

 private:
  std::vector<Block> blocks_;
  bool exact_ = true;
  unsigned precision_ = 0;
};

class FunctionNode final : public MapNode {
 public:
  FunctionNode(std::function<Real(const Real&)> f, std::optional<Real> lipschitz, bool exact)
      : f_(std::move(f)), lipschitz_(std::move(lipschitz)), exact_(exact) {}

  MapValue eval(const Real& x) const override { return {f_(x), false}; }
  MapLayout layout(std::size_t) const override {
    MapLayout out;
    out.free_pieces.push_back(FreePiece{Interval(Real(0), Real(1)), "function", lipschitz_, 0});
    return out;
  }
  std::vector<HorseshoeInfo> log_horseshoes(std::size_t) const override { return {}; }
  std::vector<LogRatioLimit> log_ratio_limits() const override { return {}; }
  bool is_exact() const override { return exact_; }
  unsigned precision() const override { return exact_ ? 0 : kDefaultPrecision; }

 private:
  std::function<Real(const Real&)> f_;
  std::optional<Real> lipschitz_;
  bool exact_;
};

enum class PieceKind { conjugated, direct, bridge };

struct Piece {
  PieceKind kind;
  Interval domain;
  IntervalMap map;  // inner (conjugated) or host (direct)
  Real slope;       // bridge: y = y0 + slope (x - x0)
  Real y0;
};

Real bridge_value(const Piece& p, const Real& x) { return p.y0 + p.slope * (x - p.domain.left()); }

class PiecewiseNode final : public MapNode {
 public:
  explicit PiecewiseNode(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {}

  MapValue eval(const Real& x) const override {
    for (const Piece& p : pieces_) {
      if (less_or_close(x, p.domain.right()) || &p == &pieces_.back()) return eval_piece(p, x);
    }
    return {x, false};
  }

  MapLayout layout(std::size_t K) const override {
    MapLayout out;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      const Piece& p = pieces_[i];
      const int component = static_cast<int>(i);
      switch (p.kind) {
        case PieceKind::conjugated: {
          const AffineChart chart(p.domain);
          const MapLayout inner = p.map.layout(K);
          for (const Block& b : inner.segments) {
            out.segments.push_back(b.relocated(chart.from_unit(b.interval()), component));
          }
          for (const Tail& t : inner.tails) out.tails.push_back(Tail{chart.from_unit(t.region), component});
          for (const FreePiece& f : inner.free_pieces) {
            out.free_pieces.push_back(FreePiece{chart.from_unit(f.domain), f.role, f.lipschitz, component});
          }
          break;
        }
        case PieceKind::direct:
          if (p.map.is_identity()) {
            out.segments.emplace_back(1, p.domain, LegCount(1), BlockKind::identity, component);
          } else {
            out.free_pieces.push_back(FreePiece{p.domain, "host", std::nullopt, component});
          }
          break;
        case PieceKind::bridge:
          out.free_pieces.push_back(FreePiece{p.domain, "bridge", abs(p.slope), component});
          break;
      }
    }
    return out;
  }

  std::vector<HorseshoeInfo> log_horseshoes(std::size_t count) const override {
    std::vector<HorseshoeInfo> out;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      const Piece& p = pieces_[i];
      if (p.kind != PieceKind::conjugated) continue;
      const Real shift = log(p.domain.length());
      for (HorseshoeInfo h : p.map.log_horseshoes(count)) {
        h.log_length = h.log_length + shift;
        h.component = static_cast<int>(i);
        out.push_back(std::move(h));
      }
    }
    std::stable_sort(out.begin(), out.end(), [](const HorseshoeInfo& a, const HorseshoeInfo& b) {
      return definitely_less(a.legs.log(), b.legs.log());
    });
    return out;
  }

  std::vector<LogRatioLimit> log_ratio_limits() const override {
    std::vector<LogRatioLimit> out;
    for (const Piece& p : pieces_) {
      if (p.kind != PieceKind::conjugated) continue;
      for (const LogRatioLimit& l : p.map.log_ratio_limits()) out.push_back(l);
    }
    return out;
  }

  bool is_identity() const override {
    return std::all_of(pieces_.begin(), pieces_.end(), [](const Piece& p) {
      return p.kind != PieceKind::bridge && p.map.is_identity();
    });
  }

  bool is_exact() const override {
    return std::all_of(pieces_.begin(), pieces_.end(), [](const Piece& p) {
      const bool geometry = p.domain.left().is_exact() && p.domain.right().is_exact();
      if (p.kind == PieceKind::bridge) return geometry && p.slope.is_exact() && p.y0.is_exact();
      return geometry && p.map.is_exact();
    });
  }

  unsigned precision() const override {
    unsigned out = 0;
    for (const Piece& p : pieces_) {
      out = std::max(out, p.map.precision());
      out = std::max(out, p.domain.length().precision());
    }
    return out;
  }

  std::size_t k_max() const override {
    std::size_t out = 0;
    for (const Piece& p : pieces_) out = std::max(out, p.map.k_max());
    return out;
  }

 private:
  static MapValue eval_piece(const Piece& p, const Real& x) {
    switch (p.kind) {
      case PieceKind::conjugated: {
        const AffineChart chart(p.domain);
        Real t = chart.to_unit(x);
        if (t.sign() < 0 && !t.is_exact()) t = Real(0);
        MapValue inner = p.map.eval(t);
        return {chart.from_unit(inner.value), inner.truncated};
      }
      case PieceKind::direct: return p.map.eval(x);
      case PieceKind::bridge: return {bridge_value(p, x), false};
    }
    return {x, false};
  }

  std::vector<Piece> pieces_;
};

}  // namespace

std::vector<Block> MapLayout::horseshoes() const {
  std::vector<Block> out;
  for (const Block& b : segments) {
    if (b.is_horseshoe()) out.push_back(b);
  }
  return out;
}

IntervalMap::IntervalMap() : IntervalMap(identity()) {}

IntervalMap::IntervalMap(std::shared_ptr<const detail::MapNode> node, std::string name,
                         std::optional<FamilyParams> params)
    : node_(std::move(node)), name_(std::move(name)), params_(std::move(params)) {}

IntervalMap IntervalMap::identity() {
  static const std::shared_ptr<const detail::MapNode> node = std::make_shared<IdentityNode>();
  FamilyParams params;
  params.kind = FamilyKind::identity;
  params.holder_exponent = Real(1);
  return IntervalMap(node, "identity", params);
}

IntervalMap IntervalMap::family(std::string name, SegmentRule rule, std::optional<FamilyParams> params,
                                std::vector<LogRatioLimit> limits, std::size_t k_max) {
  return IntervalMap(std::make_shared<FamilyNode>(std::move(rule), std::move(limits), k_max), std::move(name),
                     std::move(params));
}

IntervalMap IntervalMap::from_blocks(std::string name, std::vector<Block> blocks) {
  return IntervalMap(std::make_shared<BlocksNode>(std::move(blocks)), std::move(name), std::nullopt);
}

IntervalMap IntervalMap::from_function(std::string name, std::function<Real(const Real&)> f,
                                       std::optional<Real> lipschitz, bool exact) {
  return IntervalMap(std::make_shared<FunctionNode>(std::move(f), std::move(lipschitz), exact), std::move(name),
                     std::nullopt);
}

IntervalMap IntervalMap::renamed(std::string name) const { return IntervalMap(node_, std::move(name), params_); }

IntervalMap IntervalMap::with_params(FamilyParams params) const { return IntervalMap(node_, name_, std::move(params)); }

bool IntervalMap::is_identity() const { return node_->is_identity(); }
bool IntervalMap::is_exact() const { return node_->is_exact(); }
unsigned IntervalMap::precision() const { return node_->precision(); }
std::size_t IntervalMap::k_max() const { return node_->k_max(); }

std::string IntervalMap::mode() const {
  if (is_exact()) return "rational";
  return "float:" + std::to_string(precision());
}

MapValue IntervalMap::eval(const Real& x) const {
  if (definitely_less(x, Real(0)) || definitely_greater(x, Real(1))) {
    throw Error(ErrorCode::domain, "point outside [0,1]: " + x.to_string(12));
  }
  return node_->eval(x);
}

MapLayout IntervalMap::layout(std::size_t K) const { return node_->layout(K); }

std::vector<HorseshoeInfo> IntervalMap::log_horseshoes(std::size_t count) const {
  return node_->log_horseshoes(count);
}

std::vector<LogRatioLimit> IntervalMap::log_ratio_limits() const { return node_->log_ratio_limits(); }

IntervalMap glue(const IntervalMap& left, const IntervalMap& right) {
  if (left.is_identity() && right.is_identity()) return IntervalMap::identity();
  const Real half = Real::ratio(1, 2);
  const Real from_left = half * left.eval(Real(1)).value;
  const Real from_right = half + half * right.eval(Real(0)).value;
  if (compare(from_left, from_right) == Ordering::less || compare(from_left, from_right) == Ordering::greater) {
    throw Error(ErrorCode::gluing, "glued halves disagree at 1/2: " + from_left.to_string(12) + " vs " +
                                       from_right.to_string(12));
  }
  std::vector<Piece> pieces;
  pieces.push_back(Piece{PieceKind::conjugated, Interval(Real(0), half), left, Real(0), Real(0)});
  pieces.push_back(Piece{PieceKind::conjugated, Interval(half, Real(1)), right, Real(0), Real(0)});
  FamilyParams params;
  params.kind = FamilyKind::glued;
  return IntervalMap(std::make_shared<PiecewiseNode>(std::move(pieces)), "glue(" + left.name() + "," + right.name() + ")",
                     params);
}

IntervalMap embed_near_fixed_point(const IntervalMap& host, const Real& p_star, const Real& delta,
                                   const IntervalMap& inner) {
  if (delta.sign() <= 0) throw Error(ErrorCode::geometry, "delta must be positive");
  const Real end = p_star + delta;
  if (definitely_less(p_star, Real(0)) || definitely_greater(end, Real(1))) {
    throw Error(ErrorCode::geometry, "[p*, p*+delta] must lie in [0,1]");
  }
  const Real image = host.eval(p_star).value;
  const Ordering fixed = compare(image, p_star);
  if (fixed == Ordering::less || fixed == Ordering::greater) {
    throw Error(ErrorCode::fixed_point, "host(p*) = " + image.to_string(12) + " differs from p* = " +
                                            p_star.to_string(12));
  }
  const Real mid = p_star + delta / Real(2);
  const Real host_end = host.eval(end).value;
  std::vector<Piece> pieces;
  if (definitely_greater(p_star, Real(0))) {
    pieces.push_back(Piece{PieceKind::direct, Interval(Real(0), p_star), host, Real(0), Real(0)});
  }
  pieces.push_back(Piece{PieceKind::conjugated, Interval(p_star, mid), inner, Real(0), Real(0)});
  pieces.push_back(Piece{PieceKind::bridge, Interval(mid, end), IntervalMap::identity(), (host_end - mid) / (end - mid),
                         mid});
  if (definitely_less(end, Real(1))) {
    pieces.push_back(Piece{PieceKind::direct, Interval(end, Real(1)), host, Real(0), Real(0)});
  }
  // Junction values must agree from both sides.
  const AffineChart chart(Interval(p_star, mid));
  const Real inner_start = chart.from_unit(inner.eval(Real(0)).value);
  const Real inner_end = chart.from_unit(inner.eval(Real(1)).value);
  auto check = [](const Real& a, const Real& b, const char* where) {
    const Ordering c = compare(a, b);
    if (c == Ordering::less || c == Ordering::greater) {
      throw Error(ErrorCode::gluing, std::string("discontinuity at the ") + where + " junction");
    }
  };
  check(inner_start, image, "p*");
  check(inner_end, mid, "p*+delta/2");
  FamilyParams params;
  params.kind = FamilyKind::embedded;
  return IntervalMap(std::make_shared<PiecewiseNode>(std::move(pieces)),
                     "embed(" + host.name() + "," + inner.name() + ")", params);
}

Orbit orbit(const IntervalMap& map, const Real& x, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "orbit length must be >= 1");
  Orbit out;
  out.points.reserve(n);
  out.points.push_back(x);
  for (std::size_t i = 1; i < n; ++i) {
    MapValue v = map.eval(out.points.back());
    out.truncated = out.truncated || v.truncated;
    out.points.push_back(std::move(v.value));
  }
  return out;
}

Real continuity_defect(const IntervalMap& map, std::size_t K) {
  const MapLayout layout = map.layout(K);
  Real worst(0);
  for (std::size_t i = 1; i < layout.segments.size(); ++i) {
    const Block& a = layout.segments[i - 1];
    const Block& b = layout.segments[i];
    const Real& end = a.interval().right();
    const Real& point = b.interval().left();
    // Across an unmaterialized tail each side is checked against the map itself.
    if (compare(end, point) != Ordering::equal) worst = max(worst, abs(map(end) - a.eval(end)));
    else worst = max(worst, abs(a.eval(end) - b.eval(point)));
    worst = max(worst, abs(map(point) - b.eval(point)));
  }
  return worst;
}

}  // namespace horseshoe
