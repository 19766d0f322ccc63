#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "horseshoe/block.hpp"
#include "horseshoe/interval.hpp"
#include "horseshoe/real.hpp"

namespace horseshoe {

inline constexpr std::size_t kDefaultKMax = 64;

/// Which end of [0,1] the first segment touches. Left-anchored families
/// accumulate at 1, right-anchored ones at 0.
enum class Anchor { left, right };

/// Generator for a (possibly infinite) sequence of segments I_1, I_2, ...
struct SegmentRule {
  std::function<Real(std::size_t)> length;
  /// Leg count of segment k, or nullopt for an identity segment.
  std::function<std::optional<LegCount>(std::size_t)> legs;
  /// Smallest horseshoe index >= k. Optional; defaults to scanning `legs`.
  std::function<std::optional<std::size_t>(std::size_t)> next_horseshoe;
  /// log |I_k| without materializing. Optional; defaults to log(length(k)).
  std::function<Real(std::size_t)> log_length;
  /// Finite range 1..count, or nullopt for 1..inf.
  std::optional<std::size_t> count;
  Anchor anchor = Anchor::left;
  bool exact = true;
  unsigned precision = kDefaultPrecision;
};

/// lim log|I_k| / log s_k along the horseshoe blocks of one family.
struct LogRatioLimit {
  bool minus_infinity = false;
  Real value;
};

enum class FamilyKind { identity, hazard, phi01, phi0b, phi_beta, phi_a, glued, embedded, custom };

/// Parameters as the constructions state them; unset fields do not apply.
struct FamilyParams {
  FamilyKind kind = FamilyKind::custom;
  std::optional<Real> r;
  std::optional<Real> beta;
  std::optional<Real> a;
  std::optional<Real> b;
  std::optional<Real> C;
  /// Hölder exponent the construction is designed for.
  std::optional<Real> holder_exponent;
};

struct MapValue {
  Real value;
  /// x fell beyond the deepest materialized block of a lazy family and the
  /// identity was applied in its place.
  bool truncated = false;
};

/// Invariant region made of blocks that were not materialized.
struct Tail {
  Interval region;
  int component = 0;
};

/// Piece that is not a union of invariant blocks (a host map or a bridge).
struct FreePiece {
  Interval domain;
  std::string role;
  std::optional<Real> lipschitz;
  int component = 0;
};

struct MapLayout {
  std::vector<Block> segments;
  std::vector<Tail> tails;
  std::vector<FreePiece> free_pieces;

  std::vector<Block> horseshoes() const;
};

/// Horseshoe data known symbolically, without building the interval.
struct HorseshoeInfo {
  std::size_t index = 0;
  int component = 0;
  Real log_length;
  LegCount legs;
};

namespace detail {
class MapNode;
}

/// Immutable, cheaply copyable self-map of [0,1].
class IntervalMap {
 public:
  IntervalMap();

  static IntervalMap identity();
  static IntervalMap family(std::string name, SegmentRule rule, std::optional<FamilyParams> params = std::nullopt,
                            std::vector<LogRatioLimit> limits = {}, std::size_t k_max = kDefaultKMax);
  /// Finitely many blocks in absolute coordinates; gaps act as the identity.
  static IntervalMap from_blocks(std::string name, std::vector<Block> blocks);
  static IntervalMap from_function(std::string name, std::function<Real(const Real&)> f,
                                   std::optional<Real> lipschitz = std::nullopt, bool exact = false);

  const std::string& name() const noexcept { return name_; }
  IntervalMap renamed(std::string name) const;
  const std::optional<FamilyParams>& params() const noexcept { return params_; }
  IntervalMap with_params(FamilyParams params) const;

  bool is_identity() const;
  /// True when every constant is rational and evaluation stays exact.
  bool is_exact() const;
  unsigned precision() const;
  /// "rational" or "float:<bits>".
  std::string mode() const;
  std::size_t k_max() const;

  MapValue eval(const Real& x) const;
  Real operator()(const Real& x) const { return eval(x).value; }

  /// Segments with up to K materialized blocks per family.
  MapLayout layout(std::size_t K) const;
  std::vector<Block> blocks(std::size_t K) const { return layout(K).segments; }
  std::vector<Block> horseshoe_blocks(std::size_t K) const { return layout(K).horseshoes(); }
  /// Up to `count` horseshoes per family, sorted by leg count.
  std::vector<HorseshoeInfo> log_horseshoes(std::size_t count) const;
  /// Cluster points of log|I_k| / log s_k, one per family with horseshoes.
  std::vector<LogRatioLimit> log_ratio_limits() const;

  const detail::MapNode& node() const { return *node_; }

 private:
  IntervalMap(std::shared_ptr<const detail::MapNode> node, std::string name, std::optional<FamilyParams> params);

  std::shared_ptr<const detail::MapNode> node_;
  std::string name_;
  std::optional<FamilyParams> params_;

  friend IntervalMap glue(const IntervalMap& left, const IntervalMap& right);
  friend IntervalMap embed_near_fixed_point(const IntervalMap& host, const Real& p_star, const Real& delta,
                                            const IntervalMap& inner);
};

/// left conjugated into [0,1/2], right conjugated into [1/2,1].
IntervalMap glue(const IntervalMap& left, const IntervalMap& right);

/// Host outside [p*, p*+delta], inner conjugated into [p*, p*+delta/2] and an
/// affine bridge from (p*+delta/2, p*+delta/2) to (p*+delta, host(p*+delta)).
IntervalMap embed_near_fixed_point(const IntervalMap& host, const Real& p_star, const Real& delta,
                                   const IntervalMap& inner);

struct Orbit {
  std::vector<Real> points;
  bool truncated = false;
};

/// (x, f(x), ..., f^{n-1}(x)).
Orbit orbit(const IntervalMap& map, const Real& x, std::size_t n);

/// Largest |f(b^-) - f(b^+)| type defect over all materialized boundaries, 0
/// when every boundary value agrees exactly.
Real continuity_defect(const IntervalMap& map, std::size_t K);

}  // namespace horseshoe
