#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "horseshoe/block.hpp"
#include "horseshoe/interval_map.hpp"
#include "horseshoe/real.hpp"

namespace horseshoe {

/// t^alpha, or omega(t) = -t log t held at its maximum e^-1 for t > e^-1.
class Modulus {
 public:
  enum class Kind { power, log_linear };

  static Modulus power(Real alpha);
  static Modulus omega();

  Kind kind() const noexcept { return kind_; }
  /// Exponent of a power modulus; throws for omega.
  const Real& alpha() const;
  Real operator()(const Real& t) const;
  /// log of the modulus at exp(log_t), for scales below double range.
  Real log_at(const Real& log_t) const;
  std::string to_string() const;

 private:
  Modulus(Kind kind, Real alpha) : kind_(kind), alpha_(std::move(alpha)) {}
  Kind kind_;
  Real alpha_;
};

/// |f(x) - f(y)| / modulus(|x - y|).
Real holder_ratio(const IntervalMap& map, const Real& x, const Real& y, const Modulus& modulus);

/// Supremum of the ratio over pairs inside one leg: s * w / modulus(w), w = |I|/s.
Real within_branch_sup(const Block& block, const Modulus& modulus);
Real within_branch_sup(const Block& block, const Real& alpha);

/// Bound for pairs in the last leg of block m and the first leg of block m+1.
/// Closed form for geometric families with 3^n legs, sampled otherwise.
Real cross_block_bound(const IntervalMap& family, std::size_t m, const Real& alpha);

/// Bound for pairs in blocks m and m + k_gap of a geometric family.
Real far_block_bound(const IntervalMap& family, std::size_t m, std::size_t k_gap, const Real& alpha);
/// Limit of far_block_bound as k_gap grows.
Real far_block_limit(const IntervalMap& family, std::size_t m, const Real& alpha);
/// Bound on |f(y)| / omega(|y|) for y in block m (m >= 2) of a geometric family.
Real origin_case_bound(const IntervalMap& family, std::size_t m);
/// Limit of origin_case_bound: 1 / log(1 / (1 - 3^-r)).
Real origin_case_limit(const IntervalMap& family);

/// Pair configurations sampled per block: same leg, adjacent blocks across a
/// shared endpoint, blocks at least two apart, and the two endpoints of [0,1].
struct SamplePlan {
  std::size_t K = 15;
  /// Offsets per side for adjacent pairs: 0, 1/d, ..., 1 leg width.
  std::size_t density = 4;
  bool far_blocks = true;
  bool endpoints = true;
  std::size_t workers = 1;

  std::string id() const;
};

struct BlockSup {
  std::size_t k = 0;
  int component = 0;
  double sup_ratio = 0.0;
};

enum class Verdict { bounded, diverging };

const char* to_string(Verdict verdict) noexcept;

struct HolderReport {
  Modulus modulus = Modulus::omega();
  std::string sample_plan;
  /// Same-leg supremum of each horseshoe block.
  std::vector<BlockSup> per_block_sup;
  /// Adjacent-block supremum, indexed by the smaller block index.
  std::vector<BlockSup> cross_block_sup;
  double far_sup = 0.0;
  double endpoint_sup = 0.0;
  double adjacent_sup = 0.0;
  /// Largest ratio over every configuration.
  double sup_ratio = 0.0;
  Verdict verdict = Verdict::bounded;
  /// Per-block slope b of log S_k = a + b k + c log k (largest over components).
  double growth_fit = 0.0;
  double log_term = 0.0;
  double fit_rms = 0.0;
  std::size_t pairs = 0;
};

inline constexpr double kGrowthTolerance = 0.02;

HolderReport modulus_check(const IntervalMap& map, const Modulus& modulus, const SamplePlan& plan = {});

/// Power-modulus report with closed-form block bounds folded in.
HolderReport holder_verdict(const IntervalMap& family, const Real& alpha, std::size_t K, std::size_t workers = 1);

struct EvidenceRow {
  std::string name;
  /// Largest tested exponent with a bounded verdict, if any.
  std::optional<double> alpha_bounded;
  std::optional<double> alpha_diverging;
  std::optional<double> mdim_predictor;
};

/// (Hölder exponent, mdim) evidence over an exponent grid.
std::vector<EvidenceRow> evidence_table(const std::vector<IntervalMap>& maps, const std::vector<Real>& alphas,
                                        std::size_t K);

}  // namespace horseshoe
