#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "horseshoe/interval.hpp"
#include "horseshoe/real.hpp"

namespace horseshoe {

/// Leg counts above this many bits are kept only as logarithms.
inline constexpr long kExactLegBits = 1L << 17;

/// A positive integer that may be too large to hold exactly.
class LegCount {
 public:
  LegCount();
  template <std::integral I>
  LegCount(I value) : LegCount(mpz_class(static_cast<long>(value))) {}  // NOLINT(google-explicit-constructor)
  explicit LegCount(const mpz_class& value);

  /// base^exponent; exact when small enough, otherwise log-only.
  static LegCount power(long base, const mpz_class& exponent);
  /// Known only through its natural log; parity unknown unless given.
  static LegCount from_log(Real log_value, std::optional<bool> odd = std::nullopt);

  bool is_exact() const noexcept { return exact_.has_value(); }
  /// Throws overflow when only the log is known.
  const mpz_class& value() const;
  const Real& log() const noexcept { return log_; }
  double log10() const;
  std::optional<bool> odd() const noexcept { return odd_; }
  bool fits_u64() const;
  std::string to_string() const;

  friend bool operator==(const LegCount& a, const LegCount& b);

 private:
  std::optional<mpz_class> exact_;
  Real log_;
  std::optional<bool> odd_;
};

enum class BlockKind { identity, horseshoe };

const char* to_string(BlockKind kind) noexcept;

/// One segment of an interval map. A horseshoe block maps each of its `legs`
/// equal subintervals affinely onto the whole interval, alternating
/// orientation and starting increasing, so both endpoints are fixed.
class Block {
 public:
  Block(std::size_t index, Interval interval, LegCount legs, BlockKind kind, int component = 0);

  std::size_t index() const noexcept { return index_; }
  const Interval& interval() const noexcept { return interval_; }
  const LegCount& legs() const noexcept { return legs_; }
  BlockKind kind() const noexcept { return kind_; }
  bool is_horseshoe() const noexcept { return kind_ == BlockKind::horseshoe; }
  /// Index of the top-level piece this block belongs to in a glued map.
  int component() const noexcept { return component_; }

  /// Leg width |I| / s.
  Real critical_scale() const;
  Real log_critical_scale() const;
  Real log_length() const;

  /// Value at x in the block interval; identity blocks return x.
  Real eval(const Real& x) const;
  Block relocated(Interval interval, int component) const;

 private:
  std::size_t index_;
  Interval interval_;
  LegCount legs_;
  BlockKind kind_;
  int component_;
};

/// Zigzag with `legs` full branches on [0,1] evaluated at t.
Real zigzag(const mpz_class& legs, const Real& t);

Block uniform_block(const Interval& interval, const LegCount& legs, std::size_t index = 1);

}  // namespace horseshoe
