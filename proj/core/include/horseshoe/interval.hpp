#pragma once

#include "horseshoe/real.hpp"

namespace horseshoe {

/// Closed interval [left, right] with left <= right.
class Interval {
 public:
  Interval();
  Interval(Real left, Real right);

  const Real& left() const noexcept { return left_; }
  const Real& right() const noexcept { return right_; }
  Real length() const { return right_ - left_; }
  Real midpoint() const { return (left_ + right_) / Real(2); }
  /// Membership with indistinguishable endpoints counted as inside.
  bool contains(const Real& x) const;

 private:
  Real left_;
  Real right_;
};

/// The increasing affine map of `domain` onto [0,1].
class AffineChart {
 public:
  explicit AffineChart(Interval domain);

  const Interval& domain() const noexcept { return domain_; }
  Real to_unit(const Real& x) const;
  Real from_unit(const Real& t) const;
  /// Image of an interval of [0,1] under from_unit.
  Interval from_unit(const Interval& unit) const;

 private:
  Interval domain_;
  Real length_;
};

}  // namespace horseshoe
