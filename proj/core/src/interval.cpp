#include "horseshoe/interval.hpp"

#include <utility>

#include "horseshoe/error.hpp"

namespace horseshoe {

Interval::Interval() : left_(0), right_(1) {}

Interval::Interval(Real left, Real right) : left_(std::move(left)), right_(std::move(right)) {
  if (definitely_greater(left_, right_)) {
    throw Error(ErrorCode::geometry, "interval with left > right: [" + left_.to_string(12) + ", " +
                                         right_.to_string(12) + "]");
  }
}

bool Interval::contains(const Real& x) const {
  return greater_or_close(x, left_) && less_or_close(x, right_);
}

AffineChart::AffineChart(Interval domain) : domain_(std::move(domain)), length_(domain_.length()) {
  if (length_.sign() <= 0) throw Error(ErrorCode::geometry, "chart domain has zero length");
}

Real AffineChart::to_unit(const Real& x) const { return (x - domain_.left()) / length_; }

Real AffineChart::from_unit(const Real& t) const { return domain_.left() + length_ * t; }

Interval AffineChart::from_unit(const Interval& unit) const {
  return Interval(from_unit(unit.left()), from_unit(unit.right()));
}

}  // namespace horseshoe
