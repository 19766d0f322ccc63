#pragma once

#include <vector>

#include "horseshoe/block.hpp"
#include "horseshoe/real.hpp"

namespace horseshoe {

/// g(x) = |1 - |3x - 1||.
Real tent_eval(const Real& x);

/// Piecewise-affine description of the n-fold tent iterate: 3^n full branches
/// of width 3^-n, alternating orientation with the first increasing.
class TentIterate {
 public:
  explicit TentIterate(long n);

  long n() const noexcept { return n_; }
  const LegCount& branches() const noexcept { return branches_; }
  /// log of the branch slope magnitude, n log 3.
  Real log_slope() const;
  /// j / 3^n for j = 0..3^n; overflow when more than `limit` are requested.
  std::vector<Real> breakpoints(std::size_t limit = 1u << 20) const;
  Real eval(const Real& x) const;

 private:
  long n_;
  LegCount branches_;
};

TentIterate tent_iterate(long n);

}  // namespace horseshoe
