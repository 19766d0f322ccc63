#include "horseshoe/block.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "horseshoe/error.hpp"

namespace horseshoe {

LegCount::LegCount() : LegCount(mpz_class(1)) {}

LegCount::LegCount(const mpz_class& value) {
  if (value < 1) throw Error(ErrorCode::invalid_argument, "leg count must be positive");
  exact_ = value;
  log_ = horseshoe::log(Real(value));
  odd_ = mpz_odd_p(value.get_mpz_t()) != 0;
}

LegCount LegCount::power(long base, const mpz_class& exponent) {
  if (base < 1 || exponent < 0) throw Error(ErrorCode::invalid_argument, "bad leg power");
  const double bits = exponent.get_d() * std::log2(static_cast<double>(base));
  if (bits <= static_cast<double>(kExactLegBits)) {
    mpz_class value;
    mpz_ui_pow_ui(value.get_mpz_t(), static_cast<unsigned long>(base), exponent.get_ui());
    return LegCount(value);
  }
  LegCount out;
  out.exact_.reset();
  out.log_ = Real(exponent) * horseshoe::log(Real(base).to_float(kDefaultPrecision));
  out.odd_ = (base % 2) == 1;
  return out;
}

LegCount LegCount::from_log(Real log_value, std::optional<bool> odd) {
  if (log_value.sign() < 0) throw Error(ErrorCode::invalid_argument, "leg count log must be >= 0");
  LegCount out;
  out.exact_.reset();
  out.log_ = std::move(log_value);
  out.odd_ = odd;
  return out;
}

const mpz_class& LegCount::value() const {
  if (!exact_) {
    throw Error(ErrorCode::overflow, "leg count 10^" + std::to_string(log10()) + " is held only in log form");
  }
  return *exact_;
}

double LegCount::log10() const { return log_.to_double() / std::log(10.0); }

bool LegCount::fits_u64() const {
  return exact_ && mpz_sizeinbase(exact_->get_mpz_t(), 2) <= 63;
}

std::string LegCount::to_string() const {
  if (exact_) return exact_->get_str();
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "10^%.6f", log10());
  return buffer;
}

bool operator==(const LegCount& a, const LegCount& b) {
  if (a.exact_ && b.exact_) return *a.exact_ == *b.exact_;
  const Ordering c = compare(a.log_, b.log_);
  return c == Ordering::equal || c == Ordering::indistinguishable;
}

const char* to_string(BlockKind kind) noexcept {
  return kind == BlockKind::horseshoe ? "horseshoe" : "identity";
}

Block::Block(std::size_t index, Interval interval, LegCount legs, BlockKind kind, int component)
    : index_(index), interval_(std::move(interval)), legs_(std::move(legs)), kind_(kind), component_(component) {
  if (kind_ == BlockKind::identity) {
    legs_ = LegCount(1);
    return;
  }
  if (legs_.odd().has_value() && !*legs_.odd()) {
    throw Error(ErrorCode::parity, "horseshoe block " + std::to_string(index_) + " has an even leg count " +
                                       legs_.to_string());
  }
  if (legs_.is_exact() && legs_.value() < 3) {
    throw Error(ErrorCode::parity, "horseshoe block needs at least 3 legs");
  }
  if (interval_.length().sign() <= 0) throw Error(ErrorCode::geometry, "horseshoe block has zero length");
}

Real Block::critical_scale() const {
  if (legs_.is_exact()) return interval_.length() / Real(legs_.value());
  return exp(log_critical_scale());
}

Real Block::log_length() const { return log(interval_.length()); }

Real Block::log_critical_scale() const { return log_length() - legs_.log(); }

Real zigzag(const mpz_class& legs, const Real& t) {
  const Real y = Real(legs) * t;
  mpz_class j = y.floor();
  // a breakpoint belongs to the branch on its left
  if (y.is_exact() && y.is_integer() && j > 0) j -= 1;
  if (j < 0) j = 0;
  if (j > legs - 1) j = legs - 1;
  const Real frac = y - Real(j);
  Real z = mpz_even_p(j.get_mpz_t()) ? frac : Real(1) - frac;
  if (!z.is_exact() && z.radius() > 0.5) {
    z = Real::enclose(Real::ratio(1, 2), Real::ratio(1, 2), z.precision());
  }
  return z;
}

Real Block::eval(const Real& x) const {
  if (kind_ == BlockKind::identity) return x;
  const Real& left = interval_.left();
  const Real length = interval_.length();
  const Real t = (x - left) / length;
  return left + length * zigzag(legs_.value(), t);
}

Block Block::relocated(Interval interval, int component) const {
  Block out = *this;
  out.interval_ = std::move(interval);
  out.component_ = component;
  return out;
}

Block uniform_block(const Interval& interval, const LegCount& legs, std::size_t index) {
  if (legs.odd().has_value() && !*legs.odd()) {
    throw Error(ErrorCode::parity, "uniform block with even leg count " + legs.to_string());
  }
  return Block(index, interval, legs, BlockKind::horseshoe);
}

}  // namespace horseshoe
