#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <concepts>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace horseshoe {

inline constexpr unsigned kDefaultPrecision = 256;

namespace detail {

// Owning wrapper around mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t precision);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }

 private:
  mpfr_t value_;
};

// Midpoint-radius enclosure. The radius is kept at low precision and rounded up.
struct Ball {
  BigFloat mid;
  BigFloat rad;
};

}  // namespace detail

enum class Ordering { less, equal, greater, indistinguishable };

const char* to_string(Ordering ordering) noexcept;

/// A real number that is either an exact rational or a high-precision
/// floating value carrying a certified absolute error radius.
///
/// Operations between two exact values stay exact. As soon as one operand is
/// a float, the result is a float at the larger of the two precisions and its
/// radius bounds the distance to the true real result of the whole chain.
/// Comparisons that cannot be decided inside the radius report
/// Ordering::indistinguishable instead of guessing.
class Real {
 public:
  Real();
  template <std::integral I>
  Real(I value) : rep_(mpq_class(static_cast<long>(value))) {}  // NOLINT(google-explicit-constructor)
  explicit Real(mpq_class value);
  explicit Real(const mpz_class& value);

  static Real ratio(long numerator, long denominator);
  /// Integers, "p/q" and decimal literals ("0.25", "1e-3") parse exactly.
  static Real parse(std::string_view text);
  /// Decimal literal rounded to a float at `precision` bits.
  static Real parse_float(std::string_view text, unsigned precision);
  static Real pi(unsigned precision = kDefaultPrecision);
  static Real from_double(double value, unsigned precision = kDefaultPrecision);
  /// Float ball on an MPFR value; `rounded` adds one ulp of radius.
  static Real from_mpfr(mpfr_srcptr value, bool rounded);
  /// Float ball around `center` widened by an upper bound of |radius|.
  static Real enclose(const Real& center, const Real& radius, unsigned precision = kDefaultPrecision);

  bool is_exact() const noexcept { return std::holds_alternative<mpq_class>(rep_); }
  /// Working precision in bits; 0 for exact values.
  unsigned precision() const noexcept;
  /// Throws unless exact.
  const mpq_class& rational() const;
  double to_double() const;
  /// Upper bound on the absolute error, 0 for exact values.
  double radius() const;
  /// Midpoint-radius in full precision (radius as a string, for reports).
  std::string radius_string() const;
  Real to_float(unsigned precision) const;
  /// Exact rational bounds enclosing the value.
  Real lower_endpoint() const;
  Real upper_endpoint() const;
  /// Floor of the value (of the midpoint for floats).
  mpz_class floor() const;
  /// Sign of the value (of the midpoint for floats).
  int sign() const;
  bool is_integer() const;
  /// Exact values print as "p/q" (or "p"); floats as decimal scientific with
  /// `digits` significant digits (0 = enough for the precision).
  std::string to_string(int digits = 0) const;

  Real operator-() const;
  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);

  friend Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
  friend Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
  friend Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
  friend Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }

  friend Ordering compare(const Real& a, const Real& b);
  friend Real abs(const Real& x);
  friend Real log(const Real& x);
  friend Real exp(const Real& x);
  friend Real pow(const Real& base, long exponent);

  /// Exact structural identity (same representation, same bits).
  bool identical(const Real& other) const;

 private:
  explicit Real(detail::Ball ball);
  const detail::Ball& ball() const;

  std::variant<mpq_class, detail::Ball> rep_;
};

Ordering compare(const Real& a, const Real& b);
Real abs(const Real& x);
Real log(const Real& x);
Real exp(const Real& x);
Real pow(const Real& base, long exponent);
/// Exact when the exponent is an exact integer; otherwise exp(e * log(base)).
Real pow(const Real& base, const Real& exponent);
Real log2(const Real& x);
Real log10(const Real& x);

inline bool definitely_less(const Real& a, const Real& b) {
  return compare(a, b) == Ordering::less;
}
inline bool definitely_greater(const Real& a, const Real& b) {
  return compare(a, b) == Ordering::greater;
}
/// a <= b, treating indistinguishable values as equal.
inline bool less_or_close(const Real& a, const Real& b) {
  return compare(a, b) != Ordering::greater;
}
inline bool greater_or_close(const Real& a, const Real& b) {
  return compare(a, b) != Ordering::less;
}
/// Larger value by midpoint when the comparison is undecided.
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);

/// Bit-length estimate of |x| (floor(log2|x|)+1) for magnitude guards.
long magnitude_bits(const mpz_class& value);

}  // namespace horseshoe
