#include "horseshoe/real.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <utility>

#include "horseshoe/error.hpp"

namespace horseshoe {
namespace detail {

BigFloat::BigFloat(mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

}  // namespace detail

namespace {

using detail::Ball;
using detail::BigFloat;

constexpr mpfr_prec_t kRadiusPrecision = 64;

Ball make_ball(mpfr_prec_t precision) {
  return Ball{BigFloat(precision), BigFloat(kRadiusPrecision)};
}

// Adds one ulp of the midpoint to the radius when the last operation rounded.
void account_rounding(Ball& b, int ternary) {
  if (ternary == 0) return;
  BigFloat ulp(kRadiusPrecision);
  if (mpfr_zero_p(b.mid.get())) {
    mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_emin(), MPFR_RNDU);
  } else {
    const mpfr_exp_t e = mpfr_get_exp(b.mid.get());
    mpfr_set_ui_2exp(ulp.get(), 1, e - mpfr_get_prec(b.mid.get()), MPFR_RNDU);
  }
  mpfr_add(b.rad.get(), b.rad.get(), ulp.get(), MPFR_RNDU);
}

// |mid| + rad, rounded up.
BigFloat magnitude_upper(const Ball& b) {
  BigFloat out(std::max<mpfr_prec_t>(kRadiusPrecision, 64));
  mpfr_abs(out.get(), b.mid.get(), MPFR_RNDU);
  mpfr_add(out.get(), out.get(), b.rad.get(), MPFR_RNDU);
  return out;
}

bool mpq_is_zero(const mpq_class& q) { return sgn(q) == 0; }

}  // namespace

const char* to_string(Ordering ordering) noexcept {
  switch (ordering) {
    case Ordering::less: return "less";
    case Ordering::equal: return "equal";
    case Ordering::greater: return "greater";
    case Ordering::indistinguishable: return "indistinguishable";
  }
  return "unknown";
}

Real::Real() : rep_(mpq_class(0)) {}

Real::Real(mpq_class value) : rep_(std::move(value)) {
  std::get<mpq_class>(rep_).canonicalize();
}

Real::Real(const mpz_class& value) : rep_(mpq_class(value)) {}

Real::Real(detail::Ball ball) : rep_(std::move(ball)) {}

Real Real::ratio(long numerator, long denominator) {
  if (denominator == 0) throw Error(ErrorCode::domain, "zero denominator");
  return Real(mpq_class(numerator, denominator));
}

Real Real::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  auto parse_integer = [](std::string_view s) -> mpz_class {
    std::string digits(s);
    if (digits.empty()) throw Error(ErrorCode::invalid_argument, "empty number");
    std::size_t start = (digits[0] == '-' || digits[0] == '+') ? 1 : 0;
    if (start == digits.size()) throw Error(ErrorCode::invalid_argument, "bad integer '" + digits + "'");
    for (std::size_t i = start; i < digits.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(digits[i]))) {
        throw Error(ErrorCode::invalid_argument, "bad integer '" + digits + "'");
      }
    }
    if (digits[0] == '+') digits.erase(0, 1);
    return mpz_class(digits, 10);
  };
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const mpz_class num = parse_integer(trim(text.substr(0, slash)));
    const mpz_class den = parse_integer(trim(text.substr(slash + 1)));
    if (den == 0) throw Error(ErrorCode::domain, "zero denominator in '" + std::string(text) + "'");
    return Real(mpq_class(num, den));
  }
  // Decimal literal: [sign] digits [. digits] [e [sign] digits]
  std::string mantissa;
  long exponent = 0;
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  bool seen_digit = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    mantissa.push_back(text[i++]);
    seen_digit = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      mantissa.push_back(text[i++]);
      --exponent;
      seen_digit = true;
    }
  }
  if (!seen_digit) throw Error(ErrorCode::invalid_argument, "bad number '" + std::string(text) + "'");
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    const std::string_view rest = text.substr(i);
    const mpz_class e = parse_integer(rest);
    if (!e.fits_slong_p() || abs(e) > 100000) {
      throw Error(ErrorCode::overflow, "exponent out of range in '" + std::string(text) + "'");
    }
    exponent += e.get_si();
    i = text.size();
  }
  if (i != text.size()) throw Error(ErrorCode::invalid_argument, "bad number '" + std::string(text) + "'");
  mpz_class m(mantissa, 10);
  if (negative) m = -m;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0) return Real(mpq_class(m * scale));
  return Real(mpq_class(m, scale));
}

Real Real::parse_float(std::string_view text, unsigned precision) {
  Ball b = make_ball(precision);
  const std::string s(text);
  char* end = nullptr;
  const int ternary = mpfr_strtofr(b.mid.get(), s.c_str(), &end, 10, MPFR_RNDN);
  if (end == s.c_str() || *end != '\0') {
    throw Error(ErrorCode::invalid_argument, "bad decimal '" + s + "'");
  }
  account_rounding(b, ternary);
  return Real(std::move(b));
}

Real Real::pi(unsigned precision) {
  Ball b = make_ball(precision);
  account_rounding(b, mpfr_const_pi(b.mid.get(), MPFR_RNDN));
  return Real(std::move(b));
}

Real Real::from_mpfr(mpfr_srcptr value, bool rounded) {
  Ball b = make_ball(mpfr_get_prec(value));
  mpfr_set(b.mid.get(), value, MPFR_RNDN);
  account_rounding(b, rounded ? 1 : 0);
  return Real(std::move(b));
}

Real Real::from_double(double value, unsigned precision) {
  if (!std::isfinite(value)) throw Error(ErrorCode::domain, "non-finite double");
  Ball b = make_ball(std::max<unsigned>(precision, 53));
  account_rounding(b, mpfr_set_d(b.mid.get(), value, MPFR_RNDN));
  return Real(std::move(b));
}

unsigned Real::precision() const noexcept {
  if (is_exact()) return 0;
  return static_cast<unsigned>(std::get<Ball>(rep_).mid.precision());
}

const mpq_class& Real::rational() const {
  if (!is_exact()) throw Error(ErrorCode::mode_mismatch, "value is not an exact rational");
  return std::get<mpq_class>(rep_);
}

const detail::Ball& Real::ball() const { return std::get<Ball>(rep_); }

double Real::to_double() const {
  if (is_exact()) {
    BigFloat tmp(64);
    mpfr_set_q(tmp.get(), std::get<mpq_class>(rep_).get_mpq_t(), MPFR_RNDN);
    return mpfr_get_d(tmp.get(), MPFR_RNDN);
  }
  return mpfr_get_d(ball().mid.get(), MPFR_RNDN);
}

double Real::radius() const {
  if (is_exact()) return 0.0;
  return mpfr_get_d(ball().rad.get(), MPFR_RNDU);
}

std::string Real::radius_string() const {
  if (is_exact()) return "0";
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%.6Re", ball().rad.get());
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

Real Real::lower_endpoint() const {
  if (is_exact()) return *this;
  BigFloat v(ball().mid.precision() + kRadiusPrecision);
  mpfr_sub(v.get(), ball().mid.get(), ball().rad.get(), MPFR_RNDD);
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), v.get());
  return Real(q);
}

Real Real::upper_endpoint() const {
  if (is_exact()) return *this;
  BigFloat v(ball().mid.precision() + kRadiusPrecision);
  mpfr_add(v.get(), ball().mid.get(), ball().rad.get(), MPFR_RNDU);
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), v.get());
  return Real(q);
}

mpz_class Real::floor() const {
  mpz_class out;
  if (is_exact()) {
    const mpq_class& q = std::get<mpq_class>(rep_);
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  } else {
    mpfr_get_z(out.get_mpz_t(), ball().mid.get(), MPFR_RNDD);
  }
  return out;
}

int Real::sign() const {
  if (is_exact()) return sgn(std::get<mpq_class>(rep_));
  return mpfr_sgn(ball().mid.get());
}

bool Real::is_integer() const {
  if (is_exact()) return std::get<mpq_class>(rep_).get_den() == 1;
  return mpfr_integer_p(ball().mid.get()) && mpfr_zero_p(ball().rad.get());
}

std::string Real::to_string(int digits) const {
  if (is_exact()) return std::get<mpq_class>(rep_).get_str();
  if (digits <= 0) digits = static_cast<int>(std::ceil(precision() * 0.30102999566398)) + 1;
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%.*Re", digits - 1, ball().mid.get());
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

bool Real::identical(const Real& other) const {
  if (is_exact() != other.is_exact()) return false;
  if (is_exact()) return rational() == other.rational();
  return precision() == other.precision() && mpfr_equal_p(ball().mid.get(), other.ball().mid.get()) &&
         mpfr_equal_p(ball().rad.get(), other.ball().rad.get());
}

namespace {

mpfr_prec_t joint_precision(const Real& a, const Real& b) {
  return static_cast<mpfr_prec_t>(std::max(a.precision(), b.precision()));
}

}  // namespace

Real Real::operator-() const {
  if (is_exact()) return Real(mpq_class(-std::get<mpq_class>(rep_)));
  Ball b = ball();
  mpfr_neg(b.mid.get(), b.mid.get(), MPFR_RNDN);
  return Real(std::move(b));
}

namespace {

// Produces a ball copy of x at the requested precision.
Ball as_ball(const Real& x, const Ball* own, mpfr_prec_t precision) {
  Ball b = make_ball(precision);
  if (own == nullptr) {
    account_rounding(b, mpfr_set_q(b.mid.get(), x.rational().get_mpq_t(), MPFR_RNDN));
    return b;
  }
  account_rounding(b, mpfr_set(b.mid.get(), own->mid.get(), MPFR_RNDN));
  mpfr_add(b.rad.get(), b.rad.get(), own->rad.get(), MPFR_RNDU);
  return b;
}

}  // namespace

#define HORSESHOE_BALL_OF(x, p) as_ball((x), (x).is_exact() ? nullptr : &(x).ball(), (p))

Real Real::enclose(const Real& center, const Real& radius, unsigned precision) {
  const mpfr_prec_t p = static_cast<mpfr_prec_t>(std::max(precision, center.precision()));
  Ball b = HORSESHOE_BALL_OF(center, p);
  Ball r = HORSESHOE_BALL_OF(radius, kRadiusPrecision);
  BigFloat extra = magnitude_upper(r);
  mpfr_add(b.rad.get(), b.rad.get(), extra.get(), MPFR_RNDU);
  return Real(std::move(b));
}

Real Real::to_float(unsigned precision) const {
  return Real(HORSESHOE_BALL_OF(*this, static_cast<mpfr_prec_t>(precision)));
}

Real& Real::operator+=(const Real& rhs) {
  if (is_exact() && rhs.is_exact()) {
    std::get<mpq_class>(rep_) += rhs.rational();
    return *this;
  }
  const mpfr_prec_t p = joint_precision(*this, rhs);
  Ball a = HORSESHOE_BALL_OF(*this, p);
  Ball b = HORSESHOE_BALL_OF(rhs, p);
  Ball r = make_ball(p);
  const int t = mpfr_add(r.mid.get(), a.mid.get(), b.mid.get(), MPFR_RNDN);
  mpfr_add(r.rad.get(), a.rad.get(), b.rad.get(), MPFR_RNDU);
  account_rounding(r, t);
  rep_ = std::move(r);
  return *this;
}

Real& Real::operator-=(const Real& rhs) { return *this += -rhs; }

Real& Real::operator*=(const Real& rhs) {
  if (is_exact() && rhs.is_exact()) {
    std::get<mpq_class>(rep_) *= rhs.rational();
    return *this;
  }
  const mpfr_prec_t p = joint_precision(*this, rhs);
  Ball a = HORSESHOE_BALL_OF(*this, p);
  Ball b = HORSESHOE_BALL_OF(rhs, p);
  Ball r = make_ball(p);
  const int t = mpfr_mul(r.mid.get(), a.mid.get(), b.mid.get(), MPFR_RNDN);
  BigFloat term(kRadiusPrecision);
  BigFloat mag(kRadiusPrecision);
  mpfr_abs(mag.get(), a.mid.get(), MPFR_RNDU);
  mpfr_mul(term.get(), mag.get(), b.rad.get(), MPFR_RNDU);
  mpfr_add(r.rad.get(), r.rad.get(), term.get(), MPFR_RNDU);
  mpfr_abs(mag.get(), b.mid.get(), MPFR_RNDU);
  mpfr_mul(term.get(), mag.get(), a.rad.get(), MPFR_RNDU);
  mpfr_add(r.rad.get(), r.rad.get(), term.get(), MPFR_RNDU);
  mpfr_mul(term.get(), a.rad.get(), b.rad.get(), MPFR_RNDU);
  mpfr_add(r.rad.get(), r.rad.get(), term.get(), MPFR_RNDU);
  account_rounding(r, t);
  rep_ = std::move(r);
  return *this;
}

Real& Real::operator/=(const Real& rhs) {
  if (is_exact() && rhs.is_exact()) {
    if (mpq_is_zero(rhs.rational())) throw Error(ErrorCode::domain, "division by zero");
    std::get<mpq_class>(rep_) /= rhs.rational();
    return *this;
  }
  const mpfr_prec_t p = joint_precision(*this, rhs);
  Ball a = HORSESHOE_BALL_OF(*this, p);
  Ball b = HORSESHOE_BALL_OF(rhs, p);
  BigFloat den(kRadiusPrecision);
  mpfr_abs(den.get(), b.mid.get(), MPFR_RNDD);
  mpfr_sub(den.get(), den.get(), b.rad.get(), MPFR_RNDD);
  if (mpfr_sgn(den.get()) <= 0) {
    throw Error(ErrorCode::indistinguishable, "division by a value indistinguishable from zero");
  }
  Ball r = make_ball(p);
  const int t = mpfr_div(r.mid.get(), a.mid.get(), b.mid.get(), MPFR_RNDN);
  BigFloat q(kRadiusPrecision);
  BigFloat mag(kRadiusPrecision);
  mpfr_abs(mag.get(), a.mid.get(), MPFR_RNDU);
  BigFloat bl(kRadiusPrecision);
  mpfr_abs(bl.get(), b.mid.get(), MPFR_RNDD);
  mpfr_div(q.get(), mag.get(), bl.get(), MPFR_RNDU);
  mpfr_mul(q.get(), q.get(), b.rad.get(), MPFR_RNDU);
  mpfr_add(q.get(), q.get(), a.rad.get(), MPFR_RNDU);
  mpfr_div(r.rad.get(), q.get(), den.get(), MPFR_RNDU);
  account_rounding(r, t);
  rep_ = std::move(r);
  return *this;
}

Ordering compare(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) {
    const int c = cmp(a.rational(), b.rational());
    return c < 0 ? Ordering::less : (c > 0 ? Ordering::greater : Ordering::equal);
  }
  const Real d = a - b;
  const Ball& db = d.ball();
  BigFloat mag(kRadiusPrecision);
  mpfr_abs(mag.get(), db.mid.get(), MPFR_RNDD);
  if (mpfr_cmp(mag.get(), db.rad.get()) > 0) {
    return mpfr_sgn(db.mid.get()) > 0 ? Ordering::greater : Ordering::less;
  }
  if (mpfr_zero_p(db.mid.get()) && mpfr_zero_p(db.rad.get())) return Ordering::equal;
  return Ordering::indistinguishable;
}

Real abs(const Real& x) { return x.sign() < 0 ? -x : x; }

Real log(const Real& x) {
  if (x.is_exact()) {
    if (x.rational() == 1) return Real(0);
    if (sgn(x.rational()) <= 0) throw Error(ErrorCode::domain, "log of a non-positive value");
  }
  const mpfr_prec_t p = x.is_exact() ? kDefaultPrecision : x.precision();
  Ball a = HORSESHOE_BALL_OF(x, p);
  BigFloat lower(kRadiusPrecision);
  mpfr_sub(lower.get(), a.mid.get(), a.rad.get(), MPFR_RNDD);
  if (mpfr_sgn(lower.get()) <= 0) {
    throw Error(ErrorCode::domain, "log of a value not certified positive");
  }
  Ball r = make_ball(p);
  const int t = mpfr_log(r.mid.get(), a.mid.get(), MPFR_RNDN);
  mpfr_div(r.rad.get(), a.rad.get(), lower.get(), MPFR_RNDU);
  account_rounding(r, t);
  return Real(std::move(r));
}

Real exp(const Real& x) {
  if (x.is_exact() && sgn(x.rational()) == 0) return Real(1);
  const mpfr_prec_t p = x.is_exact() ? kDefaultPrecision : x.precision();
  Ball a = HORSESHOE_BALL_OF(x, p);
  Ball r = make_ball(p);
  const int t = mpfr_exp(r.mid.get(), a.mid.get(), MPFR_RNDN);
  if (mpfr_inf_p(r.mid.get())) throw Error(ErrorCode::overflow, "exp overflow");
  BigFloat growth(kRadiusPrecision);
  mpfr_expm1(growth.get(), a.rad.get(), MPFR_RNDU);
  BigFloat mag = magnitude_upper(Ball{r.mid, BigFloat(kRadiusPrecision)});
  // one ulp slack for the rounded midpoint
  account_rounding(r, t);
  mpfr_add(mag.get(), mag.get(), r.rad.get(), MPFR_RNDU);
  mpfr_mul(growth.get(), growth.get(), mag.get(), MPFR_RNDU);
  mpfr_add(r.rad.get(), r.rad.get(), growth.get(), MPFR_RNDU);
  return Real(std::move(r));
}

Real pow(const Real& base, long exponent) {
  if (base.is_exact()) {
    const mpq_class& q = base.rational();
    const unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
    mpz_class num;
    mpz_class den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), e);
    if (exponent < 0) {
      if (num == 0) throw Error(ErrorCode::domain, "zero to a negative power");
      return Real(mpq_class(den, num));
    }
    return Real(mpq_class(num, den));
  }
  unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  Real result(1);
  Real square = base;
  while (e != 0) {
    if (e & 1UL) result *= square;
    e >>= 1;
    if (e != 0) square *= square;
  }
  if (exponent < 0) return Real(1) / result;
  return result;
}

Real pow(const Real& base, const Real& exponent) {
  if (exponent.is_exact() && exponent.is_integer()) {
    const mpz_class e = exponent.rational().get_num();
    if (!e.fits_slong_p()) throw Error(ErrorCode::overflow, "integer exponent out of range");
    return pow(base, e.get_si());
  }
  if (base.is_exact() && sgn(base.rational()) == 0) return Real(0);
  return exp(exponent * log(base));
}

Real log2(const Real& x) {
  const unsigned p = x.is_exact() ? kDefaultPrecision : x.precision();
  return log(x) / log(Real(2).to_float(p));
}

Real log10(const Real& x) {
  const unsigned p = x.is_exact() ? kDefaultPrecision : x.precision();
  return log(x) / log(Real(10).to_float(p));
}

Real max(const Real& a, const Real& b) {
  switch (compare(a, b)) {
    case Ordering::greater:
    case Ordering::equal: return a;
    case Ordering::less: return b;
    case Ordering::indistinguishable: return a.to_double() >= b.to_double() ? a : b;
  }
  return a;
}

Real min(const Real& a, const Real& b) {
  switch (compare(a, b)) {
    case Ordering::less:
    case Ordering::equal: return a;
    case Ordering::greater: return b;
    case Ordering::indistinguishable: return a.to_double() <= b.to_double() ? a : b;
  }
  return a;
}

long magnitude_bits(const mpz_class& value) {
  if (value == 0) return 0;
  return static_cast<long>(mpz_sizeinbase(value.get_mpz_t(), 2));
}

#undef HORSESHOE_BALL_OF

}  // namespace horseshoe
