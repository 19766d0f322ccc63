#include <algorithm>
#include <cmath>
#include <utility>

#include "dsl_eval.hpp"
#include "horseshoe/dsl.hpp"
#include "horseshoe/error.hpp"

namespace horseshoe::dsl {

namespace {

constexpr long kMaxExactPowerBits = 1L << 22;
constexpr std::size_t kTailTerms = 4096;

unsigned working_precision(const Mode& mode) { return mode.rational ? kDefaultPrecision : mode.bits; }

Real log_of(const Real& x, const Mode& mode) {
  if (!definitely_greater(x, Real(0))) throw Error(ErrorCode::domain, "logarithm of a non-positive value");
  if (x.is_exact()) {
    if (x.rational() == 1) return Real(0);
    return log(x.to_float(working_precision(mode)));
  }
  return log(x);
}

Real power(const Real& base, const Real& exponent, const Mode& mode) {
  if (exponent.is_exact() && exponent.is_integer()) {
    const mpz_class e = exponent.floor();
    if (base.is_exact()) {
      const mpq_class& q = base.rational();
      if (q == 0 && e < 0) throw Error(ErrorCode::domain, "division by zero");
      if (q == 0 || q == 1) return base;
      if (q == -1) return Real(mpz_odd_p(e.get_mpz_t()) ? -1 : 1);
      const long bits = std::max(magnitude_bits(q.get_num()), magnitude_bits(q.get_den()));
      if (abs(e) <= mpz_class(kMaxExactPowerBits) && bits * mpz_class(abs(e)).get_si() <= kMaxExactPowerBits) {
        return pow(base, e.get_si());
      }
      if (mode.rational) throw Error(ErrorCode::overflow, "exact power too large");
    }
    if (!mpz_class(abs(e)).fits_slong_p()) throw Error(ErrorCode::overflow, "exponent too large");
    if (!base.is_exact()) return pow(base, e.get_si());
    return pow(base.to_float(working_precision(mode)), e.get_si());
  }
  if (mode.rational) throw Error(ErrorCode::mode_mismatch, "non-integer power in rational mode");
  if (!definitely_greater(base, Real(0))) throw Error(ErrorCode::domain, "non-integer power of a non-positive base");
  return exp(exponent * log_of(base, mode));
}

struct Affine {
  mpq_class slope;
  mpq_class intercept;
};

std::optional<Affine> affine(const Expr& e) {
  switch (e.kind) {
    case ExprKind::number: return Affine{0, e.value};
    case ExprKind::index: return Affine{1, 0};
    case ExprKind::negate: {
      auto a = affine(*e.lhs);
      if (!a) return std::nullopt;
      return Affine{-a->slope, -a->intercept};
    }
    case ExprKind::add:
    case ExprKind::subtract: {
      auto a = affine(*e.lhs);
      auto b = affine(*e.rhs);
      if (!a || !b) return std::nullopt;
      const int s = e.kind == ExprKind::add ? 1 : -1;
      return Affine{a->slope + s * b->slope, a->intercept + s * b->intercept};
    }
    case ExprKind::multiply: {
      auto a = affine(*e.lhs);
      auto b = affine(*e.rhs);
      if (!a || !b) return std::nullopt;
      if (a->slope == 0) return Affine{a->intercept * b->slope, a->intercept * b->intercept};
      if (b->slope == 0) return Affine{b->intercept * a->slope, b->intercept * a->intercept};
      return std::nullopt;
    }
    case ExprKind::divide: {
      auto a = affine(*e.lhs);
      auto b = affine(*e.rhs);
      if (!a || !b || b->slope != 0 || b->intercept == 0) return std::nullopt;
      return Affine{a->slope / b->intercept, a->intercept / b->intercept};
    }
    default: return std::nullopt;
  }
}

bool near_zero(const Real& x) { return !definitely_less(x, Real(0)) && !definitely_greater(x, Real(0)); }

// Larger of two growths; equal rates compare by power.
int compare_growth(const Growth& a, const Growth& b) {
  const Real dr = a.rate - b.rate;
  if (definitely_greater(dr, Real(0))) return 1;
  if (definitely_less(dr, Real(0))) return -1;
  const Real dp = a.power - b.power;
  if (definitely_greater(dp, Real(0))) return 1;
  if (definitely_less(dp, Real(0))) return -1;
  return 0;
}

std::optional<LogRatioLimit> ratio_limit(const Growth& length, const Growth& legs) {
  if (definitely_greater(legs.rate, Real(0))) {
    if (near_zero(length.rate)) return LogRatioLimit{false, Real(0)};
    return LogRatioLimit{false, length.rate / legs.rate};
  }
  if (!near_zero(legs.rate)) return std::nullopt;
  if (definitely_less(length.rate, Real(0))) return LogRatioLimit{true, Real(0)};
  if (!near_zero(length.rate)) return std::nullopt;
  if (definitely_greater(legs.power, Real(0))) return LogRatioLimit{false, length.power / legs.power};
  if (definitely_less(length.power, Real(0))) return LogRatioLimit{true, Real(0)};
  return std::nullopt;
}

bool unbounded_above(const Predicate& p) {
  if (p.kind != PredicateKind::compare) return true;
  return p.relation == Relation::gt || p.relation == Relation::ge || p.relation == Relation::ne;
}

void check_total_length(const FamilySpec& spec) {
  const std::size_t n = spec.last ? *spec.last - spec.first + 1 : kTailTerms;
  if (spec.last && spec.mode.rational) {
    Real total(0);
    for (std::size_t k = spec.first; k <= *spec.last; ++k) total += evaluate(*spec.length, spec.index, k, spec.mode);
    if (definitely_greater(total, Real(1))) throw Error(ErrorCode::geometry, "segment lengths sum past 1");
    return;
  }
  double total = 0.0;
  const Mode probe{false, 64};
  for (std::size_t i = 0; i < std::min<std::size_t>(n, kTailTerms); ++i) {
    total += evaluate(*spec.length, spec.index, spec.first + i, probe).to_double();
  }
  if (total > 1.0 + 1e-9) throw Error(ErrorCode::geometry, "segment lengths sum past 1");
}

// Infinite ranges need a convergent length series. Recognized shapes are
// decided from their growth; anything else must decay faster than 1/k over
// the last doubling of the first 4096 terms.
void check_convergence(const FamilySpec& spec) {
  if (spec.last) return;
  if (auto g = growth(*spec.length, spec.index)) {
    if (definitely_less(g->rate, Real(0))) return;
    if (near_zero(g->rate) && definitely_less(g->power, Real(-1))) return;
    throw Error(ErrorCode::divergence, "segment lengths " + emit(*spec.length) + " do not sum to a finite total");
  }
  const Mode probe{false, 64};
  const double half = evaluate(*spec.length, spec.index, spec.first + kTailTerms / 2, probe).to_double();
  const double full = evaluate(*spec.length, spec.index, spec.first + kTailTerms, probe).to_double();
  if (!(full > 0.0) || !(half > 0.0) || std::log2(half / full) <= 1.0) {
    throw Error(ErrorCode::divergence, "cannot certify that " + emit(*spec.length) + " sums to a finite total");
  }
}

}  // namespace

namespace detail {

bool is_constant(const Expr& e) {
  if (e.kind == ExprKind::index) return false;
  if (e.lhs && !is_constant(*e.lhs)) return false;
  return !e.rhs || is_constant(*e.rhs);
}

Parity parity(const Expr& e, bool index_odd) {
  switch (e.kind) {
    case ExprKind::number:
      if (e.value.get_den() != 1) return Parity::unknown;
      return mpz_odd_p(e.value.get_num_mpz_t()) ? Parity::odd : Parity::even;
    case ExprKind::index: return index_odd ? Parity::odd : Parity::even;
    case ExprKind::negate: return parity(*e.lhs, index_odd);
    case ExprKind::add:
    case ExprKind::subtract: {
      const Parity a = parity(*e.lhs, index_odd);
      const Parity b = parity(*e.rhs, index_odd);
      if (a == Parity::unknown || b == Parity::unknown) return Parity::unknown;
      return a == b ? Parity::even : Parity::odd;
    }
    case ExprKind::multiply: {
      const Parity a = parity(*e.lhs, index_odd);
      const Parity b = parity(*e.rhs, index_odd);
      if (a == Parity::unknown || b == Parity::unknown) return Parity::unknown;
      return (a == Parity::odd && b == Parity::odd) ? Parity::odd : Parity::even;
    }
    case ExprKind::power: {
      const Parity a = parity(*e.lhs, index_odd);
      if (a == Parity::odd) return Parity::odd;
      const Expr& x = *e.rhs;
      if (a == Parity::even && x.kind == ExprKind::number && x.value.get_den() == 1 && x.value >= 1) {
        return Parity::even;
      }
      return Parity::unknown;
    }
    default: return Parity::unknown;
  }
}

Real log_evaluate(const Expr& e, const std::string& index, std::size_t k, const Mode& mode) {
  switch (e.kind) {
    case ExprKind::multiply:
      return log_evaluate(*e.lhs, index, k, mode) + log_evaluate(*e.rhs, index, k, mode);
    case ExprKind::divide:
      return log_evaluate(*e.lhs, index, k, mode) - log_evaluate(*e.rhs, index, k, mode);
    case ExprKind::power: {
      const Real x = evaluate(*e.rhs, index, k, mode);
      return x * log_evaluate(*e.lhs, index, k, mode);
    }
    default: return log_of(evaluate(e, index, k, mode), mode);
  }
}

LegCount legs_count(const Expr& e, const std::string& index, std::size_t k, const Mode& mode) {
  if (e.kind == ExprKind::power && e.lhs->kind == ExprKind::number && e.lhs->value.get_den() == 1 &&
      e.lhs->value >= 2 && e.lhs->value.get_num().fits_slong_p()) {
    const Real x = evaluate(*e.rhs, index, k, mode);
    if (x.is_exact() && x.is_integer() && x.sign() >= 0) {
      return LegCount::power(e.lhs->value.get_num().get_si(), x.floor());
    }
  }
  const Real v = evaluate(e, index, k, mode);
  if (!v.is_exact() || !v.is_integer()) throw Error(ErrorCode::semantic, "legs must be an exact integer");
  if (v.sign() <= 0) throw Error(ErrorCode::semantic, "legs must be positive");
  return LegCount(v.floor());
}

}  // namespace detail

Real evaluate(const Expr& e, const std::string& index, std::size_t k, const Mode& mode) {
  switch (e.kind) {
    case ExprKind::number: return Real(e.value);
    case ExprKind::pi:
      if (mode.rational) throw Error(ErrorCode::mode_mismatch, "pi is not available in rational mode");
      return Real::pi(mode.bits);
    case ExprKind::index:
      if (e.name != index) throw Error(ErrorCode::semantic, "unknown identifier '" + e.name + "'");
      return Real(static_cast<long>(k));
    case ExprKind::negate: return -evaluate(*e.lhs, index, k, mode);
    case ExprKind::add: return evaluate(*e.lhs, index, k, mode) + evaluate(*e.rhs, index, k, mode);
    case ExprKind::subtract: return evaluate(*e.lhs, index, k, mode) - evaluate(*e.rhs, index, k, mode);
    case ExprKind::multiply: return evaluate(*e.lhs, index, k, mode) * evaluate(*e.rhs, index, k, mode);
    case ExprKind::divide: {
      const Real d = evaluate(*e.rhs, index, k, mode);
      if (d.is_exact() ? d.sign() == 0 : (!definitely_greater(d, Real(0)) && !definitely_less(d, Real(0)))) {
        throw Error(ErrorCode::domain, "division by zero");
      }
      return evaluate(*e.lhs, index, k, mode) / d;
    }
    case ExprKind::power:
      return power(evaluate(*e.lhs, index, k, mode), evaluate(*e.rhs, index, k, mode), mode);
  }
  throw Error(ErrorCode::semantic, "bad expression");
}

std::optional<Growth> growth(const Expr& e, const std::string& index) {
  const unsigned p = kDefaultPrecision;
  switch (e.kind) {
    case ExprKind::number:
      if (e.value <= 0) return std::nullopt;
      return Growth{Real(0), Real(0)};
    case ExprKind::pi: return Growth{Real(0), Real(0)};
    case ExprKind::index:
      if (e.name != index) return std::nullopt;
      return Growth{Real(0), Real(1)};
    case ExprKind::multiply:
    case ExprKind::divide: {
      auto a = growth(*e.lhs, index);
      auto b = growth(*e.rhs, index);
      if (!a || !b) return std::nullopt;
      if (e.kind == ExprKind::multiply) return Growth{a->rate + b->rate, a->power + b->power};
      return Growth{a->rate - b->rate, a->power - b->power};
    }
    case ExprKind::power: {
      if (detail::is_constant(*e.rhs)) {
        auto a = growth(*e.lhs, index);
        if (!a) return std::nullopt;
        Real c;
        try {
          c = evaluate(*e.rhs, index, 1, Mode{false, p});
        } catch (const Error&) {
          return std::nullopt;
        }
        return Growth{a->rate * c, a->power * c};
      }
      if (!detail::is_constant(*e.lhs)) return std::nullopt;
      auto slope = affine(*e.rhs);
      if (!slope) return std::nullopt;
      Real base;
      try {
        base = evaluate(*e.lhs, index, 1, Mode{false, p});
      } catch (const Error&) {
        return std::nullopt;
      }
      if (!definitely_greater(base, Real(0))) return std::nullopt;
      if (slope->slope == 0) return Growth{Real(0), Real(0)};
      return Growth{Real(slope->slope) * log_of(base, Mode{false, p}), Real(0)};
    }
    case ExprKind::add: {
      auto a = growth(*e.lhs, index);
      auto b = growth(*e.rhs, index);
      if (!a || !b) return std::nullopt;
      return compare_growth(*a, *b) >= 0 ? a : b;
    }
    case ExprKind::subtract: {
      auto a = growth(*e.lhs, index);
      auto b = growth(*e.rhs, index);
      if (!a || !b || compare_growth(*a, *b) <= 0) return std::nullopt;
      return a;
    }
    default: return std::nullopt;
  }
}

IntervalMap compile(const FamilySpec& spec, const CompileOptions& options) {
  if (!spec.length || spec.rules.empty()) throw Error(ErrorCode::semantic, "incomplete family spec");
  if (spec.mode.rational) {
    bool pi = contains_pi(*spec.length);
    for (const HorseshoeRule& r : spec.rules) pi = pi || contains_pi(*r.legs);
    if (pi) throw Error(ErrorCode::mode_mismatch, "family " + spec.name + " uses pi in rational mode");
    const Real probe = evaluate(*spec.length, spec.index, spec.first, spec.mode);
    if (!probe.is_exact()) throw Error(ErrorCode::mode_mismatch, "length is not rational");
  }
  check_convergence(spec);
  check_total_length(spec);

  const auto shared = std::make_shared<const FamilySpec>(spec);
  const std::size_t first = spec.first;
  SegmentRule rule;
  rule.exact = spec.mode.rational;
  rule.precision = working_precision(spec.mode);
  rule.anchor = spec.anchor;
  if (spec.last) rule.count = *spec.last - spec.first + 1;
  rule.length = [shared, first](std::size_t j) {
    Real v = evaluate(*shared->length, shared->index, first + j - 1, shared->mode);
    if (shared->mode.rational && !v.is_exact()) throw Error(ErrorCode::mode_mismatch, "length is not rational");
    return v;
  };
  rule.log_length = [shared, first](std::size_t j) {
    return detail::log_evaluate(*shared->length, shared->index, first + j - 1, shared->mode);
  };
  rule.legs = [shared, first](std::size_t j) -> std::optional<LegCount> {
    const std::size_t k = first + j - 1;
    for (const HorseshoeRule& r : shared->rules) {
      if (!r.predicate.matches(k)) continue;
      LegCount legs = detail::legs_count(*r.legs, shared->index, k, shared->mode);
      if (legs.is_exact() ? (legs.value() < 3 || mpz_even_p(legs.value().get_mpz_t())) : (legs.odd() == false)) {
        throw Error(ErrorCode::parity, "block " + std::to_string(k) + " needs an odd leg count of at least 3");
      }
      return legs;
    }
    return std::nullopt;
  };
  rule.next_horseshoe = [shared, first](std::size_t j) -> std::optional<std::size_t> {
    const std::size_t k = first + j - 1;
    std::optional<std::size_t> best;
    for (const HorseshoeRule& r : shared->rules) {
      auto m = r.predicate.next_match(k);
      if (m && (!best || *m < *best)) best = m;
    }
    if (!best || (shared->last && *best > *shared->last)) return std::nullopt;
    return *best - first + 1;
  };

  std::vector<LogRatioLimit> limits;
  if (!spec.last) {
    if (auto gl = growth(*spec.length, spec.index)) {
      for (const HorseshoeRule& r : spec.rules) {
        if (!unbounded_above(r.predicate)) continue;
        auto gs = growth(*r.legs, spec.index);
        if (!gs) continue;
        auto limit = ratio_limit(*gl, *gs);
        if (!limit) continue;
        const bool seen = std::any_of(limits.begin(), limits.end(), [&](const LogRatioLimit& l) {
          return l.minus_infinity == limit->minus_infinity &&
                 (l.minus_infinity || compare(l.value, limit->value) != Ordering::less);
        });
        if (!seen) limits.push_back(*limit);
      }
    }
  }
  FamilyParams params;
  params.kind = FamilyKind::custom;
  return IntervalMap::family(spec.name, std::move(rule), std::move(params), std::move(limits), options.k_max);
}

IntervalMap compile_text(std::string_view text, const CompileOptions& options) {
  return compile(parse(text), options);
}

}  // namespace horseshoe::dsl
