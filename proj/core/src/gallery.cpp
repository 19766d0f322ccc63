#include "horseshoe/gallery.hpp"

#include <map>
#include <utility>

#include "horseshoe/error.hpp"

namespace horseshoe {

namespace {

Real log3(unsigned precision) { return log(Real(3).to_float(precision)); }

// 3^{-x} for real x; exact when x is an exact integer.
Real three_to_minus(const Real& x, unsigned precision) {
  if (x.is_exact() && x.is_integer()) return pow(Real(3), Real(0) - x);
  return exp(-(x.to_float(precision)) * log3(precision));
}

void require_positive(const Real& r, const char* what) {
  if (!definitely_greater(r, Real(0))) {
    throw Error(ErrorCode::domain, std::string(what) + " must be positive");
  }
}

std::optional<std::size_t> next_tower_index(std::size_t k) { return next_tower(k); }

// Geometric family C 3^{-(j-1) r}; `every` selects all indices or towers only.
IntervalMap geometric_family(std::string name, const Real& r, bool every, FamilyParams params,
                             const GalleryOptions& options) {
  const bool exact = r.is_exact() && r.is_integer();
  const unsigned p = options.precision;
  const Real C = Real(1) - three_to_minus(r, p);
  const Real log_c = log(exact ? C : C.to_float(p));
  const Real r_log3 = r.to_float(p) * log3(p);
  params.C = C;
  SegmentRule rule;
  rule.exact = exact;
  rule.precision = p;
  rule.anchor = Anchor::left;
  rule.length = [C, r, p](std::size_t j) { return C * three_to_minus(r * Real(static_cast<long>(j - 1)), p); };
  rule.log_length = [log_c, r_log3](std::size_t j) { return log_c - r_log3 * Real(static_cast<long>(j - 1)); };
  if (every) {
    rule.legs = [](std::size_t j) -> std::optional<LegCount> { return LegCount::power(3, mpz_class(j)); };
    rule.next_horseshoe = [](std::size_t k) -> std::optional<std::size_t> { return k; };
  } else {
    rule.legs = [](std::size_t j) -> std::optional<LegCount> {
      if (!is_tower(j)) return std::nullopt;
      return LegCount::power(3, mpz_class(j));
    };
    rule.next_horseshoe = next_tower_index;
  }
  std::vector<LogRatioLimit> limits{LogRatioLimit{false, Real(0) - r}};
  return IntervalMap::family(std::move(name), std::move(rule), std::move(params), std::move(limits), options.k_max);
}

std::string format_param(const Real& v) { return v.is_exact() ? v.to_string() : v.to_string(17); }

}  // namespace

const char* to_string(GalleryId id) noexcept {
  switch (id) {
    case GalleryId::identity: return "identity";
    case GalleryId::hazard: return "hazard";
    case GalleryId::phi01: return "phi01";
    case GalleryId::phi0b: return "phi0b";
    case GalleryId::phi_beta: return "phi_beta";
    case GalleryId::phi_a: return "phi_a";
    case GalleryId::varphi_ab: return "varphi_ab";
    case GalleryId::psi_b_product: return "psi_b";
  }
  return "unknown";
}

GalleryId parse_gallery_id(std::string_view name) {
  static const std::map<std::string, GalleryId, std::less<>> ids{
      {"identity", GalleryId::identity}, {"hazard", GalleryId::hazard},       {"phi01", GalleryId::phi01},
      {"phi0b", GalleryId::phi0b},       {"phi_beta", GalleryId::phi_beta},   {"phi_a", GalleryId::phi_a},
      {"varphi_ab", GalleryId::varphi_ab}, {"psi_b", GalleryId::psi_b_product}, {"psi_b_product", GalleryId::psi_b_product},
  };
  const auto it = ids.find(name);
  if (it == ids.end()) throw Error(ErrorCode::unknown_id, "unknown gallery id '" + std::string(name) + "'");
  return it->second;
}

bool is_tower(std::size_t j) {
  const auto t = next_tower(j);
  return t && *t == j;
}

std::optional<std::size_t> next_tower(std::size_t j) {
  for (std::size_t n = 1; n <= 15; ++n) {
    std::size_t value = 1;
    for (std::size_t i = 0; i < n; ++i) value *= n;
    if (value >= j) return value;
  }
  return std::nullopt;
}

IntervalMap hazard_map(const GalleryOptions& options) {
  const unsigned p = options.precision;
  const Real log2v = log(Real(2).to_float(p));
  SegmentRule rule;
  rule.exact = true;
  rule.precision = p;
  rule.anchor = Anchor::right;
  rule.length = [](std::size_t n) { return pow(Real(2), -static_cast<long>(n)); };
  rule.log_length = [log2v](std::size_t n) { return Real(0) - log2v * Real(static_cast<long>(n)); };
  rule.legs = [](std::size_t n) -> std::optional<LegCount> { return LegCount(2 * static_cast<long>(n) + 1); };
  rule.next_horseshoe = [](std::size_t k) -> std::optional<std::size_t> { return k; };
  FamilyParams params;
  params.kind = FamilyKind::hazard;
  params.a = Real(0);
  params.b = Real(0);
  return IntervalMap::family("hazard", std::move(rule), std::move(params), {LogRatioLimit{true, Real(0)}},
                             options.k_max);
}

IntervalMap phi_zero_one(const GalleryOptions& options) {
  const unsigned p = options.precision;
  const Real pi = Real::pi(p);
  const Real C = Real(6) / (pi * pi);
  const Real log_c = log(C);
  SegmentRule rule;
  rule.exact = false;
  rule.precision = p;
  rule.length = [C](std::size_t j) {
    const Real jj(static_cast<long>(j));
    return C / (jj * jj);
  };
  rule.log_length = [log_c, p](std::size_t j) {
    return log_c - Real(2) * log(Real(static_cast<long>(j)).to_float(p));
  };
  rule.legs = [](std::size_t j) -> std::optional<LegCount> {
    if (!is_tower(j)) return std::nullopt;
    return LegCount::power(3, mpz_class(j));
  };
  rule.next_horseshoe = next_tower_index;
  FamilyParams params;
  params.kind = FamilyKind::phi01;
  params.a = Real(0);
  params.b = Real(1);
  params.C = C;
  return IntervalMap::family("phi01", std::move(rule), std::move(params), {LogRatioLimit{false, Real(0)}},
                             options.k_max);
}

IntervalMap phi_zero_b(const Real& r, const GalleryOptions& options) {
  require_positive(r, "r");
  FamilyParams params;
  params.kind = FamilyKind::phi0b;
  params.r = r;
  params.a = Real(0);
  params.b = Real(1) / (r + Real(1));
  return geometric_family("phi0b:r=" + format_param(r), r, false, std::move(params), options);
}

IntervalMap phi_beta(const Real& beta, const GalleryOptions& options) {
  if (!definitely_greater(beta, Real(1))) throw Error(ErrorCode::domain, "beta must exceed 1");
  const unsigned p = options.precision;
  detail::BigFloat zeta(p);
  const Real beta_f = beta.to_float(p);
  const bool integral = beta.is_exact() && beta.is_integer();
  // C = 1/zeta(beta)
  Real C;
  if (integral) {
    mpfr_zeta_ui(zeta.get(), beta.rational().get_num().get_ui(), MPFR_RNDN);
  } else {
    detail::BigFloat arg(p);
    mpfr_set_d(arg.get(), beta.to_double(), MPFR_RNDN);
    mpfr_zeta(zeta.get(), arg.get(), MPFR_RNDN);
  }
  C = Real(1) / Real::from_mpfr(zeta.get(), true);
  const Real log_c = log(C);
  SegmentRule rule;
  rule.exact = false;
  rule.precision = p;
  rule.length = [C, beta_f, integral, beta, p](std::size_t n) {
    const Real nn = Real(static_cast<long>(n));
    if (integral) return C / pow(nn, beta.rational().get_num().get_si());
    return C * exp(-(beta_f * log(nn.to_float(p))));
  };
  rule.log_length = [log_c, beta_f, p](std::size_t n) {
    return log_c - beta_f * log(Real(static_cast<long>(n)).to_float(p));
  };
  rule.legs = [](std::size_t n) -> std::optional<LegCount> {
    if (n < 2) return std::nullopt;
    return LegCount::power(3, mpz_class(n));
  };
  rule.next_horseshoe = [](std::size_t k) -> std::optional<std::size_t> { return std::max<std::size_t>(k, 2); };
  FamilyParams params;
  params.kind = FamilyKind::phi_beta;
  params.beta = beta;
  params.a = Real(1);
  params.b = Real(1);
  params.C = C;
  return IntervalMap::family("phi_beta:beta=" + format_param(beta), std::move(rule), std::move(params),
                             {LogRatioLimit{false, Real(0)}}, options.k_max);
}

IntervalMap phi_a(const Real& r, const GalleryOptions& options) {
  require_positive(r, "r");
  FamilyParams params;
  params.kind = FamilyKind::phi_a;
  params.r = r;
  params.a = Real(1) / (r + Real(1));
  params.b = params.a;
  params.holder_exponent = r / (r + Real(1));
  return geometric_family("phi_a:r=" + format_param(r), r, true, std::move(params), options);
}

IntervalMap varphi_ab(const Real& a, const Real& b, const GalleryOptions& options) {
  if (a.sign() < 0 || definitely_greater(b, Real(1))) throw Error(ErrorCode::domain, "need 0 <= a <= b <= 1");
  if (definitely_greater(a, b)) throw Error(ErrorCode::domain, "varphi_ab needs a <= b");
  IntervalMap left = IntervalMap::identity();
  if (b.sign() > 0) {
    if (compare(b, Real(1)) == Ordering::equal) {
      left = phi_zero_one(options);
    } else {
      left = phi_zero_b((Real(1) - b) / b, options);
    }
  }
  IntervalMap right = IntervalMap::identity();
  if (a.sign() > 0) {
    if (compare(a, Real(1)) == Ordering::equal) {
      right = phi_beta(Real(2), options);
    } else {
      right = phi_a((Real(1) - a) / a, options);
    }
  }
  FamilyParams params;
  params.kind = FamilyKind::glued;
  params.a = a;
  params.b = b;
  IntervalMap out = glue(left, right);
  return out.renamed("varphi_ab:a=" + format_param(a) + ",b=" + format_param(b)).with_params(std::move(params));
}

ProductMap psi_b_product(const Real& b, long n, const GalleryOptions& options) {
  if (n < 1) throw Error(ErrorCode::domain, "dimension must be >= 1");
  if (b.sign() < 0 || definitely_greater(b, Real(n))) throw Error(ErrorCode::domain, "need 0 <= b <= n");
  const Real a = b / Real(n);
  IntervalMap factor = IntervalMap::identity();
  if (a.sign() > 0) {
    if (compare(a, Real(1)) == Ordering::equal) {
      factor = phi_beta(Real(2), options);
    } else {
      factor = phi_a((Real(1) - a) / a, options);
    }
  }
  std::vector<IntervalMap> factors(static_cast<std::size_t>(n), factor);
  return ProductMap(std::move(factors), "psi_b:b=" + format_param(b) + ",n=" + std::to_string(n));
}

System build_gallery(std::string_view spec, const GalleryOptions& options) {
  const auto colon = spec.find(':');
  const GalleryId id = parse_gallery_id(spec.substr(0, colon));
  std::map<std::string, Real, std::less<>> args;
  if (colon != std::string_view::npos) {
    std::string_view rest = spec.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw Error(ErrorCode::invalid_argument, "expected key=value in '" + std::string(spec) + "'");
      }
      args.emplace(std::string(item.substr(0, eq)), Real::parse(item.substr(eq + 1)));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
  }
  auto need = [&](const char* key) -> const Real& {
    const auto it = args.find(key);
    if (it == args.end()) {
      throw Error(ErrorCode::invalid_argument, std::string("missing parameter '") + key + "' in '" +
                                                   std::string(spec) + "'");
    }
    return it->second;
  };
  switch (id) {
    case GalleryId::identity: return IntervalMap::identity();
    case GalleryId::hazard: return hazard_map(options);
    case GalleryId::phi01: return phi_zero_one(options);
    case GalleryId::phi0b: return phi_zero_b(need("r"), options);
    case GalleryId::phi_beta: return phi_beta(need("beta"), options);
    case GalleryId::phi_a: return phi_a(need("r"), options);
    case GalleryId::varphi_ab: return varphi_ab(need("a"), need("b"), options);
    case GalleryId::psi_b_product: {
      const Real& n = need("n");
      if (!n.is_exact() || !n.is_integer()) throw Error(ErrorCode::invalid_argument, "n must be an integer");
      return psi_b_product(need("b"), n.rational().get_num().get_si(), options);
    }
  }
  throw Error(ErrorCode::unknown_id, "unknown gallery id");
}

}  // namespace horseshoe
