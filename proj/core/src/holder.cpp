#include "horseshoe/holder.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "horseshoe/error.hpp"
#include "horseshoe/mdim.hpp"
#include "horseshoe/parallel.hpp"

namespace horseshoe {

namespace {

const Real& inv_e() {
  static const Real value = exp(Real(-1));
  return value;
}

struct Geometric {
  Real r;
  Real C;
};

Geometric geometric_params(const IntervalMap& family) {
  const auto& p = family.params();
  if (!p || p->kind != FamilyKind::phi_a || !p->r || !p->C) {
    throw Error(ErrorCode::invalid_argument, "closed form needs a geometric family with 3^n legs");
  }
  return {*p->r, *p->C};
}

Real pow3(const Real& exponent) { return pow(Real(3), exponent); }

std::vector<Block> ordered_segments(const MapLayout& layout) {
  std::vector<Block> segs = layout.segments;
  std::stable_sort(segs.begin(), segs.end(), [](const Block& a, const Block& b) {
    return definitely_less(a.interval().left(), b.interval().left());
  });
  return segs;
}

Real leg_width(const Block& b) {
  return b.is_horseshoe() ? b.critical_scale() : b.interval().length();
}

enum class Config { same_leg, adjacent, far, endpoint, identity };

struct Pair {
  Real x;
  Real y;
  Config config;
  std::size_t k = 0;
  int component = 0;
};

void add_adjacent(std::vector<Pair>& pairs, const Block& left, const Block& right, std::size_t density,
                  std::size_t m, int component) {
  const Real& b = left.interval().right();
  const Real wl = leg_width(left);
  const Real wr = leg_width(right);
  const Real d(static_cast<long>(density));
  for (std::size_t i = 0; i <= density; ++i) {
    for (std::size_t j = 0; j <= density; ++j) {
      if (i == 0 && j == 0) continue;
      Real x = b - wl * Real(static_cast<long>(i)) / d;
      Real y = b + wr * Real(static_cast<long>(j)) / d;
      pairs.push_back({std::move(x), std::move(y), Config::adjacent, m, component});
    }
  }
}

std::array<Real, 4> extreme_points(const Block& b) {
  const Real& l = b.interval().left();
  const Real& r = b.interval().right();
  const Real w = leg_width(b);
  return {l, l + w, r - w, r};
}

bool shares_endpoint(const Block& left, const Block& right) {
  const Ordering o = compare(left.interval().right(), right.interval().left());
  return o == Ordering::equal || o == Ordering::indistinguishable;
}

struct Fit {
  double slope = 0.0;
  double log_term = 0.0;
  double rms = 0.0;
};

// Least squares for log S = a + b k + c log k.
Fit fit_growth(const std::vector<std::pair<double, double>>& samples) {
  const std::size_t n = samples.size();
  std::array<std::array<double, 4>, 3> m{};
  for (const auto& [k, v] : samples) {
    const std::array<double, 3> row{1.0, k, std::log(k)};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m[i][j] += row[i] * row[j];
      m[i][3] += row[i] * v;
    }
  }
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int i = col + 1; i < 3; ++i) {
      if (std::fabs(m[i][col]) > std::fabs(m[pivot][col])) pivot = i;
    }
    std::swap(m[col], m[pivot]);
    if (std::fabs(m[col][col]) < 1e-300) throw Error(ErrorCode::inconclusive, "singular growth fit");
    for (int i = 0; i < 3; ++i) {
      if (i == col) continue;
      const double f = m[i][col] / m[col][col];
      for (int j = col; j < 4; ++j) m[i][j] -= f * m[col][j];
    }
  }
  std::array<double, 3> coef{};
  for (int i = 0; i < 3; ++i) coef[i] = m[i][3] / m[i][i];
  double sq = 0.0;
  for (const auto& [k, v] : samples) {
    const double r = v - (coef[0] + coef[1] * k + coef[2] * std::log(k));
    sq += r * r;
  }
  return {coef[1], coef[2], std::sqrt(sq / static_cast<double>(n))};
}

// Growth fit and verdict; same-leg and adjacent suprema are fitted as
// separate series per component and the steepest one decides.
void finalize(HolderReport& report) {
  std::map<std::pair<int, int>, std::map<std::size_t, double>> series;
  for (const BlockSup& s : report.per_block_sup) series[{s.component, 0}][s.k] = s.sup_ratio;
  for (const BlockSup& s : report.cross_block_sup) series[{s.component, 1}][s.k] = s.sup_ratio;
  report.sup_ratio = std::max({report.far_sup, report.endpoint_sup, report.adjacent_sup, report.sup_ratio});
  for (const BlockSup& s : report.per_block_sup) report.sup_ratio = std::max(report.sup_ratio, s.sup_ratio);
  for (const BlockSup& s : report.cross_block_sup) report.sup_ratio = std::max(report.sup_ratio, s.sup_ratio);

  report.verdict = Verdict::bounded;
  report.growth_fit = 0.0;
  report.log_term = 0.0;
  report.fit_rms = 0.0;
  bool fitted = false;
  for (const auto& [key, values] : series) {
    std::vector<std::pair<double, double>> samples;
    for (const auto& [k, v] : values) {
      if (v > 0.0) samples.emplace_back(static_cast<double>(k), std::log(v));
    }
    if (samples.size() < 3) {
      if (key.second == 1) continue;
      throw Error(ErrorCode::inconclusive, "fewer than 3 horseshoe blocks to fit in component " +
                                               std::to_string(key.first));
    }
    const Fit fit = fit_growth(samples);
    if (!fitted || fit.slope > report.growth_fit) {
      report.growth_fit = fit.slope;
      report.log_term = fit.log_term;
      report.fit_rms = fit.rms;
    }
    fitted = true;
  }
  const double tol = kGrowthTolerance;
  if (fitted && report.growth_fit > -tol && report.growth_fit < 2 * tol && report.fit_rms > 0.1) {
    throw Error(ErrorCode::inconclusive, "growth slope " + std::to_string(report.growth_fit) +
                                             " is near zero and the fit is poor");
  }
  report.verdict = report.growth_fit > tol ? Verdict::diverging : Verdict::bounded;
}

}  // namespace

Modulus Modulus::power(Real alpha) {
  if (!definitely_greater(alpha, Real(0)) || definitely_greater(alpha, Real(1))) {
    throw Error(ErrorCode::domain, "Hölder exponent must lie in (0, 1]");
  }
  return Modulus(Kind::power, std::move(alpha));
}

Modulus Modulus::omega() { return Modulus(Kind::log_linear, Real(0)); }

const Real& Modulus::alpha() const {
  if (kind_ != Kind::power) throw Error(ErrorCode::invalid_argument, "omega modulus has no exponent");
  return alpha_;
}

Real Modulus::operator()(const Real& t) const {
  if (t.sign() < 0) throw Error(ErrorCode::domain, "modulus of a negative distance");
  if (t.sign() == 0 && t.is_exact()) return Real(0);
  if (kind_ == Kind::power) {
    if (alpha_.is_exact() && alpha_.rational() == 1) return t;
    return pow(t, alpha_);
  }
  if (compare(t, inv_e()) != Ordering::less) return inv_e();
  return -t * log(t);
}

Real Modulus::log_at(const Real& log_t) const {
  if (kind_ == Kind::power) return alpha_ * log_t;
  if (compare(log_t, Real(-1)) != Ordering::less) return Real(-1);
  return log_t + log(-log_t);
}

std::string Modulus::to_string() const {
  if (kind_ == Kind::power) return "power(" + alpha_.to_string(6) + ")";
  return "omega";
}

Real holder_ratio(const IntervalMap& map, const Real& x, const Real& y, const Modulus& modulus) {
  const Ordering o = compare(x, y);
  if (o == Ordering::equal || o == Ordering::indistinguishable) {
    throw Error(ErrorCode::indistinguishable, "points " + x.to_string(12) + " and " + y.to_string(12) +
                                                  " are not distinguishable");
  }
  const Real gap = abs(x - y);
  return abs(map(x) - map(y)) / modulus(gap);
}

Real within_branch_sup(const Block& block, const Modulus& modulus) {
  if (!block.is_horseshoe()) throw Error(ErrorCode::invalid_argument, "within-branch bound needs a horseshoe");
  if (modulus.kind() == Modulus::Kind::power && block.legs().is_exact() && block.interval().length().is_exact() &&
      modulus.alpha().is_exact() && modulus.alpha().rational() == 1) {
    return Real(block.legs().value());
  }
  const Real log_w = block.log_critical_scale();
  return exp(block.legs().log() + log_w - modulus.log_at(log_w));
}

Real within_branch_sup(const Block& block, const Real& alpha) {
  return within_branch_sup(block, Modulus::power(alpha));
}

Real cross_block_bound(const IntervalMap& family, std::size_t m, const Real& alpha) {
  if (m == 0) throw Error(ErrorCode::invalid_argument, "block indices start at 1");
  const auto& p = family.params();
  if (p && p->kind == FamilyKind::phi_a && p->r && p->C) {
    const Real& r = *p->r;
    const Real& C = *p->C;
    const Real growth = alpha * (r + Real(1)) - r;
    return pow3(Real(static_cast<long>(m)) * growth) * pow3(alpha) *
           pow(C * (Real(1) + pow3(r + Real(1))), Real(1) - alpha);
  }
  const std::vector<Block> segs = ordered_segments(family.layout(std::max(m + 1, family.k_max())));
  const Modulus modulus = Modulus::power(alpha);
  for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
    const Block& a = segs[i];
    const Block& b = segs[i + 1];
    const bool match = (a.index() == m && b.index() == m + 1) || (a.index() == m + 1 && b.index() == m);
    if (!match || a.component() != b.component() || !shares_endpoint(a, b)) continue;
    std::vector<Pair> pairs;
    add_adjacent(pairs, a, b, 4, m, a.component());
    Real best(0);
    for (const Pair& q : pairs) best = max(best, holder_ratio(family, q.x, q.y, modulus));
    return best;
  }
  throw Error(ErrorCode::invalid_argument, "blocks " + std::to_string(m) + " and " + std::to_string(m + 1) +
                                               " are not adjacent");
}

Real far_block_bound(const IntervalMap& family, std::size_t m, std::size_t k_gap, const Real& alpha) {
  if (k_gap < 2) throw Error(ErrorCode::invalid_argument, "far-block bound needs a gap of at least 2");
  if (m == 0) throw Error(ErrorCode::invalid_argument, "block indices start at 1");
  const auto [r, C] = geometric_params(family);
  const Real n(static_cast<long>(m + k_gap));
  const Real k(static_cast<long>(k_gap));
  const Real one(1);
  const Real q = one - pow3(-r);
  return pow3(n * r * (alpha - one)) * pow(q, alpha - one) * (pow3((k + one) * r) - one) /
         pow(pow3(k * r) - one, alpha);
}

Real far_block_limit(const IntervalMap& family, std::size_t m, const Real& alpha) {
  if (m == 0) throw Error(ErrorCode::invalid_argument, "block indices start at 1");
  const auto [r, C] = geometric_params(family);
  const Real one(1);
  return pow(one - pow3(-r), alpha - one) * pow3(Real(static_cast<long>(m)) * (alpha - one) * r + r);
}

Real origin_case_bound(const IntervalMap& family, std::size_t m) {
  if (m < 2) throw Error(ErrorCode::invalid_argument, "origin bound needs m >= 2");
  const auto [r, C] = geometric_params(family);
  const Real one(1);
  const Real mm(static_cast<long>(m));
  const Real top = one - pow3(-mm * r);
  return top / ((one - pow3((one - mm) * r)) * log(top / (one - pow3(-r))));
}

Real origin_case_limit(const IntervalMap& family) {
  const auto [r, C] = geometric_params(family);
  return Real(1) / log(Real(1) / (Real(1) - pow3(-r)));
}

std::string SamplePlan::id() const {
  std::string out = "structured:K=" + std::to_string(K) + ",d=" + std::to_string(density);
  if (far_blocks) out += ",far";
  if (endpoints) out += ",ends";
  return out;
}

const char* to_string(Verdict verdict) noexcept {
  return verdict == Verdict::bounded ? "bounded" : "diverging";
}

HolderReport modulus_check(const IntervalMap& map, const Modulus& modulus, const SamplePlan& plan) {
  if (plan.K == 0 || plan.density == 0) throw Error(ErrorCode::invalid_argument, "empty sample plan");
  HolderReport report;
  report.modulus = modulus;
  report.sample_plan = plan.id();

  const std::vector<Block> segs = ordered_segments(map.layout(plan.K));
  std::vector<Pair> pairs;
  for (const Block& b : segs) {
    const Real& l = b.interval().left();
    const Real& r = b.interval().right();
    if (!b.is_horseshoe()) {
      pairs.push_back({l, r, Config::identity, b.index(), b.component()});
      continue;
    }
    const Real w = b.critical_scale();
    pairs.push_back({l, l + w, Config::same_leg, b.index(), b.component()});
    pairs.push_back({r - w, r, Config::same_leg, b.index(), b.component()});
    pairs.push_back({l, l + w / Real(2), Config::same_leg, b.index(), b.component()});
  }
  for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
    const Block& a = segs[i];
    const Block& b = segs[i + 1];
    if (!shares_endpoint(a, b)) continue;
    const bool paired = a.is_horseshoe() && b.is_horseshoe() && a.component() == b.component();
    add_adjacent(pairs, a, b, plan.density, paired ? std::min(a.index(), b.index()) : 0, a.component());
  }
  if (plan.far_blocks) {
    for (std::size_t i = 0; i < segs.size(); ++i) {
      const auto ei = extreme_points(segs[i]);
      for (std::size_t j = i + 2; j < segs.size(); ++j) {
        for (const Real& x : extreme_points(segs[j])) {
          for (const Real& y : ei) pairs.push_back({x, y, Config::far, 0, 0});
        }
      }
    }
  }
  if (plan.endpoints) {
    for (const Block& b : segs) {
      for (const Real& y : extreme_points(b)) {
        pairs.push_back({Real(0), y, Config::endpoint, 0, 0});
        pairs.push_back({Real(1), y, Config::endpoint, 0, 0});
      }
    }
  }

  std::vector<double> ratios(pairs.size(), -1.0);
  parallel_for(pairs.size(), plan.workers, [&](std::size_t i) {
    const Ordering o = compare(pairs[i].x, pairs[i].y);
    if (o == Ordering::equal || o == Ordering::indistinguishable) return;
    ratios[i] = holder_ratio(map, pairs[i].x, pairs[i].y, modulus).to_double();
  });

  std::map<std::pair<int, std::size_t>, double> same;
  std::map<std::pair<int, std::size_t>, double> cross;
  for (const Block& b : segs) {
    if (b.is_horseshoe()) same[{b.component(), b.index()}] = within_branch_sup(b, modulus).to_double();
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double v = ratios[i];
    if (v < 0.0) continue;
    ++report.pairs;
    const Pair& q = pairs[i];
    switch (q.config) {
      case Config::same_leg: {
        double& s = same[{q.component, q.k}];
        s = std::max(s, v);
        break;
      }
      case Config::adjacent:
        report.adjacent_sup = std::max(report.adjacent_sup, v);
        if (q.k > 0) {
          double& s = cross[{q.component, q.k}];
          s = std::max(s, v);
        }
        break;
      case Config::far:
        report.far_sup = std::max(report.far_sup, v);
        break;
      case Config::endpoint:
        report.endpoint_sup = std::max(report.endpoint_sup, v);
        break;
      case Config::identity:
        report.sup_ratio = std::max(report.sup_ratio, v);
        break;
    }
  }
  for (const auto& [key, v] : same) report.per_block_sup.push_back({key.second, key.first, v});
  for (const auto& [key, v] : cross) report.cross_block_sup.push_back({key.second, key.first, v});
  finalize(report);
  return report;
}

HolderReport holder_verdict(const IntervalMap& family, const Real& alpha, std::size_t K, std::size_t workers) {
  if (K < 5) throw Error(ErrorCode::invalid_argument, "Hölder verdict needs K >= 5");
  SamplePlan plan;
  plan.K = K;
  plan.workers = workers;
  HolderReport report = modulus_check(family, Modulus::power(alpha), plan);
  const auto& p = family.params();
  if (p && p->kind == FamilyKind::phi_a && p->r && p->C) {
    for (BlockSup& s : report.cross_block_sup) {
      const double bound = cross_block_bound(family, s.k, alpha).to_double();
      s.sup_ratio = std::max(s.sup_ratio, bound);
      report.adjacent_sup = std::max(report.adjacent_sup, bound);
    }
    for (std::size_t m = 1; m + 2 <= K; ++m) {
      for (std::size_t gap = 2; m + gap <= K; ++gap) {
        report.far_sup = std::max(report.far_sup, far_block_bound(family, m, gap, alpha).to_double());
      }
    }
  }
  finalize(report);
  return report;
}

std::vector<EvidenceRow> evidence_table(const std::vector<IntervalMap>& maps, const std::vector<Real>& alphas,
                                        std::size_t K) {
  std::vector<EvidenceRow> rows;
  for (const IntervalMap& map : maps) {
    EvidenceRow row;
    row.name = map.name();
    for (const Real& alpha : alphas) {
      Verdict v;
      try {
        v = holder_verdict(map, alpha, K).verdict;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::inconclusive) throw;
        continue;
      }
      const double a = alpha.to_double();
      if (v == Verdict::bounded) {
        row.alpha_bounded = row.alpha_bounded ? std::max(*row.alpha_bounded, a) : a;
      } else {
        row.alpha_diverging = row.alpha_diverging ? std::min(*row.alpha_diverging, a) : a;
      }
    }
    if (auto u = predictor_misiu(map, K).upper_limit()) row.mdim_predictor = u->to_double();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace horseshoe
