#include <doctest.h>

#include <cmath>

#include "horseshoe/error.hpp"
#include "horseshoe/gallery.hpp"
#include "horseshoe/holder.hpp"

using namespace horseshoe;

namespace {

Real q(long p, long d = 1) { return Real::ratio(p, d); }

}  // namespace

TEST_CASE("holder ratio basics") {
  const IntervalMap id = IntervalMap::identity();
  CHECK(holder_ratio(id, q(1, 7), q(5, 7), Modulus::power(q(1))).to_double() == doctest::Approx(1.0));
  const IntervalMap blk = IntervalMap::from_blocks("block3", {uniform_block(Interval(q(0), q(1)), LegCount(3))});
  CHECK(holder_ratio(blk, q(1, 30), q(1, 5), Modulus::power(q(1))).to_double() == doctest::Approx(3.0));
  CHECK_THROWS_AS(holder_ratio(id, q(1, 3), q(1, 3), Modulus::omega()), Error);
}

TEST_CASE("same-leg pairs never exceed the closed form") {
  const IntervalMap phi = phi_a(q(1));
  const Modulus m = Modulus::power(q(1, 2));
  for (const Block& b : phi.horseshoe_blocks(5)) {
    const Real w = b.critical_scale();
    const Real bound = within_branch_sup(b, m);
    for (long i = 1; i <= 8; ++i) {
      const Real x = b.interval().left();
      const Real y = x + w * q(i, 8);
      CHECK(holder_ratio(phi, x, y, m).to_double() <= bound.to_double() * (1 + 1e-9));
    }
    CHECK(holder_ratio(phi, b.interval().left(), b.interval().left() + w, m).to_double() ==
          doctest::Approx(bound.to_double()).epsilon(1e-12));
  }
}

TEST_CASE("phi_a(1) within-block ratios at exponent 1/2 stay constant") {
  // s w^(1/2) = 3^k (C 3^-(2k-1))^(1/2) = (3C)^(1/2)
  const IntervalMap phi = phi_a(q(1));
  const auto blocks = phi.horseshoe_blocks(10);
  for (const Block& b : blocks) CHECK(within_branch_sup(b, q(1, 2)).to_double() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("adjacent-block closed form") {
  const IntervalMap phi = phi_a(q(1));
  for (std::size_t m : {1, 4, 9}) {
    CHECK(cross_block_bound(phi, m, q(1, 2)).to_double() == doctest::Approx(std::sqrt(20.0)).epsilon(1e-12));
  }
  const double r6 = cross_block_bound(phi, 6, Real::parse("0.6")).to_double() /
                    cross_block_bound(phi, 5, Real::parse("0.6")).to_double();
  CHECK(r6 == doctest::Approx(std::pow(3.0, 0.2)).epsilon(1e-12));
  const double r4 = cross_block_bound(phi, 6, Real::parse("0.4")).to_double() /
                    cross_block_bound(phi, 5, Real::parse("0.4")).to_double();
  CHECK(r4 < 1.0);
}

TEST_CASE("far-block bounds") {
  const IntervalMap phi = phi_a(q(1));
  // (1 - 3^-r)^(alpha-1) 3^(m(alpha-1)r + r) at r = 1, alpha = 1/2, m = 2.
  CHECK(far_block_limit(phi, 2, q(1, 2)).to_double() == doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));
  CHECK(far_block_bound(phi, 2, 40, q(1, 2)).to_double() == doctest::Approx(std::sqrt(1.5)).epsilon(1e-9));
  CHECK(far_block_limit(phi, 30, q(1, 2)).to_double() < far_block_limit(phi, 3, q(1, 2)).to_double());
  CHECK(origin_case_limit(phi).to_double() == doctest::Approx(1.0 / std::log(1.5)).epsilon(1e-12));
}

TEST_CASE("omega modulus reports") {
  SamplePlan plan;
  plan.K = 30;
  const HolderReport h = modulus_check(hazard_map(), Modulus::omega(), plan);
  CHECK(h.verdict == Verdict::bounded);
  CHECK(h.sup_ratio <= 3.5);
  CHECK(h.adjacent_sup <= 3.0 + 1e-6);
  const HolderReport id = modulus_check(IntervalMap::identity(), Modulus::omega(), plan);
  CHECK(id.verdict == Verdict::bounded);
  // t / omega(t) = 1/|log t| <= 1 up to 1/e, then t e up to e at t = 1.
  CHECK(id.sup_ratio == doctest::Approx(std::exp(1.0)));
  // Same-leg ratios of phi_a grow like 3^k / k under omega.
  plan.K = 15;
  CHECK(modulus_check(phi_a(q(1)), Modulus::omega(), plan).verdict == Verdict::diverging);
}

TEST_CASE("power-modulus verdicts") {
  const IntervalMap phi = phi_a(q(1));
  CHECK(holder_verdict(phi, q(1, 2), 15).verdict == Verdict::bounded);
  const HolderReport d = holder_verdict(phi, Real::parse("0.6"), 15);
  CHECK(d.verdict == Verdict::diverging);
  CHECK(d.growth_fit == doctest::Approx(0.2 * std::log(3.0)).epsilon(0.05));
  CHECK(holder_verdict(phi_beta(q(2)), Real::parse("0.1"), 15).verdict == Verdict::diverging);
  CHECK_THROWS_AS(holder_verdict(phi, q(1, 2), 3), Error);
}

TEST_CASE("frontier follows r/(1+r)") {
  for (const Real& r : {q(1, 2), q(2)}) {
    const IntervalMap phi = phi_a(r);
    const double star = r.to_double() / (1.0 + r.to_double());
    CHECK(holder_verdict(phi, Real::from_double(star - 0.05), 15).verdict == Verdict::bounded);
    CHECK(holder_verdict(phi, Real::from_double(star + 0.05), 15).verdict == Verdict::diverging);
  }
}
