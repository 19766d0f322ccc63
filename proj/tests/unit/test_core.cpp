#include <doctest.h>

#include "horseshoe/error.hpp"
#include "horseshoe/gallery.hpp"
#include "horseshoe/interval_map.hpp"
#include "horseshoe/product.hpp"
#include "horseshoe/tent.hpp"
#include "oracles.hpp"

using namespace horseshoe;

namespace {

Real q(long p, long d = 1) { return Real::ratio(p, d); }

bool equals(const Real& a, const Real& b) { return a.is_exact() && b.is_exact() && a.rational() == b.rational(); }

}  // namespace

TEST_CASE("real arithmetic stays exact on rationals") {
  const Real x = q(1, 3) + q(1, 6);
  CHECK(equals(x, q(1, 2)));
  CHECK(equals(Real::parse("0.25"), q(1, 4)));
  CHECK(equals(Real::parse("-6/8"), q(-3, 4)));
  CHECK(equals(pow(q(2, 3), 3), q(8, 27)));
  CHECK_THROWS_AS(Real::parse("1/0"), Error);
}

TEST_CASE("float balls enclose the true value") {
  const Real pi = Real::pi(128);
  CHECK_FALSE(pi.is_exact());
  CHECK(definitely_greater(pi, Real::parse("3.14159265358979")));
  CHECK(definitely_less(pi, Real::parse("3.14159265358980")));
  const Real lo = pi.lower_endpoint();
  const Real hi = pi.upper_endpoint();
  CHECK(lo.is_exact());
  CHECK(lo.rational() < hi.rational());
  CHECK(compare(pi, pi) != Ordering::less);
}

TEST_CASE("tent map values") {
  CHECK(equals(tent_eval(q(0)), q(0)));
  CHECK(equals(tent_eval(q(1)), q(1)));
  CHECK(equals(tent_eval(q(1, 3)), q(1)));
  CHECK(equals(tent_eval(q(1, 2)), q(1, 2)));
}

TEST_CASE("tent iterates") {
  const TentIterate g1 = tent_iterate(1);
  const auto b = g1.breakpoints();
  REQUIRE(b.size() == 4);
  CHECK(equals(b[1], q(1, 3)));
  CHECK(equals(b[2], q(2, 3)));
  const TentIterate g2 = tent_iterate(2);
  CHECK(equals(g2.eval(q(1, 9)), q(1)));
  CHECK(g2.branches().value() == 9);
  const auto b2 = g2.breakpoints();
  REQUIRE(b2.size() == 10);
  for (std::size_t i = 1; i < b2.size(); ++i) CHECK(equals(b2[i] - b2[i - 1], q(1, 9)));
  for (long i = 0; i <= 27; ++i) {
    const oracle::Q x(i, 27);
    CHECK(equals(g2.eval(Real(x)), Real(oracle::tent(oracle::tent(x)))));
  }
}

TEST_CASE("uniform block evaluation") {
  CHECK(equals(uniform_block(Interval(q(0), q(1)), LegCount(3)).eval(q(1, 3)), q(1)));
  CHECK(equals(uniform_block(Interval(q(0), q(1, 2)), LegCount(3)).eval(q(0)), q(0)));
  CHECK(equals(uniform_block(Interval(q(2, 3), q(8, 9)), LegCount(9)).eval(q(2, 3)), q(2, 3)));
  CHECK(equals(uniform_block(Interval(q(2, 3), q(8, 9)), LegCount(9)).eval(q(8, 9)), q(8, 9)));
}

TEST_CASE("map evaluation against the direct construction") {
  const IntervalMap phi = phi_a(q(1));
  CHECK(equals(phi(q(1)), q(1)));
  CHECK(equals(phi(q(2, 3)), q(2, 3)));
  CHECK(equals(phi(q(1, 9)), Real(oracle::phi_a_r1(oracle::Q(1, 9)))));
  for (long i = 0; i <= 729; ++i) {
    const oracle::Q x(i, 729);
    CHECK(equals(phi(Real(x)), Real(oracle::phi_a_r1(x))));
  }
  const IntervalMap h = hazard_map();
  for (long i = 0; i <= 512; ++i) {
    const oracle::Q x(i, 512);
    CHECK(equals(h(Real(x)), Real(oracle::hazard(x))));
  }
}

TEST_CASE("orbits") {
  const auto id = orbit(IntervalMap::identity(), Real::parse("0.4"), 5);
  REQUIRE(id.points.size() == 5);
  for (const Real& x : id.points) CHECK(equals(x, Real::parse("0.4")));
  const IntervalMap blk = IntervalMap::from_blocks("b3", {uniform_block(Interval(q(0), q(1)), LegCount(3))});
  const auto o = orbit(blk, q(1, 3), 3);
  CHECK(equals(o.points[0], q(1, 3)));
  CHECK(equals(o.points[1], q(1)));
  CHECK(equals(o.points[2], q(1)));
  const auto inside = orbit(phi_a(q(1)), q(3, 4), 4);
  for (const Real& x : inside.points) {
    CHECK(less_or_close(q(2, 3), x));
    CHECK(less_or_close(x, q(8, 9)));
  }
}

TEST_CASE("gluing") {
  const IntervalMap id = glue(IntervalMap::identity(), IntervalMap::identity());
  for (long i = 0; i <= 16; ++i) CHECK(equals(id(q(i, 16)), q(i, 16)));
  const IntervalMap a = phi_zero_one();
  const IntervalMap b = phi_a(q(1));
  const IntervalMap g = glue(a, b);
  const auto left = a.blocks(6);
  const auto right = b.blocks(6);
  const auto both = g.blocks(6);
  CHECK(both.size() == left.size() + right.size());
  CHECK(equals(g(q(1, 2)), q(1, 2)));
  const Real x = q(1, 5);
  CHECK(compare(g(x / q(2)), a(x) / q(2)) != Ordering::less);
  CHECK(compare(g(x / q(2)), a(x) / q(2)) != Ordering::greater);
}

TEST_CASE("embedding near a fixed point") {
  const IntervalMap inner = phi_zero_one();
  const IntervalMap e = embed_near_fixed_point(IntervalMap::identity(), q(0), q(1), inner);
  const Real x = q(3, 10);
  CHECK(compare(e(x / q(2)), inner(x) / q(2)) != Ordering::less);
  CHECK(compare(e(x / q(2)), inner(x) / q(2)) != Ordering::greater);
  for (const Real& j : {q(1, 2), q(1)}) {
    const Real below = e(j - q(1, 1000000000));
    CHECK(abs(below - e(j)).to_double() < 1e-6);
  }
  CHECK(abs(e(q(1, 1000000000)) - e(q(0))).to_double() < 1e-6);
  CHECK_THROWS_AS(embed_near_fixed_point(phi_a(q(1)), q(1, 2), q(1, 4), inner), Error);
}

TEST_CASE("products") {
  const ProductMap one = product({IntervalMap::identity()});
  const Point p = one.eval({q(2, 7)});
  CHECK(equals(p[0], q(2, 7)));
  const IntervalMap phi = phi_a(q(1));
  const ProductMap two = product({phi, phi});
  const Point y = two.eval({q(1, 9), q(3, 4)});
  CHECK(equals(y[0], phi(q(1, 9))));
  CHECK(equals(y[1], phi(q(3, 4))));
  CHECK(equals(ProductMap::distance({q(0), q(0)}, {q(1), q(1)}), q(2)));
}

TEST_CASE("continuity at every materialized boundary") {
  for (const char* id : {"phi_a:r=1", "hazard", "phi01", "phi0b:r=1", "phi_beta:beta=2", "varphi_ab:a=0,b=1/2"}) {
    const System s = build_gallery(id);
    const IntervalMap& m = *s.interval_map();
    const Real defect = continuity_defect(m, 64);
    if (m.is_exact()) {
      CHECK_MESSAGE(defect.is_exact(), std::string(id));
      CHECK_MESSAGE(defect.sign() == 0, std::string(id));
    } else {
      CHECK_MESSAGE(defect.to_double() <= 4.0 * std::ldexp(1.0, -static_cast<int>(m.precision())), std::string(id));
    }
  }
}
