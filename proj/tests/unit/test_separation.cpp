#include <doctest.h>

#include <cmath>

#include "horseshoe/error.hpp"
#include "horseshoe/gallery.hpp"
#include "horseshoe/separation.hpp"
#include "oracles.hpp"

using namespace horseshoe;

namespace {

Real q(long p, long d = 1) { return Real::ratio(p, d); }

bool equals(const Real& a, const Real& b) { return a.is_exact() && b.is_exact() && a.rational() == b.rational(); }

IntervalMap block3() {
  return IntervalMap::from_blocks("block3", {uniform_block(Interval(q(0), q(1)), LegCount(3))});
}

Block unit_block(long s) { return uniform_block(Interval(q(0), q(1)), LegCount(s)); }

oracle::Q block3_eval(const oracle::Q& x) { return oracle::block_eval(0, 1, 3, x); }

}  // namespace

TEST_CASE("Bowen distance") {
  const IntervalMap id = IntervalMap::identity();
  CHECK(equals(dn_distance({block3(), 1}, {q(1, 5)}, {q(1, 2)}), q(3, 10)));
  CHECK(equals(dn_distance({id, 7}, {q(1, 5)}, {q(1, 2)}), q(3, 10)));
  CHECK(equals(dn_distance({block3(), 2}, {q(0)}, {q(1, 9)}), q(1, 3)));
}

TEST_CASE("greedy separated counts") {
  const IntervalMap id = IntervalMap::identity();
  CHECK(*sep_count_greedy({id, 5}, q(1, 4), q(1, 100)).exact == 4);
  // {0, 0.41, 0.82} is 0.4-separated for the plain distance.
  CHECK(*sep_count_greedy({block3(), 1}, Real::parse("0.4"), q(1, 100)).exact == 3);
  CHECK(oracle::max_separated(block3_eval, 1, oracle::Q(2, 5), oracle::Q(1, 100)) == 3);
  std::uint64_t previous = UINT64_MAX;
  for (long d : {40L, 20L, 10L, 8L, 5L, 4L}) {
    const auto c = *sep_count_greedy({block3(), 2}, q(1, d), q(1, 160)).exact;
    CHECK(c <= previous);
    previous = c;
  }
}

TEST_CASE("greedy spanning counts") {
  const IntervalMap id = IntervalMap::identity();
  CHECK(*span_count_greedy({id, 3}, q(1, 2), q(1, 20)).exact == 2);
  for (std::size_t n : {1, 2, 3}) {
    const auto span = *span_count_greedy({block3(), n}, q(1, 4), q(1, 32)).exact;
    const auto sep = *sep_count_greedy({block3(), n}, q(1, 4), q(1, 32)).exact;
    const auto span_half = *span_count_greedy({block3(), n}, q(1, 8), q(1, 32)).exact;
    CHECK(span <= sep);
    CHECK(sep <= span_half);
  }
}

TEST_CASE("exhaustive counts agree with a brute-force oracle") {
  for (std::size_t n : {1, 2, 3}) {
    for (long d : {4L, 6L}) {
      const Real eps = q(1, d);
      const Real h = q(1, 4 * d);
      const auto got = *sep_count_exhaustive({block3(), n}, eps, h).exact;
      CHECK(got == oracle::max_separated(block3_eval, n, oracle::Q(1, d), oracle::Q(1, 4 * d)));
    }
  }
  CHECK(oracle::min_spanning(block3_eval, 1, oracle::Q(1, 4), oracle::Q(1, 16)) <=
        *span_count_greedy({block3(), 1}, q(1, 4), q(1, 16)).exact);
  CHECK_THROWS_AS(sep_count_exhaustive({block3(), 1}, q(1, 4), q(1, 1000)), Error);
}

TEST_CASE("grid budget") {
  CountOptions o;
  o.budget = 1000;
  CHECK_THROWS_AS(sep_count_greedy({block3(), 5}, q(1, 4), q(1, 1000), o), BudgetError);
}

TEST_CASE("itinerary lower bound") {
  CHECK(*sep_lower_itinerary(unit_block(3), 1, q(1, 4)).exact == 2);
  CHECK(*sep_lower_itinerary(unit_block(3), 4, q(1, 4)).exact == 16);
  CHECK(*sep_lower_itinerary(unit_block(5), 2, q(1, 6)).exact == 9);
  CHECK(*sep_count_greedy({block3(), 4}, q(1, 4), q(1, 1000)).exact >= 16);
}

TEST_CASE("Lipschitz upper bound") {
  CHECK(*span_upper_lipschitz(LegCount(3), 2, q(1, 9), q(1)).exact == 81);
  for (std::size_t n : {1, 4, 9}) CHECK(*span_upper_lipschitz(LegCount(1), n, q(1, 4), q(1)).exact == 4);
  const double a = span_upper_lipschitz(LegCount(3), 10, q(1, 9), q(1)).log_value();
  const double b = span_upper_lipschitz(LegCount(3), 11, q(1, 9), q(1)).log_value();
  CHECK(std::abs((b - a) - std::log(3.0)) < 1e-12);
}

TEST_CASE("certified sandwich on a 3-leg block") {
  const Block b = unit_block(3);
  for (long d : {4L, 5L, 6L}) {
    const Real eps = q(1, d);
    for (std::size_t n = 1; n <= 6; ++n) {
      const auto lower = *sep_lower_itinerary(b, n, eps).exact;
      const auto greedy = *sep_count_greedy({block3(), n}, eps, q(1, 1000)).exact;
      const auto upper = *span_upper_lipschitz(LegCount(3), n, eps, q(1)).exact;
      const auto cell = *block_upper_bound(b, n, eps).exact;
      CHECK(lower <= greedy);
      CHECK(greedy <= upper);
      CHECK(greedy <= cell);
    }
  }
}

TEST_CASE("lap counts") {
  CHECK(*lap_count(block3(), 4, 2).exact == 9);
  CHECK(*lap_count(block3(), 4, 2).exact == oracle::laps(block3_eval, 2, 810));
  CHECK(*lap_count(hazard_map(), 3, 1).exact >= 15);
  for (std::size_t n : {1, 5}) CHECK(*lap_count(IntervalMap::identity(), 4, n).exact == 1);
}

TEST_CASE("rate estimates") {
  const Block b = unit_block(3);
  std::vector<SepCount> lower;
  std::vector<SepCount> upper;
  for (std::size_t n = 1; n <= 8; ++n) {
    lower.push_back(sep_lower_itinerary(b, n, q(1, 4)));
    upper.push_back(span_upper_lipschitz(LegCount(3), n, q(1, 4), q(1)));
  }
  const RateEstimate r = rate_estimate(lower, upper);
  CHECK(std::abs(r.lower_rate.to_double() - std::log(2.0)) < 1e-9);
  CHECK(std::abs(r.upper_rate.to_double() - std::log(3.0)) < 1e-9);
  std::vector<SepCount> flat;
  for (std::size_t n = 1; n <= 4; ++n) flat.push_back(span_upper_lipschitz(LegCount(1), n, q(1, 4), q(1)));
  const RateEstimate z = rate_estimate(flat, flat);
  CHECK(std::abs(z.lower_rate.to_double()) < 1e-9);
  CHECK(std::abs(z.upper_rate.to_double()) < 1e-9);
}

TEST_CASE("map-level bounds bracket the greedy count") {
  const IntervalMap phi = phi_a(q(1));
  for (std::size_t n : {1, 2, 3}) {
    const Real eps = q(1, 20);
    const double lo = map_lower_bound(phi, 8, n, eps).log_value();
    const double hi = map_upper_bound(phi, 8, n, eps).log_value();
    const double greedy = sep_count_greedy({phi, n}, eps, q(1, 400)).log_value();
    CHECK(lo <= greedy + 1e-12);
    CHECK(greedy <= hi + 1e-12);
  }
}
