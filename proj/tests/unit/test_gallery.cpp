#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "horseshoe/error.hpp"
#include "horseshoe/gallery.hpp"
#include "horseshoe/mdim.hpp"

using namespace horseshoe;

namespace {

Real q(long p, long d = 1) { return Real::ratio(p, d); }

bool equals(const Real& a, const Real& b) { return a.is_exact() && b.is_exact() && a.rational() == b.rational(); }

}  // namespace

TEST_CASE("hazard map blocks") {
  const IntervalMap h = hazard_map();
  const auto blocks = h.blocks(6);
  REQUIRE(blocks.size() >= 5);
  auto block = [&](std::size_t n) {
    return *std::find_if(blocks.begin(), blocks.end(), [n](const Block& b) { return b.index() == n; });
  };
  CHECK(equals(block(3).interval().length(), q(1, 8)));
  CHECK(equals(block(3).interval().left(), q(1, 8)));
  CHECK(block(5).legs().value() == 11);
  for (long n = 1; n <= 20; ++n) {
    const Real a = pow(q(2), -n);
    CHECK(equals(h(a), a));
  }
}

TEST_CASE("phi01 blocks") {
  const IntervalMap m = phi_zero_one();
  const auto blocks = m.blocks(6);
  CHECK(std::abs(blocks[0].interval().length().to_double() - 6.0 / (M_PI * M_PI)) < 1e-15);
  CHECK(blocks[3].is_horseshoe());
  CHECK(blocks[3].legs().value() == 81);
  CHECK_FALSE(blocks[4].is_horseshoe());
  CHECK(is_tower(1));
  CHECK(is_tower(4));
  CHECK(is_tower(27));
  CHECK_FALSE(is_tower(5));
  CHECK(*next_tower(28) == 256);
}

TEST_CASE("phi0b constants") {
  const IntervalMap m = phi_zero_b(q(1));
  REQUIRE(m.params());
  CHECK(equals(*m.params()->C, q(2, 3)));
  CHECK(equals(*m.params()->b, q(1, 2)));
  const auto blocks = m.blocks(3);
  CHECK(equals(blocks[0].interval().length(), q(2, 3)));
  CHECK_FALSE(blocks[1].is_horseshoe());
}

TEST_CASE("phi_beta blocks") {
  const IntervalMap m = phi_beta(q(2));
  const auto blocks = m.blocks(64);
  CHECK(blocks[3].legs().value() == 81);
  const double C = 6.0 / (M_PI * M_PI);
  for (std::size_t n : {2, 3}) {
    CHECK(std::abs(blocks[n - 1].interval().length().to_double() - C / double(n * n)) < 1e-15);
  }
  double total = 0.0;
  for (const Block& b : blocks) total += b.interval().length().to_double();
  double tail = 0.0;
  for (int k = 65; k < 2000000; ++k) tail += C / (double(k) * k);
  CHECK(std::abs(1.0 - total - tail) < 1e-6);
}

TEST_CASE("phi_a constants") {
  const IntervalMap m = phi_a(q(1));
  const auto blocks = m.blocks(3);
  CHECK(equals(blocks[0].interval().right(), q(2, 3)));
  CHECK(equals(blocks[1].interval().right(), q(8, 9)));
  CHECK(blocks[1].legs().value() == 9);
  CHECK(equals(blocks[1].interval().length(), q(2, 9)));
  CHECK(equals(blocks[1].critical_scale(), q(2, 81)));
  CHECK(equals(*m.params()->holder_exponent, q(1, 2)));
}

TEST_CASE("tiling matches the closed-form prefix sums") {
  const IntervalMap m = phi_a(q(1));
  const auto blocks = m.blocks(20);
  for (std::size_t k = 1; k < blocks.size(); ++k) {
    CHECK(equals(blocks[k].interval().left(), blocks[k - 1].interval().right()));
  }
  // a_K = 1 - 3^-K
  CHECK(equals(blocks.back().interval().right(), q(1) - pow(q(3), -20)));
}

TEST_CASE("two-half family") {
  const IntervalMap m = varphi_ab(q(0), q(1));
  const auto blocks = m.blocks(4);
  for (const Block& b : blocks) {
    if (b.component() == 0) CHECK(less_or_close(b.interval().right(), q(1, 2)));
    if (b.component() == 1) CHECK_FALSE(b.is_horseshoe());
  }
  const PredictorSeries s = predictor_misiu(varphi_ab(Real::parse("0.25"), Real::parse("0.5")), 6);
  bool left_half = false;
  bool right_quarter = false;
  for (const Real& l : s.limits) {
    left_half = left_half || std::abs(l.to_double() - 0.5) < 1e-12;
    right_quarter = right_quarter || std::abs(l.to_double() - 0.25) < 1e-12;
  }
  CHECK(left_half);
  CHECK(right_quarter);
  CHECK_THROWS_AS(varphi_ab(q(1, 2), q(1, 4)), Error);
}

TEST_CASE("product family") {
  const ProductMap zero = psi_b_product(q(0), 2);
  CHECK(zero.factors()[0].is_identity());
  const ProductMap p = psi_b_product(q(1), 2);
  REQUIRE(p.dimension() == 2);
  CHECK(equals(*p.factors()[0].params()->r, q(1)));
  CHECK(equals(*p.holder_exponent(), q(1, 2)));
}

TEST_CASE("gallery strings") {
  CHECK(build_gallery("phi_a:r=1").interval_map() != nullptr);
  CHECK(build_gallery("psi_b:b=1,n=2").dimension() == 2);
  CHECK_THROWS_AS(build_gallery("nonsense"), Error);
  CHECK_THROWS_AS(build_gallery("phi_a"), Error);
}
