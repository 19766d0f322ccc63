#include <doctest.h>

#include <cmath>

#include "horseshoe/error.hpp"
#include "horseshoe/gallery.hpp"
#include "horseshoe/mdim.hpp"
#include "oracles.hpp"

using namespace horseshoe;

namespace {

Real q(long p, long d = 1) { return Real::ratio(p, d); }

}  // namespace

TEST_CASE("predictor for phi_a(1)") {
  const PredictorSeries s = predictor_misiu(phi_a(q(1)), 10);
  REQUIRE(s.points.size() == 10);
  for (const PredictorPoint& p : s.points) {
    const double k = double(p.index);
    const double expected = oracle::predictor(std::log(2.0 / 3.0) - (k - 1) * std::log(3.0), k * std::log(3.0));
    CHECK(std::abs(p.value.to_double() - expected) < 1e-12);
  }
  CHECK(std::abs(s.points.back().value.to_double() - 0.5) < 0.02);
  CHECK(std::abs(s.limit()->to_double() - 0.5) < 1e-12);
}

TEST_CASE("predictor for the hazard map") {
  const PredictorSeries s = predictor_misiu(hazard_map(), 30);
  for (const PredictorPoint& p : s.points) {
    const double n = double(p.index);
    CHECK(std::abs(p.value.to_double() - 1.0 / (1.0 + n * std::log(2.0) / std::log(2.0 * n + 1.0))) < 1e-12);
  }
  // The formula gives 0.165 at n = 30 and drops below 0.1 only near n = 60.
  CHECK(s.points.back().value.to_double() == doctest::Approx(0.16506).epsilon(1e-4));
  CHECK(s.limit()->to_double() == 0.0);
}

TEST_CASE("predictor for phi01 at tower index 3125") {
  const PredictorSeries s = predictor_misiu(phi_zero_one(), 5);
  REQUIRE(s.points.back().index == 3125);
  const double log_length = std::log(6.0 / (M_PI * M_PI)) - 2.0 * std::log(3125.0);
  CHECK(std::abs(s.points.back().value.to_double() - oracle::predictor(log_length, 3125.0 * std::log(3.0))) < 1e-12);
  CHECK(s.points.back().value.to_double() >= 0.99);
}

TEST_CASE("lower dimension estimates") {
  const DdfEstimate a = ddf_lower(phi_a(q(1)), 30, 5);
  CHECK(a.raw_value == doctest::Approx(0.5).epsilon(0.05));
  const DdfEstimate t = ddf_lower(phi_zero_one(), 10, 5);
  CHECK(t.value <= 0.05);
  const SegmentRule rule{
      [](std::size_t k) { return Real(6) / (Real::pi(256) * Real::pi(256) * Real(static_cast<long>(k * k))); },
      [](std::size_t k) -> std::optional<LegCount> {
        return LegCount::power(2 * static_cast<long>(k) + 1, mpz_class(static_cast<unsigned long>(k)));
      },
      nullptr, nullptr, std::nullopt, Anchor::left, false, 256};
  const IntervalMap rho = IntervalMap::family("rho", rule);
  CHECK(ddf_lower(rho, 40, 5).raw_value > 0.8);
}

TEST_CASE("finite-scale curve") {
  CurveOptions o;
  o.K = 10;
  o.n_max = 8;
  const MdimCurve id = mdim_curve(IntervalMap::identity(), o);
  for (const CurvePoint& p : id.points) {
    CHECK(p.lower_ratio == 0.0);
    CHECK(p.upper_ratio == 0.0);
  }
  const MdimCurve phi = mdim_curve(phi_a(q(1)), o);
  REQUIRE(phi.points.size() == 10);
  for (const CurvePoint& p : phi.points) {
    const double k = double(p.k);
    const double expected = std::log(std::ceil(std::pow(3.0, k) / 2.0)) / (-p.log_eps);
    CHECK(p.lower_ratio == doctest::Approx(expected).epsilon(1e-9));
    CHECK(p.lower_ratio <= p.upper_ratio);
  }
  CHECK(std::abs(phi.points.back().lower_ratio - 0.5) < 0.07);
}

TEST_CASE("reports") {
  CurveOptions o;
  o.K = 10;
  o.n_max = 8;
  const MdimRun id = run_mdim(IntervalMap::identity(), o, 10);
  CHECK(id.report.liminf_est == 0.0);
  CHECK(id.report.limsup_est == 0.0);
  const MdimRun phi = run_mdim(phi_a(q(1)), o, 10);
  CHECK(std::abs(phi.report.liminf_est - 0.5) < 0.07);
  CHECK(std::abs(phi.report.limsup_est - 0.5) < 0.07);
  GalleryOptions go;
  go.k_max = 3125;
  CurveOptions g = o;
  g.layout_depth = 3125;
  const MdimRun gap = run_mdim(varphi_ab(q(0), q(1, 2), go), g, 5);
  CHECK(gap.report.liminf_est <= 0.1);
  CHECK(gap.report.limsup_est >= 0.4);
  CHECK(gap.report.limsup_est <= 0.6);
}

TEST_CASE("ordering chain is enforced") {
  MdimCurve curve;
  CurvePoint p;
  p.k = 1;
  p.epsilon = q(1, 9);
  p.log_eps = std::log(1.0 / 9.0);
  p.lower_ratio = 0.6;
  p.upper_ratio = 0.4;
  curve.points.push_back(p);
  CHECK_THROWS_AS(mdim_report(curve, {}, {}, 1.0, true), Error);
}
