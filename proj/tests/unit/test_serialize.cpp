#include <doctest.h>

#include <json.hpp>

#include "horseshoe/gallery.hpp"
#include "horseshoe/serialize.hpp"

using namespace horseshoe;

TEST_CASE("fnv1a reference values") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("count CSV columns") {
  const IntervalMap id = IntervalMap::identity();
  const std::string csv = sep_counts_csv({sep_count_greedy({id, 2}, Real::ratio(1, 4), Real::ratio(1, 100))});
  CHECK(csv.rfind("n,epsilon,count_or_logcount,method,direction\n", 0) == 0);
  CHECK(csv.find("2,1/4,4,") != std::string::npos);
}

TEST_CASE("curve CSV and report JSON") {
  CurveOptions o;
  o.K = 4;
  o.n_max = 4;
  const MdimRun run = run_mdim(phi_a(Real(1)), o, 4);
  const std::string csv = curve_csv(run.curve);
  CHECK(csv.rfind("k,epsilon,log_eps,lower_ratio,upper_ratio,method_lower,method_upper\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  const auto j = nlohmann::json::parse(mdim_report_json(run, {"phi_a:r=1", "h", "rational", 256, 4, 4, ""}));
  for (const char* key : {"liminf_est", "limsup_est", "predictor_misiu", "ddf_lower", "box_bound"}) CHECK(j.contains(key));
  CHECK(j["provenance"]["map_id"] == "phi_a:r=1");
  CHECK(j["provenance"]["n_max"] == 4);
  CHECK_FALSE(j["provenance"]["schedule"].get<std::string>().empty());
}

TEST_CASE("map JSON") {
  const auto j = nlohmann::json::parse(map_json(phi_a(Real(1)), 3));
  CHECK(j["name"] == "phi_a:r=1");
  CHECK(j["blocks"].size() == 3);
  CHECK(j["blocks"][1]["left"] == "2/3");
  CHECK(j["blocks"][1]["legs"] == "9");
}
