#include <doctest.h>

#include <fstream>
#include <sstream>

#include "horseshoe/dsl.hpp"
#include "horseshoe/error.hpp"
#include "horseshoe/gallery.hpp"
#include "scenarios.hpp"

using namespace horseshoe;

namespace {

const char* kPhiA =
    "family phi_a mode rational\n"
    "segments k = 1..inf : length (2/3)/3^(k-1)\n"
    "horseshoe where all : legs 3^k\n"
    "default : identity";

bool equals(const Real& a, const Real& b) { return a.is_exact() && b.is_exact() && a.rational() == b.rational(); }

std::string with_legs(const std::string& legs) {
  return "family x mode rational\nsegments k = 1..inf : length (2/3)/3^(k-1)\nhorseshoe where all : legs " + legs +
         "\ndefault : identity\n";
}

ErrorCode code_of(const std::string& text) {
  try {
    dsl::compile_text(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("accepted: " << text);
  return ErrorCode::io;
}

std::string error_text(const std::string& text) {
  try {
    dsl::parse(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("parse the phi_a schedule") {
  const dsl::FamilySpec s = dsl::parse(kPhiA);
  CHECK(s.name == "phi_a");
  CHECK(s.mode.rational);
  CHECK(s.index == "k");
  CHECK_FALSE(s.last.has_value());
  REQUIRE(s.rules.size() == 1);
  CHECK(s.rules[0].predicate.kind == dsl::PredicateKind::all);
  const IntervalMap m = dsl::compile(s);
  const auto blocks = m.blocks(2);
  CHECK(equals(blocks[0].interval().right(), Real::ratio(2, 3)));
  CHECK(equals(blocks[1].interval().right(), Real::ratio(8, 9)));
}

TEST_CASE("tower schedule") {
  const dsl::FamilySpec s = dsl::parse(
      "family phi01 mode float(256)\nsegments j = 1..inf : length 6/(pi^2*j^2)\n"
      "horseshoe where tower : legs 3^j\ndefault : identity\n");
  CHECK(s.rules[0].predicate.kind == dsl::PredicateKind::tower);
  const IntervalMap m = dsl::compile(s);
  const auto hs = m.horseshoe_blocks(27);
  REQUIRE(hs.size() == 3);
  CHECK(hs[2].index() == 27);
}

TEST_CASE("semantic errors") {
  CHECK(code_of(with_legs("2*k")) == ErrorCode::semantic);
  CHECK(error_text(with_legs("2*k")).rfind("3:", 0) == 0);
  CHECK(error_text(with_legs("2*k")).find("even legs") != std::string::npos);
  CHECK(code_of(with_legs("1")) == ErrorCode::semantic);
  CHECK(code_of(with_legs("j")) == ErrorCode::semantic);
  CHECK(code_of("family x mode rational\nsegments k = 1..inf : length 0*k\nhorseshoe where all : legs 3\n"
                "default : identity\n") == ErrorCode::semantic);
  CHECK(code_of("family x mode rational\nsegments k = 1..inf : length 1/k\nhorseshoe where all : legs 3\n"
                "default : identity\n") == ErrorCode::divergence);
  CHECK(code_of("family x mode rational\nsegments k = 1..inf : length 1/2^k\nhorseshoe where all : legs 3\n") ==
        ErrorCode::syntax);
  CHECK(code_of("family x mode rational\nsegments k = 1..inf : length 1/2^(k-1)\nhorseshoe where all : legs 3\n"
                "default : identity\n") == ErrorCode::geometry);
}

TEST_CASE("odd legs by construction and per index") {
  CHECK_NOTHROW(dsl::compile_text(with_legs("2*k+1")));
  CHECK_NOTHROW(dsl::compile_text(with_legs("3^k")));
  CHECK(code_of(with_legs("k+2")) == ErrorCode::semantic);
  CHECK_NOTHROW(dsl::compile_text(
      "family x mode rational\nsegments k = 1..inf : length (2/3)/3^(k-1)\n"
      "horseshoe where k == 2 : legs 2*k+1\nhorseshoe where k >= 3 : legs 2*k-1\ndefault : identity\n"));
}

TEST_CASE("float mode is required for pi") {
  const std::string rational =
      "family phi_beta mode rational\nsegments k = 1..inf : length 6/(pi^2*k^2)\n"
      "horseshoe where k >= 2 : legs 3^k\ndefault : identity\n";
  CHECK(code_of(rational) == ErrorCode::mode_mismatch);
  std::string floating = rational;
  floating.replace(floating.find("rational"), 8, "float(256)");
  CHECK_NOTHROW(dsl::compile_text(floating));
}

TEST_CASE("syntax diagnostics carry positions") {
  CHECK(error_text("family x mode rational\nsegments k = 1..inf : length 1/2^k $\n") .rfind("2:", 0) == 0);
  CHECK(error_text("family").find("1:") == 0);
  CHECK(error_text(with_legs("3 +")).find("expected expression") != std::string::npos);
}

TEST_CASE("canonical emit and round trip") {
  for (const auto& g : scenarios::gallery_specs()) {
    const dsl::FamilySpec s = dsl::parse(g.text);
    const std::string text = dsl::emit(s);
    CHECK(dsl::same_spec(s, dsl::parse(text)));
    CHECK(dsl::emit(dsl::parse(text)) == text);
  }
  const dsl::FamilySpec a = dsl::parse(kPhiA);
  const dsl::FamilySpec b = dsl::parse(
      "  family   phi_a mode rational # comment\n\n segments k=1..inf:length (2/3) / 3^( k - 1 )\n"
      "horseshoe where all:legs 3^k\n default:identity");
  CHECK(dsl::emit(a) == dsl::emit(b));
  const dsl::FamilySpec c = dsl::parse(with_legs("3^k").replace(with_legs("3^k").find("(2/3)"), 5, "(4/6)"));
  CHECK(dsl::emit(c).find("(2/3)") != std::string::npos);
  CHECK(dsl::emit(c).find("4/6") == std::string::npos);
}

TEST_CASE("compile of emit equals compile") {
  const IntervalMap a = dsl::compile_text(kPhiA);
  const IntervalMap b = dsl::compile_text(dsl::emit(dsl::parse(kPhiA)));
  for (long i = 0; i <= 200; ++i) CHECK(equals(a(Real::ratio(i, 200)), b(Real::ratio(i, 200))));
}

TEST_CASE("shipped schedule files match the built-in sources") {
  for (const char* name : {"phi_a_r1", "phi_beta_2", "hazard", "phi01", "phi0b_r1"}) {
    std::ifstream in(std::string(HORSESHOE_SPEC_DIR) + "/" + name + ".hsf");
    REQUIRE_MESSAGE(in, name);
    std::ostringstream text;
    text << in.rdbuf();
    bool found = false;
    for (const auto& g : scenarios::gallery_specs()) {
      found = found || dsl::same_spec(dsl::parse(g.text), dsl::parse(text.str()));
    }
    CHECK_MESSAGE(found, name);
  }
}

TEST_CASE("oversized input is rejected") {
  CHECK_THROWS_AS(dsl::parse(std::string(dsl::kMaxSourceBytes + 1, ' ')), Error);
  std::string deep = "family x mode rational\nsegments k = 1..inf : length ";
  deep += std::string(5000, '(') + "1" + std::string(5000, ')');
  CHECK_THROWS_AS(dsl::parse(deep), Error);
}
