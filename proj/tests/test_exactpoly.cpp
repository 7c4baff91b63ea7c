#include <random>

#include "doctest.h"
#include "flf/errors.hpp"
#include "flf/poly_text.hpp"
#include "flf/polynomial.hpp"
#include "random_poly.hpp"

using namespace flf;

namespace {

RingPtr qq(std::vector<std::string> names, std::vector<std::string> inverted = {}) {
  return make_ring(CoefficientField::rationals(), std::move(names), inverted);
}

Polynomial P(const RingPtr& r, const std::string& s) { return parse_polynomial(s, r); }

}  // namespace

TEST_CASE("field construction") {
  CHECK(CoefficientField::prime(5).characteristic() == 5);
  CHECK_THROWS_AS(CoefficientField::prime(6), Error);
  CHECK_THROWS_AS(CoefficientField::prime(2147483659u), Error);
  CHECK(CoefficientField::parse("Fp:7") == CoefficientField::prime(7));
  CHECK(CoefficientField::parse("QQ") == CoefficientField::rationals());
  CHECK_THROWS_AS(CoefficientField::parse("Fp:x"), Error);
  auto f5 = CoefficientField::prime(5);
  CHECK(f5.inv(mpq_class(2)) == 3);
  CHECK(f5.reduce(mpq_class(1, 2)) == 3);
  CHECK(f5.reduce(mpq_class(-1)) == 4);
}

TEST_CASE("ring appends companions of inverted variables") {
  auto r = qq({"x", "t"}, {"t"});
  REQUIRE(r->size() == 3);
  CHECK(r->name(2) == "t_inv");
  CHECK(r->is_inverted(1));
  CHECK(r->is_companion(2));
  CHECK(*r->companion(1) == 2);
  CHECK_THROWS_AS(qq({"x", "x"}), Error);
  CHECK_THROWS_AS(qq({"x"}, {"y"}), Error);
}

TEST_CASE("normalize examples") {
  auto r = qq({"x", "y"});
  CHECK(P(r, "x + x") == P(r, "2*x"));
  CHECK((P(r, "x") - P(r, "x")).is_zero());
  auto r2 = make_ring(CoefficientField::prime(2), {"x", "y"});
  CHECK(P(r2, "x + x + y") == P(r2, "y"));
  // from_terms on an unnormalized list
  Polynomial raw = Polynomial::from_terms(
      r, {Term{{1, 0}, 1}, Term{{0, 1}, 0}, Term{{1, 0}, 1}, Term{{0, 0}, 3}});
  CHECK(raw.size() == 2);
  CHECK(normalize(raw) == raw);
  CHECK(print_polynomial(raw) == "2*x + 3");
}

TEST_CASE("substitute examples") {
  auto r = qq({"t1", "t2"}, {"t1", "t2"});
  auto target = qq({"t"}, {"t"});
  Polynomial t = Polynomial::variable(target, "t");
  Polynomial one = Polynomial::constant(target, 1);
  Assignment a{{"t1", t}, {"t2", one}};
  CHECK(substitute(P(r, "t1^2 + 1"), a, target) == P(target, "t^2 + 1"));
  CHECK(substitute(P(r, "t1^2 + t2"), a, target) == P(target, "t^2 + 1"));
  Polynomial q = P(r, "3*t1^2*t2 - t1_inv + 1/2");
  CHECK(substitute(q, {}) == q);
  // companion images are derived from unit images
  CHECK(substitute(P(r, "t1_inv*t2_inv"), a, target) == P(target, "t_inv"));
}

TEST_CASE("substitute rejects non-unit images of inverted variables") {
  auto r = qq({"t"}, {"t"});
  auto target = qq({"x"});
  Assignment a{{"t", P(target, "x + 1")}};
  CHECK_THROWS_AS(substitute(P(r, "t"), a, target), LocalizationViolated);
  // an explicit companion image is accepted
  Assignment b{{"t", P(target, "x")}, {"t_inv", P(target, "x")}};
  CHECK(substitute(P(r, "t*t_inv"), b, target) == P(target, "x^2"));
}

TEST_CASE("laurent_encode examples") {
  auto r = qq({"x", "t"}, {"t"});
  CHECK(laurent_encode(P(r, "x*t^-2")) == P(r, "x*t_inv^2"));
  CHECK(laurent_encode(P(r, "t*t^-1")) == P(r, "1"));
  CHECK(laurent_encode(P(r, "t*t_inv")) == P(r, "t*t_inv"));
  CHECK(laurent_encode(P(r, "t^3")) == P(r, "t^3"));
  auto bad = Polynomial::monomial(r, {-1, 0, 0}, 1);
  CHECK_THROWS_AS(laurent_encode(bad), Error);
  CHECK_THROWS_AS(P(r, "x^-1"), ParseError);
}

TEST_CASE("laurent valuation") {
  auto r = qq({"x", "t"}, {"t"});
  CHECK(*laurent_valuation(P(r, "x*t_inv^2 + t"), 1) == -2);
  CHECK(*laurent_valuation(P(r, "x"), 1) == 0);
  CHECK(!laurent_valuation(P(r, "0"), 1));
}

TEST_CASE("degree overflow is an error") {
  auto r = qq({"x"});
  Polynomial big = Polynomial::monomial(r, {2000000000}, 1);
  CHECK_THROWS_AS(big * big, DegreeOverflow);
  CHECK_THROWS_AS(P(r, "x^3000000000"), DegreeOverflow);
}

TEST_CASE("grammar round trip and diagnostics") {
  auto r = qq({"x", "y", "t"}, {"t"});
  for (const std::string s : {"x^2 + y^2", "-x*y + 3/2", "2*x^3*t_inv - y + 1", "0", "-1/7",
                              "t + x*t^-2"}) {
    CHECK(print_polynomial(P(r, s)) == s);
  }
  CHECK(print_polynomial(P(r, "(x+1)^2")) == "x^2 + 2*x + 1");
  CHECK(P(r, " ( x - y ) * ( x + y ) ") == P(r, "x^2 - y^2"));
  try {
    P(r, "x + z");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.column() == 5);
  }
  CHECK_THROWS_AS(P(r, "x +"), ParseError);
  CHECK_THROWS_AS(P(r, "1/0"), ParseError);
  auto f5 = make_ring(CoefficientField::prime(5), {"x"});
  CHECK(print_polynomial(P(f5, "-x + 1/2")) == "4*x + 3");
  CHECK_THROWS_AS(P(f5, "1/5"), ParseError);
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937_64 rng(20261016);
  for (auto field : {CoefficientField::rationals(), CoefficientField::prime(5)}) {
    auto r = make_ring(field, {"x", "y", "z"});
    for (int k = 0; k < 1000; ++k) {
      auto a = testing::random_polynomial(rng, r, 4, 3);
      auto b = testing::random_polynomial(rng, r, 4, 3);
      auto c = testing::random_polynomial(rng, r, 4, 3);
      REQUIRE((a + b) + c == a + (b + c));
      REQUIRE((a * b) * c == a * (b * c));
      REQUIRE(a * (b + c) == a * b + a * c);
      REQUIRE(a * b == b * a);
      REQUIRE(a + b == b + a);
      REQUIRE(normalize(normalize(a)) == normalize(a));
      REQUIRE(parse_polynomial(print_polynomial(a), r) == a);
    }
  }
}

TEST_CASE("substitution composes") {
  std::mt19937_64 rng(7);
  auto r = qq({"x", "y"});
  for (int k = 0; k < 100; ++k) {
    auto p = testing::random_polynomial(rng, r, 4, 3);
    Assignment sigma{{"x", testing::random_polynomial(rng, r, 3, 2)},
                     {"y", testing::random_polynomial(rng, r, 3, 2)}};
    Assignment tau{{"x", testing::random_polynomial(rng, r, 3, 2)},
                   {"y", testing::random_polynomial(rng, r, 3, 2)}};
    Assignment composed;
    for (auto& [v, img] : sigma) composed.emplace(v, substitute(img, tau));
    REQUIRE(substitute(substitute(p, sigma), tau) == substitute(p, composed));
  }
}
