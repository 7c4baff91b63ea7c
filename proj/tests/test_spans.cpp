#include <random>

#include "doctest.h"
#include "span_pool.hpp"

using namespace flf;
using namespace flf::testing;

namespace {

// Random monic polynomial of the given degree in `v`, small coefficients.
std::string monic(std::mt19937& rng, const std::string& v, int deg, const std::string& coeff_var = "") {
  std::uniform_int_distribution<int> c(-3, 3);
  std::string s = v + "^" + std::to_string(deg);
  for (int k = 0; k < deg; ++k) {
    int a = c(rng);
    if (a == 0) continue;
    s += (a > 0 ? " + " : " - ") + std::to_string(std::abs(a));
    if (!coeff_var.empty() && c(rng) > 0) s += "*" + coeff_var;
    if (k > 0) s += "*" + v + "^" + std::to_string(k);
  }
  return s;
}

Correspondence dual_numbers(const std::string& a) {
  return span(pt(), pt(), {a}, {}, {a + "^2"}, {});
}

}  // namespace

TEST_CASE("identity and graphs") {
  auto id = identity(Gm());
  REQUIRE(id.certificate);
  CHECK(degree(id) == 1);
  CHECK(id.certificate->verify());
  auto sq = graph(Gm(), Gm(), {{"t", parse_polynomial("t^2", Gm().ring())}});
  CHECK(degree(sq) == 1);
  CHECK(print_polynomial(sq.target_map.at("t_inv")) == "t_inv^2");
}

TEST_CASE("compose examples") {
  auto alpha = span(Gm(), pt(), {"y"}, {}, {"y^2 - t"}, {});
  CHECK(equals(compose(identity(Gm()), alpha), alpha));
  CHECK(equals(compose(alpha, identity(pt())), alpha));

  auto c = compose(dual_numbers("a"), dual_numbers("a"));
  REQUIRE(c.certificate);
  CHECK(degree(c) == 4);
  auto expected = span(pt(), pt(), {"a", "b"}, {}, {"a^2", "b^2"}, {});
  CHECK(equals(c, expected, {{"b", "a_2"}}));
  CHECK(equals(expected, c, {{"a_2", "b"}}));
  CHECK(compare(expected, c) == Comparison::incomparable);

  std::mt19937 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const int da = 1 + trial % 3, db = 1 + (trial + 1) % 3;
    auto x = span(pt(), pt(), {"a"}, {}, {monic(rng, "a", da)}, {});
    auto y = span(pt(), pt(), {"b", "c"}, {}, {monic(rng, "b", db), monic(rng, "c", 2, "b")}, {});
    auto z = compose(x, y);
    REQUIRE(z.certificate);
    CHECK(degree(z) == static_cast<std::size_t>(da * db * 2));
    CHECK(z.certificate->verify());
  }
}

TEST_CASE("compose rejects mismatched interfaces") {
  CHECK_THROWS_AS(compose(identity(Gm()), identity(A1())), Error);
}

TEST_CASE("add examples") {
  auto alpha = span(A1(), A1(), {"y"}, {}, {"y^2 - x"}, {{"x", "y"}});
  CHECK(equals(add(alpha, zero(A1(), A1())), alpha));
  CHECK(equals(add(zero(A1(), A1()), alpha), alpha));

  auto g1 = graph(A1(), A1(), {{"x", parse_polynomial("x + 1", A1().ring())}});
  auto g2 = graph(A1(), A1(), {{"x", parse_polynomial("x^2", A1().ring())}});
  auto s = add(g1, g2);
  REQUIRE(s.certificate);
  CHECK(degree(s) == 2);
  CHECK(s.certificate->verify());

  // Swap: add(b, a) is add(a, b) with e -> 1 - e and fibers exchanged.
  auto beta = span(A1(), A1(), {"z"}, {}, {"z^3 - x*z - 1"}, {{"x", "z + x"}});
  auto ab = add(alpha, beta);
  auto ba = add(beta, alpha);
  REQUIRE(ab.certificate);
  CHECK(degree(ab) == 5);
  Assignment flip{{"e", Polynomial::constant(ab.middle.ring(), 1) - Polynomial::variable(ab.middle.ring(), "e")}};
  std::vector<Polynomial> rels;
  for (const auto& r : ab.middle.relations()) rels.push_back(substitute(r, flip));
  Assignment map;
  for (const auto& [y, img] : ab.target_map) map.emplace(y, substitute(img, flip));
  Correspondence swapped{ab.source, ab.target, AffineScheme(ab.middle.ring(), rels), map, std::nullopt};
  CHECK(compare(ba, swapped) != Comparison::incomparable);
  CHECK(equals(ba, swapped));
  CHECK(!equals(ba, ab));
}

TEST_CASE("add of inverted fibers") {
  auto a = span(pt(), pt(), {"u"}, {"u"}, {"u^2 + 1"}, {});
  auto b = span(pt(), pt(), {"u"}, {"u"}, {"u^3 + u"}, {});
  auto s = add(a, b);
  REQUIRE(s.certificate);
  CHECK(degree(s) == 4);
}

TEST_CASE("external tensor examples") {
  auto unit = identity(pt());
  auto alpha = span(A1(), Gm(), {"y"}, {"y"}, {"y^2 - x*y - 1"}, {{"t", "y"}});
  auto left = external_tensor(unit, alpha);
  CHECK(equals(left, alpha));

  auto r2 = span(pt(), pt(), {"a"}, {}, {"a^2 - 2"}, {});
  auto r3 = span(pt(), pt(), {"b"}, {}, {"b^3 - 5"}, {});
  CHECK(degree(external_tensor(r2, r3)) == 6);

  auto gm_dual = external_tensor(identity(Gm()), dual_numbers("a"));
  REQUIRE(gm_dual.certificate);
  CHECK(degree(gm_dual) == 2);
  CHECK(gm_dual.middle.ring()->names() == std::vector<std::string>{"t", "t_inv", "a"});
  CHECK(printed(canonical(gm_dual.middle.ideal()).generators()) == std::vector<std::string>{"t*t_inv - 1", "a^2"});

  auto g1 = graph(A1(), A1(), {{"x", parse_polynomial("x + 1", A1().ring())}});
  auto g2 = graph(A1(), A1(), {{"x", parse_polynomial("2*x", A1().ring())}});
  auto h = graph(Gm(), Gm(), {{"t", parse_polynomial("t^3", Gm().ring())}});
  // (g1 + g2) (x) h = g1 (x) h + g2 (x) h
  CHECK(equals(external_tensor(add(g1, g2), h), add(external_tensor(g1, h), external_tensor(g2, h))));
  CHECK(degree(external_tensor(add(g1, g2), h)) == 2);

  auto fp = span(pt(CoefficientField::prime(5)), pt(CoefficientField::prime(5)), {"a"}, {}, {"a^2"}, {});
  CHECK_THROWS_AS(external_tensor(r2, fp), RingMismatch);
}

TEST_CASE("equals examples") {
  auto alpha = span(Gm(), pt(), {"y"}, {}, {"y^2 - t"}, {});
  CHECK(equals(alpha, alpha));

  auto xy = span(pt(), pt(), {"x", "y"}, {}, {"x", "y"}, {});
  auto xpy = span(pt(), pt(), {"x", "y"}, {}, {"x + y", "y"}, {});
  CHECK(equals(xy, xpy));

  auto plus = span(Gm(), pt(), {}, {}, {"t^2 + 1"}, {});
  auto minus = span(Gm(), pt(), {}, {}, {"t^2 + t"}, {});
  CHECK(!equals(plus, minus));

  auto other = span(pt(), pt(), {"x"}, {}, {"x"}, {});
  CHECK(compare(xy, other) == Comparison::incomparable);
  CHECK_THROWS_AS(equals(xy, other), Error);
}

TEST_CASE("degree examples") {
  CHECK(degree(identity(A1())) == 1);
  CHECK(degree(span(pt(), Gm(), {"t"}, {"t"}, {"t^4 + 1"}, {{"t", "t"}})) == 4);
  // Inverting t removes the root t = 0 of t^3 + t.
  CHECK(degree(span(pt(), pt(), {"t"}, {"t"}, {"t^3 + t"}, {})) == 2);
  auto uncertified = span(A1(), pt(), {"y"}, {}, {"x*y - 1"}, {});
  CHECK(!uncertified.certificate);
  CHECK_THROWS_AS(degree(uncertified), Error);
}

TEST_CASE("compose is associative") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> deg(1, 2);
  std::uniform_int_distribution<int> c(-2, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const bool over_line = trial % 2 == 1;
    const AffineScheme base = over_line ? A1() : pt();
    auto make = [&](const std::string& f) {
      std::map<std::string, std::string> images;
      if (over_line) images["x"] = f + " + " + std::to_string(c(rng)) + "*x";
      return span(base, base, {f}, {}, {monic(rng, f, deg(rng), over_line ? "x" : "")}, images);
    };
    auto a = make("a"), b = make("b"), g = make("g");
    REQUIRE(a.certificate);
    REQUIRE(b.certificate);
    REQUIRE(g.certificate);
    auto left = compose(compose(a, b), g);
    auto right = compose(a, compose(b, g));
    CHECK(equals(left, right));
    REQUIRE(left.certificate);
    CHECK(degree(left) == degree(a) * degree(b) * degree(g));
    CHECK(degree(add(a, b)) == degree(a) + degree(b));
    CHECK(left.certificate->verify());
  }
}
