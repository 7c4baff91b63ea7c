#include <random>

#include "doctest.h"
#include "flf/errors.hpp"
#include "flf/groebner.hpp"
#include "flf/poly_text.hpp"
#include "random_poly.hpp"

using namespace flf;

namespace {

RingPtr qq(std::vector<std::string> names, std::vector<std::string> inverted = {}) {
  return make_ring(CoefficientField::rationals(), std::move(names), inverted);
}

Polynomial P(const RingPtr& r, const std::string& s) { return parse_polynomial(s, r); }

Ideal I(const RingPtr& r, std::initializer_list<const char*> gens) {
  std::vector<Polynomial> ps;
  for (auto g : gens) ps.push_back(P(r, g));
  return Ideal(r, ps);
}

std::vector<std::string> printed(const std::vector<Polynomial>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(print_polynomial(p));
  return out;
}

}  // namespace

TEST_CASE("buchberger examples") {
  auto r = qq({"x"});
  CHECK(printed(buchberger(I(r, {"x"}), MonomialOrder::lex()).basis()) ==
        std::vector<std::string>{"x"});

  // S(x^2+y^2, xy) = y^3 by hand; nothing further reduces.
  auto rxy = qq({"x", "y"});
  auto gb = buchberger(I(rxy, {"x^2 + y^2", "x*y"}), MonomialOrder::lex());
  CHECK(printed(gb.basis()) == std::vector<std::string>{"x^2 + y^2", "x*y", "y^3"});

  // t_inv > t in lex: t_inv reduces to -t modulo t^2 + 1.
  auto rt = make_ring(CoefficientField::rationals(), {"t_inv", "t"});
  auto gbt = buchberger(I(rt, {"t*t_inv - 1", "t^2 + 1"}), MonomialOrder::lex());
  CHECK(printed(gbt.basis()) == std::vector<std::string>{"t_inv + t", "t^2 + 1"});
}

TEST_CASE("normal form examples") {
  auto r = qq({"x", "t"});
  auto gx = buchberger(I(r, {"x"}), MonomialOrder::grevlex());
  CHECK(normal_form(P(r, "x^2"), gx).is_zero());
  auto gx2 = buchberger(I(r, {"x^2"}), MonomialOrder::grevlex());
  CHECK(normal_form(P(r, "x + 1"), gx2) == P(r, "x + 1"));
  // univariate division: t^3 = t*(t^2+1) - t
  auto gt = buchberger(I(r, {"t^2 + 1"}), MonomialOrder::grevlex());
  CHECK(normal_form(P(r, "t^3"), gt) == P(r, "-t"));
  CHECK(normal_form(normal_form(P(r, "t^5 + x*t"), gt), gt) == normal_form(P(r, "t^5 + x*t"), gt));
}

TEST_CASE("eliminate examples") {
  auto r = qq({"t", "x", "y"});
  // substituting t = y into t - x^2 gives y - x^2
  auto e = eliminate(I(r, {"t - x^2", "t - y"}), {"t"});
  CHECK(ideals_equal(e, I(r, {"x^2 - y"})));
  CHECK(ideals_equal(eliminate(I(r, {"x"}), {"t"}), I(r, {"x"})));
  auto ru = qq({"u"});
  CHECK(ideals_equal(eliminate(I(ru, {"u*2 + 1 - u"}), {}), I(ru, {"u + 1"})));
}

TEST_CASE("saturate examples") {
  auto r = qq({"t"});
  // t^3 + t = t*(t^2 + 1)
  CHECK(ideals_equal(saturate(I(r, {"t^3 + t"}), P(r, "t")), I(r, {"t^2 + 1"})));
  auto rxy = qq({"x", "y"});
  CHECK(ideals_equal(saturate(I(rxy, {"x*y"}), P(rxy, "1")), I(rxy, {"x*y"})));
  CHECK(ideals_equal(saturate(I(rxy, {"x^2*y"}), P(rxy, "x")), I(rxy, {"y"})));
  CHECK(ideals_equal(saturate(I(rxy, {"x^2"}), P(rxy, "x")), I(rxy, {"1"})));
  CHECK_THROWS_AS(saturate(I(rxy, {"x"}), P(rxy, "0")), Error);
}

TEST_CASE("intersection of comaximal ideals") {
  auto r = qq({"t"});
  auto meet = intersect(I(r, {"t"}), I(r, {"t^2 + 1"}));
  CHECK(ideals_equal(meet, I(r, {"t^3 + t"})));
}

TEST_CASE("budget exhaustion is reported") {
  auto r = qq({"x", "y", "z"});
  GroebnerOptions opts;
  opts.budget = 3;
  CHECK_THROWS_AS(buchberger(I(r, {"x^2*y - z^2", "x*y^2 - x", "y*z - x^2 + 1"}), MonomialOrder::grevlex(), opts),
                  BudgetExhausted);
}

TEST_CASE("laurent input must be encoded first") {
  auto r = qq({"t"}, {"t"});
  CHECK_THROWS_AS(buchberger(Ideal(r, {P(r, "t^-1 + 1")}), MonomialOrder::grevlex()), Error);
}

TEST_CASE("cofactors express the basis in the generators") {
  auto r = qq({"x", "y"});
  GroebnerOptions opts;
  opts.track_cofactors = true;
  auto gb = buchberger(I(r, {"x^2 + y^2", "x*y"}), MonomialOrder::lex(), opts);
  REQUIRE(gb.has_cofactors());
  for (std::size_t i = 0; i < gb.size(); ++i) {
    Polynomial sum(r);
    for (std::size_t j = 0; j < gb.generators().size(); ++j) {
      sum = sum + gb.cofactors()[i][j] * gb.generators()[j];
    }
    CHECK(sum == gb.basis()[i]);
  }
}

TEST_CASE("randomized ideals: uniqueness, membership, saturation") {
  std::mt19937_64 rng(314159);
  for (auto field : {CoefficientField::rationals(), CoefficientField::prime(5)}) {
    auto r = make_ring(field, {"x", "y", "z"});
    for (int k = 0; k < 25; ++k) {
      std::vector<Polynomial> gens;
      for (int g = 0; g < 3; ++g) gens.push_back(testing::random_polynomial(rng, r, 3, 3));
      Ideal ideal(r, gens);
      for (auto order : {MonomialOrder::grevlex(), MonomialOrder::lex()}) {
        auto a = buchberger(ideal, order);
        GroebnerOptions fifo;
        fifo.strategy = PairStrategy::fifo;
        GroebnerOptions rnd;
        rnd.strategy = PairStrategy::random;
        rnd.seed = static_cast<std::uint64_t>(k);
        REQUIRE(buchberger(ideal, order, fifo).basis() == a.basis());
        REQUIRE(buchberger(ideal, order, rnd).basis() == a.basis());
        REQUIRE(is_reduced(a));
        REQUIRE(satisfies_buchberger_criterion(a));
        REQUIRE(buchberger(Ideal(r, a.basis()), order).basis() == a.basis());
        for (const auto& g : ideal.generators()) REQUIRE(ideal_contains(a, g));
        Polynomial combo(r);
        for (const auto& g : ideal.generators()) combo = combo + testing::random_polynomial(rng, r, 2, 2) * g;
        REQUIRE(ideal_contains(a, combo));
      }
      const auto g = testing::random_polynomial(rng, r, 2, 1);
      if (g.is_zero()) continue;
      auto sat = saturate(ideal, g);
      auto gb_sat = buchberger(sat, MonomialOrder::grevlex());
      for (const auto& f : ideal.generators()) REQUIRE(ideal_contains(gb_sat, f));
      REQUIRE(ideals_equal(saturate(sat, g), sat));
    }
  }
}

TEST_CASE("elimination commutes with permuting kept variables") {
  auto r1 = qq({"t", "x", "y"});
  auto r2 = qq({"t", "y", "x"});
  auto e1 = eliminate(I(r1, {"t^2 - x", "t^3 - y", "x*y - 1"}), {"t"});
  auto e2 = eliminate(I(r2, {"t^2 - x", "t^3 - y", "x*y - 1"}), {"t"});
  std::vector<Polynomial> mapped;
  for (const auto& g : e2.generators()) mapped.push_back(embed(g, r1));
  CHECK(ideals_equal(e1, Ideal(r1, mapped)));
}
