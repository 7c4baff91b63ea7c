#include "doctest.h"
#include "fixtures.hpp"
#include "flf/certificate.hpp"
#include "flf/module.hpp"

using namespace flf;
using namespace flf::testing;

namespace {

AffineScheme pt() { return point(QQ()); }
AffineScheme line(const std::string& v) { return affine_line(QQ(), v); }

}  // namespace

TEST_CASE("module presentation examples") {
  auto cubic = algebra(scheme(QQ(), {"t"}, {}, {"t^3 - 2"}), pt());
  auto m = module_presentation(cubic);
  CHECK(printed(m.generators) == std::vector<std::string>{"1", "t", "t^2"});
  CHECK(m.relations.empty());

  auto root = algebra(scheme(QQ(), {"t", "x"}, {}, {"t^2 - x"}), line("x"));
  auto m2 = module_presentation(root);
  CHECK(printed(m2.generators) == std::vector<std::string>{"1", "t"});
  CHECK(m2.relations.empty());

  auto hyperbola = algebra(scheme(QQ(), {"t", "x"}, {}, {"x*t - 1"}), line("x"));
  CHECK_THROWS_AS(module_presentation(hyperbola), NotFinite);
  try {
    module_presentation(hyperbola);
  } catch (const NotFinite& e) {
    CHECK(e.variable() == "t");
  }
}

TEST_CASE("fitting ideal examples") {
  auto base_x = line("x");
  ModulePresentation free2{base_x, {Polynomial::constant(base_x.ring(), 1), Polynomial::constant(base_x.ring(), 1)}, {}};
  CHECK(fitting_is_zero(free2, 1));
  CHECK(fitting_is_unit(free2, 2));
  CHECK(locally_free_rank(free2) == 2u);

  ModulePresentation torsion{base_x, {Polynomial::constant(base_x.ring(), 1)},
                             {{parse_polynomial("x - 1", base_x.ring())}}};
  auto f0 = fitting_ideal(torsion, 0);
  CHECK(printed(f0) == std::vector<std::string>{"x - 1"});
  CHECK(!fitting_is_zero(torsion, 0));
  CHECK(!fitting_is_unit(torsion, 0));
  CHECK(!locally_free_rank(torsion));

  auto h = algebra(scheme(QQ(), {"t", "s"}, {}, {"t^2 + t*s + 1 - s"}), line("s"));
  auto mh = module_presentation(h);
  CHECK(mh.generators.size() == 2);
  CHECK(fitting_is_zero(mh, 1));
  CHECK(fitting_is_unit(mh, 2));
  CHECK(locally_free_rank(mh) == 2u);
}

TEST_CASE("fitting ideals grow with r") {
  auto base = scheme(QQ(), {"x", "y"}, {}, {});
  auto r = base.ring();
  auto p = [&](const char* s) { return parse_polynomial(s, r); };
  ModulePresentation m{base,
                       {Polynomial::constant(r, 1), Polynomial::constant(r, 1), Polynomial::constant(r, 1)},
                       {{p("x"), p("y"), p("0")}, {p("0"), p("x*y"), p("x - 1")}}};
  // Fitt_r contained in Fitt_{r+1}.
  for (std::size_t k = 0; k < 3; ++k) {
    auto lower = fitting_ideal(m, k);
    auto upper = buchberger(Ideal(r, fitting_ideal(m, k + 1)), MonomialOrder::grevlex());
    for (const auto& g : lower) CHECK(ideal_contains(upper, g));
  }
  // 2x2 minors of the 2x3 matrix by hand.
  auto f1 = fitting_ideal(m, 1);
  CHECK(ideals_equal(Ideal(r, f1), Ideal(r, {p("x^2*y"), p("x^2 - x"), p("x*y - y")})));
  CHECK(fitting_is_zero(m, 0));
}

TEST_CASE("determinant") {
  auto r = make_ring(QQ(), {"a", "b"});
  auto p = [&](const char* s) { return parse_polynomial(s, r); };
  PolyMatrix m{{p("a"), p("1"), p("0")}, {p("b"), p("a"), p("1")}, {p("0"), p("b"), p("a")}};
  // a(a^2 - b) - 1*(b*a - 0) + 0
  CHECK(print_polynomial(determinant(m, r)) == "a^3 - 2*a*b");
  CHECK(determinant({}, r) == Polynomial::constant(r, 1));
}

TEST_CASE("certify_flf examples") {
  auto cubic = algebra(scheme(QQ(), {"t"}, {}, {"t^3 - 2"}), pt());
  auto c = certify_flf(cubic);
  REQUIRE(c.verdict == FlfVerdict::certified);
  CHECK(c.certificate->rank == 3);
  CHECK(c.certificate->verify());
  // t * t^2 = 2
  CHECK(print_polynomial(c.certificate->multiplication.at("t")[2][0]) == "2");

  auto root = algebra(scheme(QQ(), {"t", "x"}, {}, {"t^2 - x"}), line("x"));
  auto r = certify_flf(root);
  REQUIRE(r.verdict == FlfVerdict::certified);
  CHECK(r.certificate->rank == 2);
  CHECK(print_polynomial(r.certificate->multiplication.at("t")[1][0]) == "x");
  CHECK(r.certificate->verify());

  auto slice = algebra(scheme(QQ(), {"t", "x"}, {"t"}, {"1 - x"}), line("x"));
  auto s = certify_flf(slice);
  REQUIRE(s.verdict == FlfVerdict::not_flat);
  CHECK(printed(s.fitting_zero) == std::vector<std::string>{"x - 1"});
  CHECK(verify_negative(s, slice.fiber_names()));

  auto hyperbola = algebra(scheme(QQ(), {"t", "x"}, {}, {"x*t - 1"}), line("x"));
  auto h = certify_flf(hyperbola);
  REQUIRE(h.verdict == FlfVerdict::not_finite);
  CHECK(*h.witness_variable == "t");
  CHECK(verify_negative(h, hyperbola.fiber_names()));

  auto mixed = algebra(scheme(QQ(), {"t", "x"}, {}, {"x*t^2 - 1", "t^3 - x^2"}), line("x"));
  auto mx = certify_flf(mixed);
  CHECK(mx.verdict != FlfVerdict::certified);

  auto empty = algebra(scheme(QQ(), {"t", "x"}, {}, {"t - 1", "t - 2"}), line("x"));
  auto e = certify_flf(empty);
  REQUIRE(e.verdict == FlfVerdict::certified);
  CHECK(e.certificate->rank == 0);
}

TEST_CASE("certificate tampering is detected") {
  auto root = algebra(scheme(QQ(), {"t", "x"}, {}, {"t^2 - x"}), line("x"));
  auto c = certify_flf(root);
  REQUIRE(c.certificate);
  auto bad = *c.certificate;
  bad.multiplication.at("t")[1][0] = parse_polynomial("x + 1", bad.base.ring);
  CHECK(!bad.verify());

  auto bad_rank = *c.certificate;
  bad_rank.basis.pop_back();
  bad_rank.rank = 1;
  CHECK(!bad_rank.verify());

  auto bad_gb = *c.certificate;
  bad_gb.algebra.basis[0] = parse_polynomial("t^2 - 2*x", bad_gb.algebra.ring);
  CHECK(!bad_gb.verify());
}

TEST_CASE("budget exhaustion is inconclusive") {
  auto hard = algebra(scheme(QQ(), {"t", "u", "x"}, {}, {"t^3 - u*x - 1", "u^3 - t*x + 2", "t*u - x"}),
                      line("x"));
  auto out = certify_flf(hard, GroebnerOptions{.budget = 2});
  CHECK(out.verdict == FlfVerdict::inconclusive);
}

// Fitting-ideal verdict versus staircase verdict on curated algebras.
TEST_CASE("fitting agrees with staircase") {
  struct Case {
    std::vector<std::string> vars, inverted, rels;
    std::vector<std::string> base_vars, base_inverted;
  };
  const std::vector<Case> cases = {
      {{"t"}, {}, {"t^3 - 2"}, {}, {}},
      {{"t"}, {}, {"t^2"}, {}, {}},
      {{"a", "b"}, {}, {"a^2", "b^2"}, {}, {}},
      {{"a", "b"}, {}, {"a^2 - b", "b^2 - 3"}, {}, {}},
      {{"t"}, {"t"}, {"t^4 + 1"}, {}, {}},
      {{"t"}, {"t"}, {"t^3 + t"}, {}, {}},
      {{"t", "x"}, {}, {"t^2 - x"}, {"x"}, {}},
      {{"t", "x"}, {}, {"t^3 + x*t + 1"}, {"x"}, {}},
      {{"t", "s"}, {}, {"t^2 + t*s + 1 - s"}, {"s"}, {}},
      {{"t", "s"}, {}, {"t^3 + t*s + 1 - s"}, {"s"}, {}},
      {{"t", "x"}, {}, {"t^2 - 1", "x - 1"}, {"x"}, {}},
      {{"t", "x"}, {"t"}, {"1 - x"}, {"x"}, {}},
      {{"t", "x"}, {}, {"t - 3", "x^2 - x"}, {"x"}, {}},
      {{"y", "x", "t"}, {"t"}, {"y^2 - t"}, {"x", "t"}, {"t"}},
      {{"y", "x", "t"}, {"t"}, {"y^3 - x*t*y - t"}, {"x", "t"}, {"t"}},
      {{"y", "z", "x"}, {}, {"y^2 - x", "z^2 - y"}, {"x"}, {}},
      {{"y", "z", "x"}, {}, {"y^2 - x", "z^2 - x", "y*z"}, {"x"}, {}},
      {{"y", "z", "x"}, {}, {"y*z - 1", "y^2 - x*z", "z^2 - y"}, {"x"}, {}},
      {{"t", "s", "x"}, {}, {"t^2 + s*t + x"}, {"s", "x"}, {}},
      {{"t", "s", "x"}, {}, {"t^2 - s", "s*x - 1"}, {"s", "x"}, {}},
      {{"t"}, {}, {"1"}, {}, {}},
  };
  int compared = 0;
  for (const auto& c : cases) {
    auto alg = algebra(scheme(QQ(), c.vars, c.inverted, c.rels), scheme(QQ(), c.base_vars, c.base_inverted, {}));
    auto out = certify_flf(alg);
    if (out.verdict == FlfVerdict::inconclusive || out.verdict == FlfVerdict::not_finite) continue;
    ModulePresentation m{alg.base, {}, {}};
    try {
      m = module_presentation(alg);
    } catch (const Error&) {
      CHECK(out.verdict == FlfVerdict::not_flat);
      continue;
    }
    auto rank = locally_free_rank(m);
    if (out.verdict == FlfVerdict::certified) {
      CHECK(rank == out.certificate->rank);
      CHECK(out.certificate->verify());
    } else {
      CHECK(!rank);
    }
    ++compared;
  }
  CHECK(compared >= 17);
}
