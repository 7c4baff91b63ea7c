#include "doctest.h"
#include "gm_pool.hpp"

using namespace flf;
using namespace flf::testing;

namespace {

AffineScheme line_gm() { return product(A1(), Gm()); }

PresentedAlgebra trivial_over(const AffineScheme& base) { return PresentedAlgebra{base, base}; }

Polynomial in(const PresentedAlgebra& z, const std::string& s) { return parse_polynomial(s, z.total.ring()); }

PresentedAlgebra root_cover() {
  // Gm[y]/(y^2 - t) over Gm.
  return algebra(scheme(QQ(), {"y", "t"}, {"t"}, {"y^2 - t"}), Gm());
}

}  // namespace

TEST_CASE("g and h polynomials") {
  CHECK(print_polynomial(g_poly(1, Sign::plus).value) == "t1 + 1");
  CHECK(print_polynomial(g_poly(2, Sign::minus).value) == "t1^2 + t2");
  CHECK_THROWS_AS(g_poly(0, Sign::plus), Error);
  for (int n = 1; n <= 6; ++n) {
    auto plus = g_poly(n, Sign::plus).value;
    auto minus = g_poly(n, Sign::minus).value;
    Assignment one{{"t2", Polynomial::constant(plus.ring(), 1)}};
    CHECK(substitute(plus, one) == substitute(minus, one));
  }
  for (int n = 1; n <= 4; ++n) {
    auto h = h_poly(n, n, Sign::plus).value;
    CHECK(!h.involves(h.ring()->require("s")));
    CHECK(print_polynomial(h) == print_polynomial(g_poly(n, Sign::plus).value));
  }
  auto r = h_poly(3, 2, Sign::plus).value.ring();
  CHECK(h_poly(3, 2, Sign::plus).value == parse_polynomial("t1^2*(s + (1 - s)*t1) + 1", r));
  CHECK(h_poly(4, 2, Sign::minus).value == parse_polynomial("t1^2*(s + (1 - s)*t1^2) + t2", r));
}

TEST_CASE("flatness bound examples") {
  auto z = trivial_over(line_gm());
  auto b = flatness_bound(z, "t", in(z, "x*t^-2"));
  CHECK(b.N == 2);
  CHECK(b.valuations[0][0] == -2L);
  CHECK(print_polynomial(b.matrices[0][0][0]) == "x*t_inv^2");
  CHECK(!b.criterion_holds(2));
  CHECK(b.criterion_holds(3));

  CHECK(flatness_bound(z, "t", in(z, "3")).N == 0);
  CHECK(flatness_bound(z, "t", in(z, "x*t^-1")).N == 1);
  CHECK(flatness_bound(z, "t", in(z, "(x^2 + 1)*t^-3")).N == 3);
  CHECK(flatness_bound(z, "t", in(z, "x^2*t")).N == 0);

  auto rc = root_cover();
  auto br = flatness_bound(rc, "t", in(rc, "y*t^-1"));
  CHECK(br.N == 1);
  CHECK(br.certificate.rank == 2);

  // Not finite free over X x Gm: rejected.
  auto hyper = algebra(scheme(QQ(), {"y", "x", "t"}, {"t"}, {"x*y - 1"}), line_gm());
  CHECK_THROWS_AS(flatness_bound(hyper, "t", in(hyper, "1")), Error);
}

TEST_CASE("flatness bound minimality") {
  auto z = trivial_over(line_gm());
  auto rc = root_cover();
  std::vector<std::pair<PresentedAlgebra, std::string>> cases = {
      {z, "x*t^-2"}, {z, "3"}, {z, "x*t^-1 + t"}, {z, "(x + 1)*t^-4 - x"}, {rc, "y*t^-1"}, {rc, "y*t^-3 + x"}};
  cases.pop_back();  // x is not a coordinate of the root cover
  cases.emplace_back(rc, "y*t^-3 + 2");
  for (auto& [alg, f] : cases) {
    auto b = flatness_bound(alg, "t", in(alg, f));
    CHECK(b.criterion_holds(b.N + 1));
    CHECK(!b.criterion_holds(b.N));
  }
}

TEST_CASE("z slices") {
  auto gm = trivial_over(Gm());
  for (int n = 1; n <= 4; ++n) {
    auto r = z_slice(gm, "t", in(gm, "-1"), n);
    REQUIRE(r.verdict == SliceVerdict::certified_flf);
    CHECK(r.outcome.certificate->rank == static_cast<std::size_t>(n));
  }
  auto z = trivial_over(line_gm());
  auto three = z_slice(z, "t", in(z, "x*t^-2"), 3);
  CHECK(three.verdict == SliceVerdict::flat_by_certificate);
  // Z_3 = Z(1 - x t) is the localization Q[x, 1/x]: t_inv = x there.
  auto gb = buchberger(three.slice.total.ideal(), MonomialOrder::grevlex());
  CHECK(ideal_contains(gb, in(z, "t_inv - x")));
  CHECK(ideal_contains(gb, in(z, "x*t - 1")));

  auto two = z_slice(z, "t", in(z, "x*t^-2"), 2);
  REQUIRE(two.verdict == SliceVerdict::not_flat);
  CHECK(printed(two.outcome.fitting_zero) == std::vector<std::string>{"x - 1"});
  CHECK(verify_negative(two.outcome, two.slice.fiber_names()));

  auto c = z_slice(z, "t", in(z, "5"), 2);
  REQUIRE(c.verdict == SliceVerdict::certified_flf);
  CHECK(c.outcome.certificate->rank == 2);
}

TEST_CASE("two-term flatness bound") {
  auto z = trivial_over(line_gm());
  auto b = flatness_bound_ext(z, "t", in(z, "x*t^-1"), in(z, "1"));
  CHECK(b.N == 1);
  for (int n = 2; n <= 3; ++n) {
    for (int a = 0; a <= 1; ++a) {
      for (int bb = 0; bb <= 1; ++bb) {
        auto f = shifted_sum(in(z, "x*t^-1"), in(z, "1"), "t", a, bb);
        auto r = z_slice(z, "t", f, n);
        CHECK((r.verdict == SliceVerdict::flat_by_certificate || r.verdict == SliceVerdict::certified_flf));
      }
    }
  }
  auto zs = trivial_over(product(Gm(), A1(QQ(), "s")));
  CHECK(flatness_bound_ext(zs, "t", in(zs, "-s"), in(zs, "s - 1")).N == 0);
  // a = b = 0 degenerates to f1 + f2.
  auto sum = flatness_bound(z, "t", in(z, "x*t^-1 + 1"));
  CHECK(sum.N <= b.N);
}

TEST_CASE("rho examples") {
  auto id = identity_gm();
  for (int n = 1; n <= 4; ++n) {
    auto r = rho(id, n, n, Sign::plus);
    REQUIRE(r.outcome.verdict == FlfVerdict::certified);
    CHECK(r.outcome.certificate->rank == static_cast<std::size_t>(n));
    // s-free ideal.
    const Ideal reduced = canonical(r.span.middle.ideal());
    for (const auto& g : reduced.generators()) {
      CHECK(!g.involves(g.ring()->require(r.s)));
    }
  }
  auto p = projector_span();
  for (int n = 1; n <= 3; ++n) {
    CHECK(equals(rho(p, n, n, Sign::plus).span, rho(p, n, n, Sign::minus).span));
  }
  auto off = rho(id, 3, 2, Sign::plus);
  auto ring = off.span.middle.ring();
  CHECK(ideals_equal(off.span.middle.ideal(),
                     Ideal(ring, {parse_polynomial("t^2*(s + (1 - s)*t) + 1", ring),
                                  parse_polynomial("t*t_inv - 1", ring)})));
  // A root escapes to infinity at s = 1, so no finiteness certificate.
  REQUIRE(off.outcome.verdict == FlfVerdict::not_finite);
  CHECK(verify_negative(off.outcome, off.span.fiber_names()));

  auto uncertified = GmSpan{span(Gm(), Gm(), {"y"}, {"y"}, {"t*y^2 - y + t"}, {{"t", "y"}}), "t", "t"};
  uncertified.span.certificate.reset();
  CHECK_THROWS_AS(rho(uncertified, 1, 1, Sign::plus), Error);
}

TEST_CASE("rho slices") {
  auto p = projector_span();
  auto id = identity_gm();
  for (int n = 1; n <= 6; ++n) {
    CHECK(equals(rho_slice(p, n, Sign::plus), rho_slice(p, n, Sign::minus)));
    auto plus = rho_slice(id, n, Sign::plus);
    auto minus = rho_slice(id, n, Sign::minus);
    CHECK(degree(plus) == static_cast<std::size_t>(n));
    CHECK(degree(minus) == static_cast<std::size_t>(n - 1));
  }
  auto diff = rho_difference(id, 3);
  CHECK(degree(diff.plus) == degree(diff.minus) + 1);
}

TEST_CASE("specializing rho gives the slices") {
  auto pool = gm_pool();
  pool.push_back(family_span());
  for (const auto& alpha : pool) {
    for (auto [m, n] : {std::pair{1, 1}, std::pair{2, 3}, std::pair{3, 1}}) {
      for (Sign sign : {Sign::plus, Sign::minus}) {
        auto r = rho(alpha, m, n, sign);
        CHECK(equals(specialize(r.span, r.s, 1), rho_slice(alpha, n, sign)));
        CHECK(equals(specialize(r.span, r.s, 0), rho_slice(alpha, m, sign)));
      }
    }
  }
}

TEST_CASE("filtration index") {
  // Off-diagonal slices are never finite for these spans, so only the
  // corner (window, window) certifies.
  for (const auto& alpha : gm_pool()) {
    auto w = filtration_index(alpha, 3);
    REQUIRE(w.i);
    CHECK(*w.i == 3);
    REQUIRE(w.blocking);
    CHECK(w.blocking->m != w.blocking->n);
    CHECK(w.blocking->verdict == FlfVerdict::not_finite);
    REQUIRE(w.bound_plus);
    CHECK(w.bound_plus->N == 0);
  }
  auto sq = square_root_span();
  auto w = filtration_index(sq, 2);
  REQUIRE(w.bound_minus);
  CHECK(w.bound_minus->N == 1);  // t2^-1 = y^-1 = y t^-1
}

TEST_CASE("naturality") {
  auto id = identity_gm();
  auto dual = span(pt(), pt(), {"a"}, {}, {"a^2"}, {});
  auto rep = verify_compat(id, identity(pt()), identity(pt()), 2, 2, Sign::plus);
  CHECK(rep.passed());
  rep = verify_compat(id, identity(pt()), dual, 2, 3, Sign::minus);
  CHECK(rep.passed());

  auto fam = family_span();
  auto shift = graph(A1(), A1(), {{"x", parse_polynomial("x + 1", A1().ring())}});
  rep = verify_compat(fam, shift, dual, 3, 2, Sign::plus);
  CHECK(rep.passed());
  auto to_point = span(pt(), A1(), {}, {}, {}, {{"x", "3"}});
  rep = verify_compat(fam, to_point, identity(pt()), 2, 2, Sign::minus);
  CHECK(rep.passed());
}

TEST_CASE("lemma verifier") {
  auto one = verify_cancel_final(1);
  REQUIRE(one.checks.size() == 5);
  CHECK(one.checks[0].passed);
  // D(t + t s + 1 - s) loses its point over s = -1: not finite.
  CHECK(!one.checks[1].passed);
  CHECK(one.checks[2].passed);
  CHECK(one.checks[3].passed);
  CHECK(one.checks[4].passed);
  for (int n = 2; n <= 4; ++n) {
    auto rep = verify_cancel_final(n);
    CHECK(rep.passed());
  }
  CHECK(verify_cancel_final(2, CoefficientField::prime(5)).passed());
  auto three = verify_cancel_final(3);
  for (const auto& c : three.checks) {
    for (const auto& cert : c.ideals) CHECK(cert.verify());
    for (const auto& cert : c.flf) CHECK(cert.verify());
  }
}
