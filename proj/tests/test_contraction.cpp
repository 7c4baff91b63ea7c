#include <doctest.h>

#include "flf/contraction.hpp"
#include "span_pool.hpp"

using namespace flf;
using namespace flf::testing;

namespace {

Correspondence rational_point(long a) {
  return span(pt(), Gm(QQ(), "t1"), {}, {}, {}, {{"t1", std::to_string(a)}});
}

Correspondence sqrt2_span() {
  return span(pt(), Gm(QQ(), "t1"), {"z"}, {}, {"z^2 - 2"}, {{"t1", "z"}, {"t1_inv", "1/2*z"}});
}

// Double cover of Gm mapping to its square root.
Correspondence root_cover() {
  return span(Gm(QQ(), "y"), Gm(QQ(), "t1"), {"r"}, {"r"}, {"r^2 - y"}, {{"t1", "r"}});
}

void check_contraction(const Correspondence& alpha, const ContractionDatum& d) {
  ContractedCorrespondence cc = contract(alpha, d);
  CHECK(cc.red_flags.empty());
  CHECK(cc.avoids_zero);
  CHECK(cc.avoids_one);
  REQUIRE_FALSE(cc.pieces.empty());
  for (const auto& piece : cc.pieces) {
    REQUIRE(piece.outcome.verdict == FlfVerdict::certified);
    CHECK(piece.outcome.certificate->rank == alpha.certificate->rank);
  }
  EndpointReport rep = verify_contraction_endpoints(alpha, d);
  CHECK(rep.passed());
  CHECK(rep.one_equals_alpha);
  CHECK(rep.zero_constant);
  CHECK(rep.identity_at == "u=1");
  CHECK(rep.constant_at == "u=0");
}

}  // namespace

TEST_CASE("standard datum invariants hold for n = 1..4") {
  for (int n = 1; n <= 4; ++n) {
    ContractionDatum d = standard_contraction_data(n);
    CHECK(d.coordinates.size() == static_cast<std::size_t>(n));
    CHECK(check_datum(d).passed());
  }
  ContractionDatum d1 = standard_contraction_data(1);
  CHECK(print_polynomial(d1.w) == print_polynomial(parse_polynomial("u*t1 + 1 - u", d1.x_line.ring())));
  ContractionDatum d2 = standard_contraction_data(2);
  CHECK(d2.w == parse_polynomial("(u*t1 + 1 - u)*(u*t2 + 1 - u)", d2.x_line.ring()));
  CHECK_THROWS_AS(standard_contraction_data(0), Error);
}

TEST_CASE("broken data are rejected") {
  ContractionDatum d = standard_contraction_data(1);
  const auto& r = d.x_line.ring();
  ContractionDatum swapped = d;
  swapped.f.at("t1") = parse_polynomial("(1 - u)*t1 + u", r);
  DatumCheck c = check_datum(swapped);
  CHECK_FALSE(c.f_at_one_is_identity);
  CHECK_FALSE(c.f_at_zero_is_base_point);
  CHECK_FALSE(c.passed());

  ContractionDatum no_unit = d;
  no_unit.w = parse_polynomial("u*t1 + 1 - u", r) * parse_polynomial("t1 - 1 + u", r);
  CHECK_FALSE(check_datum(no_unit).w_at_zero_is_one);

  ContractionDatum f_not_unit = d;
  f_not_unit.w = parse_polynomial("1 + u*t1 - u*t1", r);
  CHECK_FALSE(check_datum(f_not_unit).f_invertible_on_w);
  CHECK_THROWS_AS(contract(identity(Gm(QQ(), "t1")), f_not_unit), Error);
}

TEST_CASE("unit inverse") {
  AffineScheme q = scheme(QQ(), {"z"}, {}, {"z^2 - 2"});
  auto inv = unit_inverse(q.ideal(), parse_polynomial("z + 1", q.ring()));
  REQUIRE(inv);
  CHECK(*inv == parse_polynomial("z - 1", q.ring()));
  CHECK_FALSE(unit_inverse(scheme(QQ(), {"x"}, {}, {}).ideal(), parse_polynomial("x", scheme(QQ(), {"x"}, {}, {}).ring())));
}

TEST_CASE("identity of Gm") {
  ContractionDatum d = standard_contraction_data(1);
  Correspondence id = identity(Gm(QQ(), "t1"));
  ContractedCorrespondence cc = contract(id, d);
  REQUIRE(cc.pieces.size() == 1);
  const RingPtr& yu = cc.v_double_prime.ring();
  CHECK(ideals_equal(cc.v_double_prime, Ideal(yu, {parse_polynomial("u*t1 + 1 - u", yu),
                                                   parse_polynomial("t1*t1_inv - 1", yu)})));
  const auto& map = cc.pieces[0].span.target_map;
  CHECK(map.at("t1") == parse_polynomial("u*t1 + 1 - u", map.at("t1").ring()));
  check_contraction(id, d);

  EndpointReport rep = verify_contraction_endpoints(id, d);
  REQUIRE(rep.at_zero);
  CHECK(rep.at_zero->target_map.at("t1").constant_value() == mpq_class(1));
  CHECK(rep.at_one->target_map.at("t1") == Polynomial::variable(rep.at_one->middle.ring(), "t1"));
}

TEST_CASE("rational points") {
  ContractionDatum d = standard_contraction_data(1);
  Correspondence two = rational_point(2);
  ContractedCorrespondence cc = contract(two, d);
  CHECK(printed(cc.v_double_prime.generators()) == std::vector<std::string>{"u + 1"});
  REQUIRE(cc.pieces.size() == 1);
  CHECK(print_polynomial(cc.pieces[0].span.target_map.at("t1")) == "u + 1");
  for (long a : {2L, 3L, -1L}) {
    CAPTURE(a);
    check_contraction(rational_point(a), d);
  }
  EndpointReport rep = verify_contraction_endpoints(two, d);
  CHECK(rep.at_one->target_map.at("t1").constant_value() == mpq_class(2));
  CHECK(rep.at_zero->target_map.at("t1").constant_value() == mpq_class(1));
}

TEST_CASE("the base point itself breaks the dichotomy") {
  ContractionDatum d = standard_contraction_data(1);
  EndpointReport rep = verify_contraction_endpoints(rational_point(1), d);
  CHECK(rep.zero_equals_alpha);
  CHECK(rep.one_equals_alpha);
  CHECK_FALSE(rep.dichotomy());
  CHECK_FALSE(rep.passed());
}

TEST_CASE("quadratic point") {
  ContractionDatum d = standard_contraction_data(1);
  Correspondence a = sqrt2_span();
  REQUIRE(a.certificate);
  CHECK(a.certificate->rank == 2);
  ContractedCorrespondence cc = contract(a, d);
  CHECK(printed(cc.v_double_prime.generators()) == std::vector<std::string>{"u^2 + 2*u - 1"});
  check_contraction(a, d);
  EndpointReport rep = verify_contraction_endpoints(a, d);
  // The constant endpoint: t1 - 1 vanishes on the middle.
  const auto& z = rep.at_zero->middle;
  GroebnerBasis gb = buchberger(z.ideal(), MonomialOrder::grevlex());
  CHECK(ideal_contains(gb, rep.at_zero->target_map.at("t1") - Polynomial::constant(z.ring(), 1)));
}

TEST_CASE("rank-2 span over Gm") {
  ContractionDatum d = standard_contraction_data(1);
  Correspondence a = root_cover();
  REQUIRE(a.certificate);
  CHECK(a.certificate->rank == 2);
  check_contraction(a, d);
}

TEST_CASE("identity of Gm^2") {
  ContractionDatum d = standard_contraction_data(2);
  AffineScheme x = product(Gm(QQ(), "t1"), Gm(QQ(), "t2"));
  check_contraction(identity(x), d);
  CHECK_THROWS_AS(contract(identity(Gm(QQ(), "t1")), d), RingMismatch);
}
