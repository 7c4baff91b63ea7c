#include "flf/contraction.hpp"

#include <set>

namespace flf {

namespace {

RingPtr extend(const Ring& ring, const std::vector<std::string>& extra) {
  std::vector<std::string> names = ring.names();
  names.insert(names.end(), extra.begin(), extra.end());
  return make_ring(ring.field(), std::move(names), ring.inverted_names());
}

std::vector<Polynomial> embed_all(const std::vector<Polynomial>& ps, const RingPtr& target) {
  std::vector<Polynomial> out;
  for (const auto& p : ps) out.push_back(embed(p, target));
  return out;
}

bool congruent(const GroebnerBasis& gb, const Polynomial& a, const Polynomial& b) {
  return ideal_contains(gb, a - b);
}

// The pullback of datum polynomials along q x A^1: X coordinates go to
// alpha's target images, u to u.
Assignment pullback_map(const Correspondence& alpha, const ContractionDatum& datum, const RingPtr& ring,
                        const std::string& u) {
  Assignment a;
  for (const auto& [name, image] : alpha.target_map) a.emplace(name, embed(image, ring));
  a.emplace(datum.u, Polynomial::variable(ring, u));
  return a;
}

}  // namespace

std::optional<Polynomial> unit_inverse(const Ideal& ideal, const Polynomial& g, const GroebnerOptions& options) {
  const Ring& ring = *ideal.ring();
  const std::string v = fresh_name(ring, "inv");
  RingPtr big = extend(ring, {v});
  Polynomial vv = Polynomial::variable(big, v);
  std::vector<Polynomial> gens = embed_all(ideal.generators(), big);
  gens.push_back(vv * embed(g, big) - Polynomial::constant(big, 1));
  std::vector<bool> first(big->size(), false);
  first[big->require(v)] = true;
  GroebnerBasis gb = buchberger(Ideal(big, gens), MonomialOrder::block(first), options);
  if (gb.is_unit()) return Polynomial(ideal.ring());
  const std::size_t vi = big->require(v);
  for (std::size_t i = 0; i < gb.size(); ++i) {
    const auto& terms = gb.ordered(i);
    Monomial lead = terms.front().exponents;
    if (lead[vi] != 1) continue;
    lead[vi] = 0;
    bool pure = true;
    for (auto e : lead) pure = pure && e == 0;
    if (!pure) continue;
    Polynomial rest = vv - gb.basis()[i];
    if (rest.involves(vi)) continue;
    Assignment drop{{v, Polynomial::constant(ideal.ring(), 0)}};
    return substitute(rest, drop, ideal.ring());
  }
  return std::nullopt;
}

ContractionDatum standard_contraction_data(int n, const CoefficientField& field) {
  if (n < 1) throw Error("standard_contraction_data: n must be at least 1");
  std::vector<std::string> coords;
  AffineScheme x = point(field);
  for (int i = 1; i <= n; ++i) {
    coords.push_back("t" + std::to_string(i));
    x = product(x, multiplicative_group(field, coords.back()));
  }
  AffineScheme line = product(x, affine_line(field, "u"));
  const RingPtr& r = line.ring();
  Polynomial u = Polynomial::variable(r, "u");
  Polynomial one = Polynomial::constant(r, 1);
  Polynomial w = one;
  Assignment f;
  for (const auto& c : coords) {
    Polynomial fi = u * Polynomial::variable(r, c) + one - u;
    w = w * fi;
    f.emplace(c, fi);
  }
  return ContractionDatum{x, coords, std::vector<mpq_class>(coords.size(), mpq_class(1)), "u", line, w, f};
}

DatumCheck check_datum(const ContractionDatum& d, const GroebnerOptions& options) {
  DatumCheck out;
  const RingPtr& r = d.x_line.ring();
  GroebnerBasis gb = buchberger(d.x_line.ideal(), MonomialOrder::grevlex(), options);
  Assignment at0{{d.u, Polynomial::constant(r, 0)}};
  Assignment at1{{d.u, Polynomial::constant(r, 1)}};
  Assignment at_x0;
  for (std::size_t i = 0; i < d.coordinates.size(); ++i) {
    at_x0.emplace(d.coordinates[i], Polynomial::constant(r, r->field().reduce(d.base_point[i])));
  }

  out.w_at_zero_is_one = congruent(gb, substitute(d.w, at0), Polynomial::constant(r, 1));
  Polynomial along = normal_form(substitute(d.w, at_x0), gb);
  out.w_unit_along_base_point = along.is_constant() && !along.is_zero();

  out.f_at_one_is_identity = out.f_at_zero_is_base_point = out.f_fixes_base_point = out.f_invertible_on_w = true;
  for (std::size_t i = 0; i < d.coordinates.size(); ++i) {
    const std::string& c = d.coordinates[i];
    auto it = d.f.find(c);
    if (it == d.f.end()) {
      out.f_at_one_is_identity = out.f_at_zero_is_base_point = out.f_fixes_base_point = false;
      out.f_invertible_on_w = false;
      continue;
    }
    const Polynomial& fi = it->second;
    Polynomial x0 = Polynomial::constant(r, r->field().reduce(d.base_point[i]));
    out.f_at_one_is_identity &= congruent(gb, substitute(fi, at1), Polynomial::variable(r, c));
    out.f_at_zero_is_base_point &= congruent(gb, substitute(fi, at0), x0);
    out.f_fixes_base_point &= congruent(gb, substitute(fi, at_x0), x0);
    GroebnerBasis gi = buchberger(d.x_line.ideal().plus(fi), MonomialOrder::grevlex(), options);
    out.f_invertible_on_w &= ideal_contains(gi, d.w);
  }
  return out;
}

ContractedCorrespondence contract(const Correspondence& alpha, const ContractionDatum& datum,
                                  const GroebnerOptions& options) {
  if (!alpha.certificate) throw Error("contract: alpha must be certified finite locally free");
  if (!same_scheme(alpha.target, datum.x, options)) {
    throw RingMismatch("contract: alpha must map to the datum's X");
  }
  if (!check_datum(datum, options).passed()) throw Error("contract: contraction datum fails its hypotheses");

  const AffineScheme& y = alpha.source;
  const AffineScheme& z = alpha.middle;
  const std::string u = fresh_name(*z.ring(), datum.u);

  // V' on Z x A^1.
  RingPtr zu = extend(*z.ring(), {u});
  const Assignment pb = pullback_map(alpha, datum, zu, u);
  Polynomial wq = substitute(datum.w, pb, zu);
  std::vector<Polynomial> gens = embed_all(z.ideal().generators(), zu);
  gens.push_back(wq);
  Ideal v_prime = canonical(Ideal(zu, gens), options);

  // V'' = p(V'), read on Y x A^1.
  AffineScheme yu = product(y, affine_line(y.field(), u));
  Ideal image = eliminate(v_prime, alpha.fiber_names(), options);
  Ideal v_double_prime = canonical(Ideal(yu.ring(), embed_all(image.generators(), yu.ring())), options);
  ContractedCorrespondence out{u, v_prime, v_double_prime, false, false, {}, {}};

  Polynomial uu = Polynomial::variable(yu.ring(), u);
  out.avoids_zero = is_unit_ideal(out.v_double_prime.plus(uu), options);
  out.avoids_one = is_unit_ideal(out.v_double_prime.plus(uu - Polynomial::constant(yu.ring(), 1)), options);
  if (!out.avoids_zero) out.red_flags.push_back("V'' meets u = 0");
  if (!out.avoids_one) out.red_flags.push_back("V'' meets u = 1");

  // Standard opens D(g) covering U: generators of V'' that are nonzero on
  // Y x A^1, skipping those already in the span of the kept ones.
  Ideal kept = yu.ideal();
  std::vector<Polynomial> cover;
  for (const auto& g : out.v_double_prime.generators()) {
    GroebnerBasis gb = buchberger(kept, MonomialOrder::grevlex(), options);
    if (ideal_contains(gb, g)) continue;
    cover.push_back(g);
    kept = kept.plus(g);
  }

  std::set<std::string> taken(zu->names().begin(), zu->names().end());
  const std::size_t rank = alpha.certificate->rank;
  for (const auto& g : cover) {
    std::string l = "l";
    for (int k = 2; taken.count(l); ++k) l = "l_" + std::to_string(k);

    RingPtr src_ring = extend(*yu.ring(), {l});
    Polynomial lg = Polynomial::variable(src_ring, l) * embed(g, src_ring) - Polynomial::constant(src_ring, 1);
    std::vector<Polynomial> src_rel = embed_all(y.relations(), src_ring);
    src_rel.push_back(lg);
    AffineScheme source(src_ring, src_rel);

    RingPtr mid_ring = extend(*zu, {l});
    std::vector<Polynomial> mid_rel = embed_all(z.relations(), mid_ring);
    mid_rel.push_back(embed(lg, mid_ring));
    AffineScheme middle(mid_ring, mid_rel);

    // Composite through f; companions via inverses on W'_g.
    const Assignment pb_mid = pullback_map(alpha, datum, mid_ring, u);
    Assignment map;
    for (const auto& c : datum.coordinates) {
      Polynomial fi = substitute(datum.f.at(c), pb_mid, mid_ring);
      map.emplace(c, fi);
      auto idx = datum.x.ring()->index_of(c);
      auto comp = datum.x.ring()->companion(*idx);
      if (!comp) continue;
      auto inv = unit_inverse(middle.ideal(), fi, options);
      if (!inv) throw Error("contract: f_" + c + " is not invertible on W' (datum not valid over alpha)");
      map.emplace(datum.x.ring()->name(*comp), *inv);
    }
    ContractedPiece piece{g, l, make_correspondence(source, datum.x, middle, map, options), FlfOutcome{}};
    piece.outcome = certify(piece.span, options);
    if (piece.outcome.verdict != FlfVerdict::certified) {
      out.red_flags.push_back("W' over D(" + g.to_string() + ") not certified: " + piece.outcome.detail);
    } else if (piece.outcome.certificate->rank != rank) {
      out.red_flags.push_back("W' over D(" + g.to_string() + ") has rank " +
                              std::to_string(piece.outcome.certificate->rank) + ", alpha has " +
                              std::to_string(rank));
    }
    out.pieces.push_back(std::move(piece));
  }
  if (cover.empty()) out.red_flags.push_back("U is empty");
  return out;
}

bool EndpointReport::dichotomy() const {
  if (zero_equals_alpha == one_equals_alpha) return false;
  return one_equals_alpha ? zero_constant : one_constant;
}

EndpointReport verify_contraction_endpoints(const Correspondence& alpha, const ContractionDatum& datum,
                                            const GroebnerOptions& options) {
  EndpointReport rep;
  ContractedCorrespondence cc = contract(alpha, datum, options);
  rep.avoids_zero = cc.avoids_zero;
  rep.avoids_one = cc.avoids_one;
  for (const auto& f : cc.red_flags) rep.detail += f + "; ";

  const AffineScheme& y = alpha.source;
  const AffineScheme& z = alpha.middle;
  GroebnerBasis zgb = buchberger(z.ideal(), MonomialOrder::grevlex(), options);

  for (long c : {0L, 1L}) {
    // A piece D(g) containing all of Y x {c}: g(., c) is a unit on Y.
    std::optional<Correspondence> slice;
    for (const auto& piece : cc.pieces) {
      Polynomial gc_y = substitute(piece.generator, {{cc.u, Polynomial::constant(y.ring(), c)}}, y.ring());
      auto inv = unit_inverse(y.ideal(), gc_y, options);
      if (!inv) continue;
      Assignment to_z{{cc.u, Polynomial::constant(z.ring(), c)}, {piece.localizer, embed(*inv, z.ring())}};
      Assignment map;
      for (const auto& [name, image] : piece.span.target_map) {
        map.emplace(name, normal_form(substitute(image, to_z, z.ring()), zgb));
      }
      slice = make_correspondence(y, datum.x, z, map, options);
      break;
    }
    if (!slice) {
      rep.detail += "no piece covers u=" + std::to_string(c) + "; ";
      continue;
    }
    const bool eq = compare(*slice, alpha, {}, options) == Comparison::equal;
    bool constant = true;
    for (std::size_t i = 0; i < datum.coordinates.size(); ++i) {
      Polynomial x0 = Polynomial::constant(z.ring(), z.field().reduce(datum.base_point[i]));
      constant = constant && congruent(zgb, slice->target_map.at(datum.coordinates[i]), x0);
    }
    if (c == 0) {
      rep.at_zero = slice;
      rep.zero_equals_alpha = eq;
      rep.zero_constant = constant;
    } else {
      rep.at_one = slice;
      rep.one_equals_alpha = eq;
      rep.one_constant = constant;
    }
  }
  if (rep.dichotomy()) {
    rep.identity_at = rep.one_equals_alpha ? "u=1" : "u=0";
    rep.constant_at = rep.one_equals_alpha ? "u=0" : "u=1";
  } else {
    rep.detail += "endpoint dichotomy fails; ";
  }
  return rep;
}

}  // namespace flf
