#include "flf/spans.hpp"

namespace flf {

namespace {

bool name_free(const std::set<std::string>& taken, const std::string& n, bool inverted) {
  return !taken.count(n) && (!inverted || !taken.count(Ring::companion_name(n)));
}

std::vector<std::string> owners(const Ring& ring, const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (const auto& n : names) {
    if (!ring.is_companion(ring.require(n))) out.push_back(n);
  }
  return out;
}

/// Maps every variable of `from` into `to`, through `rename` when listed.
Assignment relabel(const Ring& from, const RingPtr& to, const std::map<std::string, std::string>& rename) {
  Assignment a;
  for (const auto& n : from.names()) {
    auto it = rename.find(n);
    a.emplace(n, Polynomial::variable(to, it == rename.end() ? n : it->second));
  }
  return a;
}

void certify_if(Correspondence& out, bool wanted, const GroebnerOptions& options) {
  if (wanted) certify(out, options);
}

}  // namespace

std::map<std::string, std::string> fresh_names(const Ring& ring, const std::vector<std::string>& wanted,
                                               std::set<std::string>& taken) {
  std::map<std::string, std::string> out;
  for (const auto& v : wanted) {
    const bool inv = ring.is_inverted(ring.require(v));
    std::string chosen = v;
    if (!name_free(taken, chosen, inv)) {
      const std::string stem = name_stem(v);
      for (int k = 2;; ++k) {
        chosen = stem + "_" + std::to_string(k);
        if (name_free(taken, chosen, inv)) break;
      }
    }
    out[v] = chosen;
    taken.insert(chosen);
    if (inv) {
      out[Ring::companion_name(v)] = Ring::companion_name(chosen);
      taken.insert(Ring::companion_name(chosen));
    }
  }
  return out;
}

void Correspondence::validate(const GroebnerOptions& options) const {
  left_leg().validate(options);
  const Ring& y = *target.ring();
  if (target_map.size() != y.size()) throw Error("target map must list every target variable");
  Assignment images;
  for (const auto& n : y.names()) {
    auto it = target_map.find(n);
    if (it == target_map.end()) throw Error("target variable '" + n + "' has no image");
    if (!same_ring(it->second.ring(), middle.ring())) {
      throw RingMismatch("image of '" + n + "' is not a polynomial on the middle scheme");
    }
  }
  GroebnerBasis gb = buchberger(middle.ideal(), MonomialOrder::grevlex(), options);
  for (const auto& g : target.ideal().generators()) {
    if (!ideal_contains(gb, substitute(g, target_map, middle.ring()))) {
      throw Error("target relation '" + g.to_string() + "' does not vanish on the middle scheme");
    }
  }
}

Correspondence make_correspondence(AffineScheme source, AffineScheme target, AffineScheme middle,
                                   Assignment target_map, const GroebnerOptions& options) {
  const Ring& y = *target.ring();
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!y.is_companion(i) || target_map.count(y.name(i))) continue;
    const std::string& owner = y.name(*y.companion(i));
    auto it = target_map.find(owner);
    if (it == target_map.end()) continue;
    auto inv = unit_monomial_inverse(it->second);
    if (!inv) {
      throw LocalizationViolated("image of '" + owner + "' is not a unit monomial; give '" + y.name(i) +
                                 "' explicitly");
    }
    target_map.emplace(y.name(i), *inv);
  }
  Correspondence c{std::move(source), std::move(target), std::move(middle), std::move(target_map), std::nullopt};
  c.validate(options);
  return c;
}

FlfOutcome certify(Correspondence& alpha, const GroebnerOptions& options) {
  FlfOutcome out = certify_flf(alpha.left_leg(), options);
  if (out.verdict == FlfVerdict::certified) {
    alpha.certificate = out.certificate;
  } else {
    alpha.certificate.reset();
  }
  return out;
}

Correspondence identity(const AffineScheme& x) {
  Assignment map;
  for (const auto& n : x.ring()->names()) map.emplace(n, Polynomial::variable(x.ring(), n));
  Correspondence c{x, x, x, std::move(map), std::nullopt};
  certify(c);
  return c;
}

Correspondence graph(const AffineScheme& x, const AffineScheme& y, Assignment map,
                     const GroebnerOptions& options) {
  Correspondence c = make_correspondence(x, y, x, std::move(map), options);
  certify(c, options);
  return c;
}

Correspondence compose(const Correspondence& alpha, const Correspondence& beta,
                       const GroebnerOptions& options) {
  if (!same_scheme(alpha.target, beta.source, options)) {
    throw Error("compose: target of the first span differs from source of the second");
  }
  const Ring& za = *alpha.middle.ring();
  const Ring& zb = *beta.middle.ring();
  std::set<std::string> taken(za.names().begin(), za.names().end());
  const auto fib = owners(zb, beta.fiber_names());
  const auto rename = fresh_names(zb, fib, taken);

  std::vector<std::string> names = za.names();
  std::vector<std::string> inverted = za.inverted_names();
  for (const auto& v : fib) {
    names.push_back(rename.at(v));
    if (zb.is_inverted(zb.require(v))) inverted.push_back(rename.at(v));
  }
  RingPtr ring = make_ring(za.field(), names, inverted);

  Assignment sigma;
  for (const auto& n : zb.names()) {
    auto r = rename.find(n);
    if (r != rename.end()) {
      sigma.emplace(n, Polynomial::variable(ring, r->second));
    } else {
      sigma.emplace(n, embed(alpha.target_map.at(n), ring));
    }
  }
  std::vector<Polynomial> rels;
  for (const auto& r : alpha.middle.relations()) rels.push_back(embed(r, ring));
  for (const auto& r : beta.middle.relations()) rels.push_back(substitute(r, sigma, ring));
  Assignment map;
  for (const auto& [w, img] : beta.target_map) map.emplace(w, substitute(img, sigma, ring));

  Correspondence out{alpha.source, beta.target, AffineScheme(ring, std::move(rels)), std::move(map),
                     std::nullopt};
  certify_if(out, alpha.certificate && beta.certificate, options);
  return out;
}

Correspondence zero(const AffineScheme& x, const AffineScheme& y) {
  std::vector<Polynomial> rels{Polynomial::constant(x.ring(), 1)};
  for (const auto& r : x.relations()) rels.push_back(r);
  AffineScheme empty(x.ring(), rels);
  Assignment map;
  for (const auto& n : y.ring()->names()) map.emplace(n, Polynomial(x.ring()));
  Correspondence c{x, y, empty, std::move(map), std::nullopt};
  certify(c);
  return c;
}

Correspondence add(const Correspondence& alpha, const Correspondence& beta, const GroebnerOptions& options) {
  if (!same_scheme(alpha.source, beta.source, options) ||
      !same_scheme(alpha.target, beta.target, options)) {
    throw Error("add: spans have different sources or targets");
  }
  if (beta.middle.is_empty(options)) return alpha;
  if (alpha.middle.is_empty(options)) return beta;

  const Ring& x = *alpha.source.ring();
  const Ring& za = *alpha.middle.ring();
  const Ring& zb = *beta.middle.ring();
  std::set<std::string> taken(x.names().begin(), x.names().end());
  const auto fa = alpha.fiber_names();
  const auto fb = beta.fiber_names();
  // Fiber inversion is replaced by explicit relations, so every fiber
  // variable (companions included) is renamed as a plain variable.
  const auto plain = [&](const std::vector<std::string>& fib, std::map<std::string, std::string>& m) {
    for (const auto& v : fib) {
      std::string chosen = v;
      for (int k = 2; taken.count(chosen); ++k) chosen = name_stem(v) + "_" + std::to_string(k);
      taken.insert(chosen);
      m[v] = chosen;
    }
  };
  std::map<std::string, std::string> ra, rb;
  plain(fa, ra);
  plain(fb, rb);
  std::string e = "e";
  for (int k = 2; taken.count(e); ++k) e = "e_" + std::to_string(k);

  std::vector<std::string> names = x.names();
  for (const auto& v : fa) names.push_back(ra.at(v));
  for (const auto& v : fb) names.push_back(rb.at(v));
  names.push_back(e);
  RingPtr ring = make_ring(x.field(), names, x.inverted_names());

  const Assignment sa = relabel(za, ring, ra);
  const Assignment sb = relabel(zb, ring, rb);
  const Polynomial one = Polynomial::constant(ring, 1);
  const Polynomial ev = Polynomial::variable(ring, e);
  const Polynomial not_e = one - ev;

  std::vector<Polynomial> rels{ev * ev - ev};
  for (const auto& g : alpha.middle.ideal().generators()) rels.push_back(ev * substitute(g, sa, ring));
  for (const auto& g : beta.middle.ideal().generators()) rels.push_back(not_e * substitute(g, sb, ring));
  for (const auto& v : fa) rels.push_back(not_e * Polynomial::variable(ring, ra.at(v)));
  for (const auto& v : fb) rels.push_back(ev * Polynomial::variable(ring, rb.at(v)));

  Assignment map;
  for (const auto& [y, img] : alpha.target_map) {
    map.emplace(y, ev * substitute(img, sa, ring) + not_e * substitute(beta.target_map.at(y), sb, ring));
  }
  Correspondence out{alpha.source, alpha.target, AffineScheme(ring, std::move(rels)), std::move(map),
                     std::nullopt};
  certify_if(out, alpha.certificate && beta.certificate, options);
  return out;
}

Correspondence external_tensor(const Correspondence& alpha, const Correspondence& beta,
                               const GroebnerOptions& options) {
  if (!(alpha.middle.field() == beta.middle.field())) {
    throw RingMismatch("tensor of spans over different fields");
  }
  AffineScheme source = product(alpha.source, beta.source);
  AffineScheme target = product(alpha.target, beta.target);
  const Ring& za = *alpha.middle.ring();
  const Ring& zb = *beta.middle.ring();
  const Ring& xs = *source.ring();
  std::set<std::string> taken(xs.names().begin(), xs.names().end());
  const auto fa = owners(za, alpha.fiber_names());
  const auto fb = owners(zb, beta.fiber_names());
  const auto ra = fresh_names(za, fa, taken);
  const auto rb = fresh_names(zb, fb, taken);

  std::vector<std::string> names = xs.names();
  std::vector<std::string> inverted = xs.inverted_names();
  auto append = [&](const Ring& z, const std::vector<std::string>& fib, const std::map<std::string, std::string>& r) {
    for (const auto& v : fib) {
      names.push_back(r.at(v));
      if (z.is_inverted(z.require(v))) inverted.push_back(r.at(v));
    }
  };
  append(za, fa, ra);
  append(zb, fb, rb);
  RingPtr ring = make_ring(xs.field(), names, inverted);

  const Assignment sa = relabel(za, ring, ra);
  const Assignment sb = relabel(zb, ring, rb);
  std::vector<Polynomial> rels;
  for (const auto& r : alpha.middle.relations()) rels.push_back(substitute(r, sa, ring));
  for (const auto& r : beta.middle.relations()) rels.push_back(substitute(r, sb, ring));
  Assignment map;
  for (const auto& [y, img] : alpha.target_map) map.emplace(y, substitute(img, sa, ring));
  for (const auto& [y, img] : beta.target_map) map.emplace(y, substitute(img, sb, ring));

  Correspondence out{std::move(source), std::move(target), AffineScheme(ring, std::move(rels)),
                     std::move(map), std::nullopt};
  certify_if(out, alpha.certificate && beta.certificate, options);
  return out;
}

Comparison compare(const Correspondence& alpha, const Correspondence& beta,
                   const std::map<std::string, std::string>& matching, const GroebnerOptions& options) {
  if (!same_scheme(alpha.source, beta.source, options) ||
      !same_scheme(alpha.target, beta.target, options)) {
    throw Error("equals: spans have different sources or targets");
  }
  const Ring& za = *alpha.middle.ring();
  const Ring& zb = *beta.middle.ring();
  if (za.size() != zb.size()) return Comparison::incomparable;
  const auto full = with_companions(zb, matching);
  std::set<std::string> seen;
  for (std::size_t i = 0; i < zb.size(); ++i) {
    auto it = full.find(zb.name(i));
    const std::string n = it == full.end() ? zb.name(i) : it->second;
    auto j = za.index_of(n);
    if (!j || !seen.insert(n).second) return Comparison::incomparable;
    if (za.is_companion(*j) != zb.is_companion(i) || za.is_inverted(*j) != zb.is_inverted(i)) {
      return Comparison::incomparable;
    }
  }
  const RingPtr& ring = alpha.middle.ring();
  const Assignment sb = relabel(zb, ring, full);
  std::vector<Polynomial> gens;
  for (const auto& g : beta.middle.ideal().generators()) gens.push_back(substitute(g, sb, ring));
  if (!ideals_equal(alpha.middle.ideal(), Ideal(ring, gens), options)) return Comparison::different;
  GroebnerBasis gb = buchberger(alpha.middle.ideal(), MonomialOrder::grevlex(), options);
  for (const auto& [y, img] : alpha.target_map) {
    if (!ideal_contains(gb, img - substitute(beta.target_map.at(y), sb, ring))) return Comparison::different;
  }
  return Comparison::equal;
}

std::optional<EqualityEvidence> equality_evidence(const Correspondence& alpha, const Correspondence& beta,
                                                  const std::map<std::string, std::string>& matching,
                                                  const GroebnerOptions& options) {
  if (compare(alpha, beta, matching, options) != Comparison::equal) return std::nullopt;
  const RingPtr& ring = alpha.middle.ring();
  const Assignment sb = relabel(*beta.middle.ring(), ring, with_companions(*beta.middle.ring(), matching));
  std::vector<Polynomial> gens;
  for (const auto& g : beta.middle.ideal().generators()) gens.push_back(substitute(g, sb, ring));
  GroebnerOptions tracked = options;
  tracked.track_cofactors = true;
  EqualityEvidence ev{certify_ideal(alpha.middle.ideal(), MonomialOrder::grevlex(), tracked),
                      certify_ideal(Ideal(ring, gens), MonomialOrder::grevlex(), tracked), {}};
  for (const auto& [y, img] : alpha.target_map) {
    ev.map_differences.push_back(img - substitute(beta.target_map.at(y), sb, ring));
  }
  return ev;
}

bool EqualityEvidence::verify(std::string* why) const {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  std::string inner;
  if (!lhs.verify(&inner)) return fail("lhs basis: " + inner);
  if (!rhs.verify(&inner)) return fail("rhs basis: " + inner);
  if (!lhs.ring->same_as(*rhs.ring) || lhs.basis.size() != rhs.basis.size()) return fail("bases differ");
  for (std::size_t i = 0; i < lhs.basis.size(); ++i) {
    if (!(lhs.basis[i] == rhs.basis[i])) return fail("bases differ");
  }
  const GroebnerBasis gb = lhs.as_basis();
  for (const auto& d : map_differences) {
    if (!normal_form(d, gb).is_zero()) return fail("target maps differ: " + d.to_string());
  }
  return true;
}

bool equals(const Correspondence& alpha, const Correspondence& beta,
            const std::map<std::string, std::string>& matching, const GroebnerOptions& options) {
  const Comparison c = compare(alpha, beta, matching, options);
  if (c == Comparison::incomparable) throw Error("incomparable presentations");
  return c == Comparison::equal;
}

std::size_t degree(const Correspondence& alpha) {
  if (!alpha.certificate) throw Error("degree: span is not certified");
  return alpha.certificate->rank;
}

}  // namespace flf
