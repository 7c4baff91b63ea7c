#include "flf/certificate.hpp"

#include <algorithm>

namespace flf {

namespace {

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

bool is_zero_monomial(const Monomial& m) {
  return std::all_of(m.begin(), m.end(), [](std::int32_t e) { return e == 0; });
}

/// Splits a normal form by fiber monomial into base coefficients.
std::map<Monomial, Polynomial> split_by_fiber(const Polynomial& p, const std::vector<bool>& fiber,
                                              const RingPtr& base_ring) {
  std::map<Monomial, std::vector<Term>> groups;
  for (const auto& t : p.terms()) {
    groups[fiber_part(t.exponents, fiber)].push_back(Term{base_part(t.exponents, fiber), t.coeff});
  }
  std::map<Monomial, Polynomial> out;
  for (auto& [fm, terms] : groups) {
    out.emplace(fm, embed(Polynomial::from_terms(p.ring(), std::move(terms)), base_ring));
  }
  return out;
}

std::optional<std::size_t> staircase_index(const std::vector<Polynomial>& basis, const Monomial& m) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].terms().front().exponents == m) return i;
  }
  return std::nullopt;
}

RingPtr base_ring_of(const FlfCertificate& c) { return c.base.ring; }

}  // namespace

std::string to_string(FlfVerdict v) {
  switch (v) {
    case FlfVerdict::certified:
      return "certified";
    case FlfVerdict::not_finite:
      return "not-finite";
    case FlfVerdict::not_flat:
      return "not-flat";
    case FlfVerdict::inconclusive:
      return "inconclusive";
  }
  return "";
}

IdealCertificate IdealCertificate::from(const GroebnerBasis& gb) {
  if (!gb.has_cofactors()) throw Error("certificate needs a basis computed with cofactors");
  return IdealCertificate{gb.ring(), gb.order(), gb.generators(), gb.basis(), gb.cofactors()};
}

GroebnerBasis IdealCertificate::as_basis() const {
  return GroebnerBasis::from_claimed(ring, order, generators, basis, cofactors);
}

bool IdealCertificate::verify(std::string* why, std::size_t budget) const {
  if (basis.empty() && !generators.empty()) return fail(why, "empty basis for a nonzero ideal");
  if (cofactors.size() != basis.size()) return fail(why, "cofactor count mismatch");
  const GroebnerBasis gb = as_basis();
  if (!is_reduced(gb)) return fail(why, "claimed basis is not reduced");
  if (!satisfies_buchberger_criterion(gb, budget)) return fail(why, "an S-polynomial does not reduce to zero");
  for (const auto& g : generators) {
    if (!normal_form(g, gb, budget).is_zero()) {
      return fail(why, "generator " + g.to_string() + " does not reduce to zero");
    }
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (cofactors[i].size() != generators.size()) return fail(why, "cofactor row has wrong length");
    Polynomial sum(ring);
    for (std::size_t j = 0; j < generators.size(); ++j) sum = sum + cofactors[i][j] * generators[j];
    if (!(sum == basis[i])) return fail(why, "cofactors do not reproduce basis element " + std::to_string(i));
  }
  return true;
}

IdealCertificate certify_ideal(const Ideal& ideal, const MonomialOrder& order,
                               const GroebnerOptions& options) {
  GroebnerOptions tracked = options;
  tracked.track_cofactors = true;
  return IdealCertificate::from(buchberger(ideal, order, tracked));
}

bool FlfCertificate::verify(std::string* why) const {
  std::string inner;
  if (!algebra.verify(&inner)) return fail(why, "algebra basis: " + inner);
  if (!base.verify(&inner)) return fail(why, "base basis: " + inner);
  if (algebra.order.kind() != MonomialOrder::Kind::block) return fail(why, "algebra order is not a block order");
  const Ring& ring = *algebra.ring;
  const auto& fiber = algebra.order.first_block();
  for (std::size_t v = 0; v < ring.size(); ++v) {
    const bool listed = std::find(fiber_variables.begin(), fiber_variables.end(), ring.name(v)) !=
                        fiber_variables.end();
    if (listed != fiber[v]) return fail(why, "block order disagrees with fiber variables");
  }
  const GroebnerBasis gb = algebra.as_basis();
  const GroebnerBasis bgb = base.as_basis();
  if (basis.size() != rank) return fail(why, "rank differs from basis size");
  if (gb.is_unit()) {
    if (rank != 0) return fail(why, "empty algebra must have rank 0");
    return true;
  }
  // Leading monomials must be pure fiber or pure base; contraction = base ideal.
  std::vector<Monomial> fiber_leads;
  for (std::size_t i = 0; i < gb.size(); ++i) {
    const Monomial& lm = gb.leading_monomial(i);
    const bool no_fiber = is_zero_monomial(fiber_part(lm, fiber));
    const bool no_base = is_zero_monomial(base_part(lm, fiber));
    if (no_fiber) {
      if (!ideal_contains(bgb, embed(gb.basis()[i], base.ring))) {
        return fail(why, "contraction element outside the base ideal");
      }
    } else if (no_base) {
      fiber_leads.push_back(lm);
    } else {
      return fail(why, "mixed leading monomial");
    }
  }
  // Staircase: claimed monomials are exactly the fiber monomials outside the
  // leading ideal. Check each claimed one is standard, and that every
  // variable-multiple of a standard monomial is standard or a leading multiple.
  for (const auto& e : basis) {
    if (e.size() != 1 || e.terms()[0].coeff != 1) return fail(why, "basis entry is not a monomial");
    const Monomial& m = e.terms()[0].exponents;
    if (!is_zero_monomial(base_part(m, fiber))) return fail(why, "basis monomial has base support");
    for (const auto& lead : fiber_leads) {
      bool div = true;
      for (std::size_t k = 0; k < m.size(); ++k) div = div && lead[k] <= m[k];
      if (div) return fail(why, "basis monomial lies in the leading ideal");
    }
  }
  if (basis.empty() || !basis.front().is_constant()) return fail(why, "first basis element must be 1");
  for (const auto& e : basis) {
    const Monomial& m = e.terms()[0].exponents;
    for (std::size_t v = 0; v < ring.size(); ++v) {
      if (!fiber[v]) continue;
      Monomial up = m;
      ++up[v];
      if (staircase_index(basis, up)) continue;
      bool covered = false;
      for (const auto& lead : fiber_leads) {
        bool div = true;
        for (std::size_t k = 0; k < up.size(); ++k) div = div && lead[k] <= up[k];
        covered = covered || div;
      }
      if (!covered) return fail(why, "staircase is not closed under division");
    }
  }
  // Multiplication matrices.
  const RingPtr& bring = base_ring_of(*this);
  for (const auto& name : fiber_variables) {
    auto it = multiplication.find(name);
    if (it == multiplication.end()) return fail(why, "missing multiplication matrix for " + name);
    const PolyMatrix& mat = it->second;
    if (mat.size() != rank) return fail(why, "matrix has wrong size");
    const Polynomial x = Polynomial::variable(algebra.ring, name);
    for (std::size_t i = 0; i < rank; ++i) {
      const auto parts = split_by_fiber(normal_form(x * basis[i], gb), fiber, bring);
      if (mat[i].size() != rank) return fail(why, "matrix row has wrong size");
      for (std::size_t j = 0; j < rank; ++j) {
        auto pj = parts.find(basis[j].terms()[0].exponents);
        const Polynomial expected = pj == parts.end() ? Polynomial(bring) : pj->second;
        if (!(mat[i][j] == expected)) return fail(why, "matrix entry disagrees with reduction");
      }
      for (const auto& [fm, coeff] : parts) {
        if (!staircase_index(basis, fm)) return fail(why, "reduction leaves the staircase");
      }
    }
  }
  if (rank > 0 && !fitting_below.empty()) return fail(why, "Fitt_{rank-1} must be zero");
  if (fitting_at.size() != 1 || !fitting_at[0].is_constant() || fitting_at[0].is_zero()) {
    return fail(why, "Fitt_rank must be the unit ideal");
  }
  return true;
}

PolyMatrix multiplication_matrix(const FlfCertificate& certificate, const Polynomial& f) {
  const RingPtr& ring = certificate.algebra.ring;
  const GroebnerBasis gb = certificate.algebra.as_basis();
  const auto& fiber = certificate.algebra.order.first_block();
  const Polynomial g = laurent_encode(embed(f, ring));
  const std::size_t d = certificate.rank;
  PolyMatrix mat(d, std::vector<Polynomial>(d, Polynomial(certificate.base.ring)));
  for (std::size_t i = 0; i < d; ++i) {
    for (const auto& [fm, coeff] : split_by_fiber(normal_form(g * certificate.basis[i], gb), fiber, certificate.base.ring)) {
      auto j = staircase_index(certificate.basis, fm);
      if (!j) throw Error("internal: reduction left the staircase");
      mat[i][*j] = coeff;
    }
  }
  return mat;
}

namespace {

FlfOutcome certify_once(const PresentedAlgebra& algebra, const GroebnerOptions& options) {
  FlfOutcome out;
  try {
    const FiberAnalysis a = analyze_fibers(algebra, options);
    const RingPtr& ring = algebra.total.ring();
    const RingPtr& bring = algebra.base.ring();
    if (!a.torsion.empty() && !a.empty) {
      out.verdict = FlfVerdict::not_flat;
      out.fitting_zero = a.torsion;
      out.detail = "torsion: nonzero base element " + a.torsion.front().to_string() +
                   " vanishes on the algebra";
      out.evidence = IdealCertificate::from(a.gb);
      out.base_evidence = IdealCertificate::from(a.base_gb);
      return out;
    }
    if (a.infinite_direction) {
      out.verdict = FlfVerdict::not_finite;
      out.witness_variable = a.infinite_direction;
      out.detail = "not finite over base: no monic relation in '" + *a.infinite_direction + "'";
      out.evidence = IdealCertificate::from(a.gb);
      return out;
    }
    if (!a.mixed.empty()) {
      out.verdict = FlfVerdict::inconclusive;
      out.mixed_leading_term = true;
      out.detail = "inconclusive: leading coefficient of " + a.mixed.front().to_string() +
                   " involves base variables";
      return out;
    }
    FlfCertificate cert;
    cert.fiber_variables = algebra.fiber_names();
    cert.algebra = IdealCertificate::from(a.gb);
    cert.base = IdealCertificate::from(a.base_gb);
    if (!a.empty) {
      for (const auto& s : a.staircase) cert.basis.push_back(Polynomial::monomial(ring, s, 1));
    }
    cert.rank = cert.basis.size();
    for (const auto& name : cert.fiber_variables) {
      PolyMatrix mat(cert.rank, std::vector<Polynomial>(cert.rank, Polynomial(bring)));
      const Polynomial x = Polynomial::variable(ring, name);
      for (std::size_t i = 0; i < cert.rank; ++i) {
        const auto parts = split_by_fiber(normal_form(x * cert.basis[i], a.gb), a.fiber, bring);
        for (const auto& [fm, coeff] : parts) {
          auto j = staircase_index(cert.basis, fm);
          if (!j) throw Error("internal: reduction left the staircase");
          mat[i][*j] = coeff;
        }
      }
      cert.multiplication.emplace(name, std::move(mat));
    }
    ModulePresentation free_module{algebra.base, cert.basis, {}};
    cert.fitting_at = fitting_ideal(free_module, cert.rank);
    if (cert.rank > 0) cert.fitting_below = fitting_ideal(free_module, cert.rank - 1);
    out.verdict = FlfVerdict::certified;
    out.detail = "finite free of rank " + std::to_string(cert.rank);
    out.certificate = std::move(cert);
  } catch (const BudgetExhausted& e) {
    out.verdict = FlfVerdict::inconclusive;
    out.detail = std::string("inconclusive: ") + e.what();
  } catch (const Inconclusive& e) {
    out.verdict = FlfVerdict::inconclusive;
    out.detail = e.what();
  }
  return out;
}

/// Same algebra with the ring variables listed in `names` order.
PresentedAlgebra reordered(const PresentedAlgebra& algebra, const std::vector<std::string>& names) {
  const Ring& r = *algebra.total.ring();
  RingPtr ring = make_ring(r.field(), names, r.inverted_names());
  std::vector<Polynomial> rels;
  for (const auto& p : algebra.total.relations()) rels.push_back(embed(p, ring));
  return PresentedAlgebra{AffineScheme(ring, std::move(rels)), algebra.base};
}

}  // namespace

FlfOutcome certify_flf(const PresentedAlgebra& algebra, const GroebnerOptions& options) {
  FlfOutcome out = certify_once(algebra, options);
  if (!out.mixed_leading_term) return out;
  // Mixed leading terms depend on how fiber variables are ordered; any
  // block order is sound, so try companions first, then the reverse order.
  const Ring& r = *algebra.total.ring();
  const auto fiber = algebra.fiber_mask();
  std::vector<std::string> companions, owners, base;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!fiber[i]) {
      base.push_back(r.name(i));
    } else if (r.is_companion(i)) {
      companions.push_back(r.name(i));
    } else {
      owners.push_back(r.name(i));
    }
  }
  std::vector<std::vector<std::string>> layouts;
  std::vector<std::string> first = companions;
  first.insert(first.end(), owners.begin(), owners.end());
  layouts.push_back(first);
  std::vector<std::string> reversed(r.names().begin(), r.names().end());
  reversed.erase(std::remove_if(reversed.begin(), reversed.end(),
                                [&](const std::string& n) { return !fiber[r.require(n)]; }),
                 reversed.end());
  std::reverse(reversed.begin(), reversed.end());
  layouts.push_back(reversed);
  for (auto layout : layouts) {
    layout.insert(layout.end(), base.begin(), base.end());
    if (layout == r.names()) continue;
    FlfOutcome retry = certify_once(reordered(algebra, layout), options);
    if (retry.verdict != FlfVerdict::inconclusive) return retry;
  }
  return out;
}

bool verify_negative(const FlfOutcome& outcome, const std::vector<std::string>& fiber_variables,
                     std::string* why) {
  if (!outcome.evidence) return fail(why, "no evidence attached");
  std::string inner;
  if (!outcome.evidence->verify(&inner)) return fail(why, inner);
  const GroebnerBasis gb = outcome.evidence->as_basis();
  const Ring& ring = *gb.ring();
  std::vector<bool> fiber(ring.size(), false);
  for (const auto& n : fiber_variables) fiber[ring.require(n)] = true;
  if (gb.order() != MonomialOrder::block(fiber)) return fail(why, "evidence order is not the fiber block order");
  if (gb.is_unit()) return fail(why, "algebra is empty");
  if (outcome.verdict == FlfVerdict::not_finite) {
    const std::size_t v = ring.require(*outcome.witness_variable);
    for (std::size_t i = 0; i < gb.size(); ++i) {
      const Monomial& lm = gb.leading_monomial(i);
      bool pure = lm[v] > 0;
      for (std::size_t w = 0; w < lm.size(); ++w) pure = pure && (w == v || lm[w] == 0);
      if (pure) return fail(why, "witness variable has a monic relation");
    }
    return true;
  }
  if (outcome.verdict == FlfVerdict::not_flat) {
    if (!outcome.base_evidence || !outcome.base_evidence->verify(&inner)) {
      return fail(why, "base evidence invalid");
    }
    const GroebnerBasis bgb = outcome.base_evidence->as_basis();
    for (const auto& c : outcome.fitting_zero) {
      const Polynomial in_algebra = embed(c, gb.ring());
      for (std::size_t v = 0; v < ring.size(); ++v) {
        if (fiber[v] && in_algebra.involves(v)) return fail(why, "witness involves fiber variables");
      }
      if (!ideal_contains(gb, in_algebra)) return fail(why, "witness does not vanish on the algebra");
      if (ideal_contains(bgb, c)) return fail(why, "witness is zero in the base");
    }
    return !outcome.fitting_zero.empty() || fail(why, "no witness");
  }
  return fail(why, "not a negative verdict");
}

}  // namespace flf
