#include "flf/cancellation.hpp"

#include <algorithm>

namespace flf {

namespace {

RingPtr without(const Ring& ring, const std::vector<std::string>& drop) {
  std::vector<std::string> names;
  std::vector<std::string> inverted;
  auto dropped = [&](const std::string& n) { return std::find(drop.begin(), drop.end(), n) != drop.end(); };
  for (const auto& n : ring.names()) {
    if (!dropped(n)) names.push_back(n);
  }
  for (const auto& n : ring.inverted_names()) {
    if (!dropped(n)) inverted.push_back(n);
  }
  return make_ring(ring.field(), names, inverted);
}

RingPtr with_extra(const Ring& ring, const std::string& name) {
  std::vector<std::string> names = ring.names();
  names.push_back(name);
  return make_ring(ring.field(), names, ring.inverted_names());
}

std::string fresh_parameter(const Ring& ring, const std::string& stem) { return fresh_name(ring, stem); }

/// The pair (Z x A^1_s over X x Gm x A^1_s).
PresentedAlgebra with_parameter(const PresentedAlgebra& a, const std::string& s) {
  RingPtr total = with_extra(*a.total.ring(), s);
  RingPtr base = with_extra(*a.base.ring(), s);
  std::vector<Polynomial> tr, br;
  for (const auto& r : a.total.relations()) tr.push_back(embed(r, total));
  for (const auto& r : a.base.relations()) br.push_back(embed(r, base));
  return PresentedAlgebra{AffineScheme(total, tr), AffineScheme(base, br)};
}

FlatnessBound bound_from(const PresentedAlgebra& z, const std::string& t, const std::vector<Polynomial>& fs,
                         const GroebnerOptions& options) {
  const Ring& base = *z.base.ring();
  auto ti = base.index_of(t);
  if (!ti || !base.is_inverted(*ti)) {
    throw Error("flatness bound: '" + t + "' is not an inverted coordinate of the base");
  }
  FlfOutcome c = certify_flf(z, options);
  if (c.verdict != FlfVerdict::certified) {
    throw Error("flatness bound: Z is not certified finite free over X x Gm (" + c.detail + ")");
  }
  FlatnessBound b;
  b.t = t;
  b.certificate = *c.certificate;
  for (const auto& f : fs) b.matrices.push_back(multiplication_matrix(b.certificate, f));
  const std::size_t d = b.certificate.rank;
  b.valuations.assign(d, std::vector<std::optional<long>>(d));
  long least = 0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (const auto& m : b.matrices) {
        auto v = laurent_valuation(m[i][j], *ti);
        if (!v) continue;
        if (!b.valuations[i][j] || *v < *b.valuations[i][j]) b.valuations[i][j] = v;
        least = std::min(least, *v);
      }
    }
  }
  b.N = -least;
  return b;
}

Correspondence rho_construct(const GmSpan& alpha, int m, int n, Sign sign, std::string* s_name) {
  const Correspondence& a = alpha.span;
  AffineScheme x = drop_gm(a.source, alpha.source_gm);
  AffineScheme y = drop_gm(a.target, alpha.target_gm);
  const Ring& z = *a.middle.ring();
  const std::string s = fresh_parameter(z, "s");
  RingPtr ring = with_extra(z, s);
  const Polynomial t1 = Polynomial::variable(ring, alpha.source_gm);
  const Polynomial t2 = embed(a.target_map.at(alpha.target_gm), ring);
  std::vector<Polynomial> rels;
  for (const auto& r : a.middle.relations()) rels.push_back(embed(r, ring));
  rels.push_back(h_value(m, n, sign, Polynomial::variable(ring, s), t1, t2));
  Assignment map;
  for (const auto& v : y.ring()->names()) map.emplace(v, embed(a.target_map.at(v), ring));
  if (s_name) *s_name = s;
  return Correspondence{product(x, affine_line(z.field(), s)), y, AffineScheme(ring, std::move(rels)),
                        std::move(map), std::nullopt};
}

Correspondence rho_slice_construct(const GmSpan& alpha, int n, Sign sign) {
  const Correspondence& a = alpha.span;
  AffineScheme x = drop_gm(a.source, alpha.source_gm);
  AffineScheme y = drop_gm(a.target, alpha.target_gm);
  const RingPtr& ring = a.middle.ring();
  std::vector<Polynomial> rels = a.middle.relations();
  rels.push_back(g_value(n, sign, Polynomial::variable(ring, alpha.source_gm), a.target_map.at(alpha.target_gm)));
  Assignment map;
  for (const auto& v : y.ring()->names()) map.emplace(v, a.target_map.at(v));
  return Correspondence{x, y, AffineScheme(ring, std::move(rels)), std::move(map), std::nullopt};
}

void require_certified(const GmSpan& alpha) {
  if (!alpha.span.certificate) throw Error("rho: span is not certified finite locally free");
}

}  // namespace

std::string to_string(Sign s) { return s == Sign::plus ? "+" : "-"; }

std::string to_string(SliceVerdict v) {
  switch (v) {
    case SliceVerdict::flat_by_certificate:
      return "flat-by-certificate";
    case SliceVerdict::certified_flf:
      return "certified-flf";
    case SliceVerdict::not_flat:
      return "not-flat";
    case SliceVerdict::inconclusive:
      return "inconclusive";
  }
  return "";
}

Polynomial g_value(int n, Sign sign, const Polynomial& t1, const Polynomial& t2) {
  if (n < 1) throw Error("g: n must be positive");
  const Polynomial tail = sign == Sign::plus ? Polynomial::constant(t1.ring(), 1) : t2;
  return t1.pow(static_cast<unsigned>(n)) + tail;
}

Polynomial h_value(int m, int n, Sign sign, const Polynomial& s, const Polynomial& t1, const Polynomial& t2) {
  const Polynomial one = Polynomial::constant(s.ring(), 1);
  return s * g_value(n, sign, t1, t2) + (one - s) * g_value(m, sign, t1, t2);
}

GPoly g_poly(int n, Sign sign, const CoefficientField& field) {
  auto ring = make_ring(field, {"t1", "t2"}, {"t1", "t2"});
  return GPoly{n, sign, g_value(n, sign, Polynomial::variable(ring, "t1"), Polynomial::variable(ring, "t2"))};
}

HPoly h_poly(int m, int n, Sign sign, const CoefficientField& field) {
  if (m < 1 || n < 1) throw Error("h: m and n must be positive");
  auto ring = make_ring(field, {"s", "t1", "t2"}, {"t1", "t2"});
  return HPoly{m, n, sign,
               h_value(m, n, sign, Polynomial::variable(ring, "s"), Polynomial::variable(ring, "t1"),
                       Polynomial::variable(ring, "t2"))};
}

bool FlatnessBound::criterion_holds(long n) const {
  for (const auto& row : valuations) {
    for (const auto& v : row) {
      if (v && n + *v < 1) return false;
    }
  }
  return true;
}

FlatnessBound flatness_bound(const PresentedAlgebra& z, const std::string& t, const Polynomial& f,
                             const GroebnerOptions& options) {
  return bound_from(z, t, {f}, options);
}

FlatnessBound flatness_bound_ext(const PresentedAlgebra& z, const std::string& t, const Polynomial& f1,
                                 const Polynomial& f2, const GroebnerOptions& options) {
  return bound_from(z, t, {f1, f2}, options);
}

Polynomial shifted_sum(const Polynomial& f1, const Polynomial& f2, const std::string& t, int a, int b) {
  if (a < 0 || b < 0) throw Error("shift exponents must be nonnegative");
  const Polynomial tv = Polynomial::variable(f1.ring(), t);
  return f1 * tv.pow(static_cast<unsigned>(a)) + f2 * tv.pow(static_cast<unsigned>(b));
}

AffineScheme drop_gm(const AffineScheme& x_gm, const std::string& t) {
  const Ring& r = *x_gm.ring();
  auto ti = r.index_of(t);
  if (!ti || !r.is_inverted(*ti)) throw Error("'" + t + "' is not an inverted coordinate");
  RingPtr ring = without(r, {t, r.name(*r.companion(*ti))});
  std::vector<Polynomial> rels;
  for (const auto& p : x_gm.relations()) rels.push_back(embed(p, ring));
  return AffineScheme(ring, std::move(rels));
}

SliceResult z_slice(const PresentedAlgebra& z, const std::string& t, const Polynomial& f, int n,
                    const GroebnerOptions& options) {
  if (n < 1) throw Error("slice index must be positive");
  const FlatnessBound b = flatness_bound(z, t, f, options);
  const RingPtr& ring = z.total.ring();
  const Polynomial one = Polynomial::constant(ring, 1);
  std::vector<Polynomial> rels = z.total.relations();
  rels.push_back(one - Polynomial::variable(ring, t).pow(static_cast<unsigned>(n)) * laurent_encode(embed(f, ring)));
  SliceResult r{PresentedAlgebra{AffineScheme(ring, std::move(rels)), drop_gm(z.base, t)},
                SliceVerdict::inconclusive, {}, b.N, ""};
  r.outcome = certify_flf(r.slice, options);
  const bool criterion = b.criterion_holds(n);
  switch (r.outcome.verdict) {
    case FlfVerdict::certified:
      r.verdict = SliceVerdict::certified_flf;
      r.detail = r.outcome.detail;
      break;
    case FlfVerdict::not_flat:
      if (criterion) throw Error("internal inconsistency: torsion found above the flatness bound");
      r.verdict = SliceVerdict::not_flat;
      r.detail = r.outcome.detail;
      break;
    default:
      r.verdict = criterion ? SliceVerdict::flat_by_certificate : SliceVerdict::inconclusive;
      r.detail = criterion ? "n = " + std::to_string(n) + " > N = " + std::to_string(b.N)
                           : "n <= N and " + r.outcome.detail;
  }
  return r;
}

GmSpan projector_span(const CoefficientField& field) {
  AffineScheme g = multiplicative_group(field, "t");
  Correspondence c = make_correspondence(g, g, g, {{"t", Polynomial::constant(g.ring(), 1)}});
  certify(c);
  return GmSpan{c, "t", "t"};
}

GmSpan identity_gm(const CoefficientField& field) {
  return GmSpan{identity(multiplicative_group(field, "t")), "t", "t"};
}

RhoResult rho(const GmSpan& alpha, int m, int n, Sign sign, const GroebnerOptions& options) {
  require_certified(alpha);
  std::string s;
  Correspondence span = rho_construct(alpha, m, n, sign, &s);
  RhoResult r{std::move(span), s, {}};
  r.outcome = certify(r.span, options);
  return r;
}

Correspondence rho_slice(const GmSpan& alpha, int n, Sign sign, const GroebnerOptions& options) {
  require_certified(alpha);
  Correspondence c = rho_slice_construct(alpha, n, sign);
  certify(c, options);
  return c;
}

VirtualCorrespondence rho_difference(const GmSpan& alpha, int n, const GroebnerOptions& options) {
  return VirtualCorrespondence{rho_slice(alpha, n, Sign::plus, options), rho_slice(alpha, n, Sign::minus, options)};
}

Correspondence specialize(const Correspondence& over_line, const std::string& s, long value) {
  RingPtr middle = without(*over_line.middle.ring(), {s});
  RingPtr source = without(*over_line.source.ring(), {s});
  const Assignment at_m{{s, Polynomial::constant(middle, value)}};
  const Assignment at_s{{s, Polynomial::constant(source, value)}};
  std::vector<Polynomial> rels, src;
  for (const auto& r : over_line.middle.relations()) rels.push_back(substitute(r, at_m, middle));
  for (const auto& r : over_line.source.relations()) src.push_back(substitute(r, at_s, source));
  Assignment map;
  for (const auto& [y, img] : over_line.target_map) map.emplace(y, substitute(img, at_m, middle));
  return Correspondence{AffineScheme(source, std::move(src)), over_line.target, AffineScheme(middle, std::move(rels)),
                        std::move(map), std::nullopt};
}

FiltrationWitness filtration_index(const GmSpan& alpha, int window, const GroebnerOptions& options) {
  require_certified(alpha);
  if (window < 1) throw Error("window must be positive");
  FiltrationWitness w;
  w.window = window;
  auto eval = [&](int m, int n, Sign sign) {
    RhoResult r = rho(alpha, m, n, sign, options);
    WindowEntry e{m, n, sign, r.outcome.verdict, std::nullopt, r.outcome.detail, r.outcome.certificate};
    if (r.outcome.certificate) e.rank = r.outcome.certificate->rank;
    return e;
  };
  for (int i = window; i >= 1 && !w.blocking; --i) {
    std::vector<std::pair<int, int>> pairs{{i, i}};
    for (int k = i + 1; k <= window; ++k) {
      pairs.emplace_back(i, k);
      pairs.emplace_back(k, i);
    }
    for (const auto& [m, n] : pairs) {
      for (Sign sign : {Sign::plus, Sign::minus}) {
        WindowEntry e = eval(m, n, sign);
        w.checked.push_back(e);
        if (e.verdict != FlfVerdict::certified && !w.blocking) w.blocking = e;
      }
    }
    if (!w.blocking) w.i = i;
  }
  // Two-term bound behind flatness of the slices for large m, n.
  try {
    const Correspondence& a = alpha.span;
    const std::string s = fresh_parameter(*a.middle.ring(), "s");
    const PresentedAlgebra za = with_parameter(a.left_leg(), s);
    const RingPtr& ring = za.total.ring();
    const Polynomial sv = Polynomial::variable(ring, s);
    const Polynomial one = Polynomial::constant(ring, 1);
    const Polynomial f1 = -sv;
    const Polynomial f2 = sv - one;
    w.bound_plus = flatness_bound_ext(za, alpha.source_gm, f1, f2, options);
    const std::string inv = Ring::companion_name(alpha.target_gm);
    const Polynomial t2_inv = embed(a.target_map.at(inv), ring);
    w.bound_minus = flatness_bound_ext(za, alpha.source_gm, f1 * t2_inv, f2 * t2_inv, options);
  } catch (const Error&) {
  }
  return w;
}

CompatReport verify_compat(const GmSpan& alpha, const Correspondence& beta, const Correspondence& gamma,
                           int m, int n, Sign sign, const GroebnerOptions& options) {
  CompatReport rep;
  const CoefficientField& k = alpha.span.middle.field();
  std::string s;
  const Correspondence base_rho = rho_construct(alpha, m, n, sign, &s);

  // gamma acting on the target.
  const Correspondence gamma_gm = external_tensor(gamma, identity(multiplicative_group(k, alpha.target_gm)), options);
  const GmSpan pushed{compose(alpha.span, gamma_gm, options), alpha.source_gm, alpha.target_gm};
  const Correspondence lhs1 = rho_construct(pushed, m, n, sign, nullptr);
  const Correspondence rhs1 = compose(base_rho, gamma, options);
  const Comparison c1 = compare(lhs1, rhs1, {}, options);
  rep.pushforward = c1 == Comparison::equal;
  if (rep.pushforward) rep.evidence.push_back(*equality_evidence(lhs1, rhs1, {}, options));

  // beta acting on the source.
  const Correspondence beta_gm = external_tensor(beta, identity(multiplicative_group(k, alpha.source_gm)), options);
  const GmSpan pulled{compose(beta_gm, alpha.span, options), alpha.source_gm, alpha.target_gm};
  const Correspondence lhs2 = rho_construct(pulled, m, n, sign, nullptr);
  const Correspondence rhs2 = compose(external_tensor(beta, identity(affine_line(k, s)), options), base_rho, options);
  const Comparison c2 = compare(lhs2, rhs2, {}, options);
  rep.pullback = c2 == Comparison::equal;
  if (rep.pullback) rep.evidence.push_back(*equality_evidence(lhs2, rhs2, {}, options));

  auto word = [](Comparison c) {
    return c == Comparison::equal ? "equal" : c == Comparison::different ? "different" : "incomparable";
  };
  rep.detail = std::string("pushforward ") + word(c1) + ", pullback " + word(c2);
  return rep;
}

bool LemmaReport::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const SubCheck& c) { return c.passed; });
}

LemmaReport verify_cancel_final(int n, const CoefficientField& field, const GroebnerOptions& options) {
  if (n < 1) throw Error("n must be positive");
  LemmaReport rep;
  rep.n = n;
  rep.field = field.name();
  const std::string nn = std::to_string(n);
  auto grevlex_cert = [&](const Ideal& i) { return certify_ideal(i, MonomialOrder::grevlex(), options); };

  // (a) rho_n^+(p) = rho_n^-(p).
  {
    SubCheck c{"rho_plus_p_equals_rho_minus_p", false, "", {}, {}};
    const GmSpan p = projector_span(field);
    const Correspondence plus = rho_slice(p, n, Sign::plus, options);
    const Correspondence minus = rho_slice(p, n, Sign::minus, options);
    c.passed = compare(plus, minus, {}, options) == Comparison::equal;
    c.ideals.push_back(grevlex_cert(plus.middle.ideal()));
    c.ideals.push_back(grevlex_cert(minus.middle.ideal()));
    if (plus.certificate) c.flf.push_back(*plus.certificate);
    c.detail = c.passed ? "identical middle ideals" : "middle ideals differ";
    rep.checks.push_back(std::move(c));
  }

  // (b) H = Z(t^n + t s + 1 - s) over A^1_s is finite free of rank n.
  auto hring = make_ring(field, {"t", "s"});
  const Polynomial t = Polynomial::variable(hring, "t");
  const Polynomial sv = Polynomial::variable(hring, "s");
  const Polynomial one = Polynomial::constant(hring, 1);
  const Polynomial h = t.pow(static_cast<unsigned>(n)) + t * sv + one - sv;
  {
    SubCheck c{"homotopy_finite_free", false, "", {}, {}};
    const PresentedAlgebra H{AffineScheme(hring, {h}), affine_line(field, "s")};
    const FlfOutcome out = certify_flf(H, options);
    if (out.verdict == FlfVerdict::certified) {
      c.passed = out.certificate->rank == static_cast<std::size_t>(n);
      c.flf.push_back(*out.certificate);
      c.detail = "free of rank " + std::to_string(out.certificate->rank) + " over A^1_s";
    } else {
      c.detail = to_string(out.verdict) + ": " + out.detail;
      if (out.evidence) c.ideals.push_back(*out.evidence);
    }
    rep.checks.push_back(std::move(c));
  }

  auto tring = make_ring(field, {"t"});
  const Polynomial tt = Polynomial::variable(tring, "t");
  const Polynomial tone = Polynomial::constant(tring, 1);
  const Polynomial tn = tt.pow(static_cast<unsigned>(n));
  auto at_s = [&](long v) {
    return substitute(h, {{"s", Polynomial::constant(tring, v)}}, tring);
  };
  auto rank_over_point = [&](const Ideal& ideal, std::vector<std::string> inverted) -> std::optional<std::size_t> {
    auto r = make_ring(field, {"t"}, inverted);
    std::vector<Polynomial> rels;
    for (const auto& g : ideal.generators()) rels.push_back(embed(g, r));
    const FlfOutcome out = certify_flf(PresentedAlgebra{AffineScheme(r, rels), point(field)}, options);
    if (out.verdict != FlfVerdict::certified) return std::nullopt;
    return out.certificate->rank;
  };
  const GmSpan id = identity_gm(field);

  // (c) s = 0 slice is Z(t^n + 1) on A^1, rank n.
  {
    SubCheck c{"slice_s0_is_z_plus", false, "", {}, {}};
    const Ideal slice(tring, {at_s(0)});
    const Ideal expected(tring, {tn + tone});
    const bool same = ideals_equal(slice, expected, options);
    const auto r = rank_over_point(slice, {});
    const Correspondence zplus = rho_slice(id, n, Sign::plus, options);
    const bool zplus_rank = zplus.certificate && zplus.certificate->rank == static_cast<std::size_t>(n);
    c.passed = same && r == static_cast<std::size_t>(n) && zplus_rank;
    c.ideals.push_back(grevlex_cert(slice));
    if (zplus.certificate) c.flf.push_back(*zplus.certificate);
    c.detail = "ideal (t^" + nn + " + 1) " + (same ? "matches" : "differs") + ", rank " +
               (r ? std::to_string(*r) : std::string("uncertified"));
    rep.checks.push_back(std::move(c));
  }

  // (d) s = 1 slice splits as Z^- (saturation at t) plus the point {0}.
  {
    SubCheck c{"slice_s1_is_z_minus_plus_point", false, "", {}, {}};
    const Ideal slice(tring, {at_s(1)});
    const Ideal expected(tring, {tn + tt});
    const bool same = ideals_equal(slice, expected, options);
    const Ideal zminus = saturate(slice, tt, options);
    const Ideal origin(tring, {tt});
    const bool disjoint = is_unit_ideal(zminus.plus(origin), options);
    const bool decomposes = ideals_equal(intersect(zminus, origin, options), slice, options);
    // The saturation agrees with Z(t^n + t) read on Gm.
    auto gring = make_ring(field, {"t"}, {"t"});
    const Polynomial gt = Polynomial::variable(gring, "t");
    const Ideal on_gm = eliminate(Ideal(gring, {gt.pow(static_cast<unsigned>(n)) + gt,
                                                gt * Polynomial::variable(gring, "t_inv") - Polynomial::constant(gring, 1)}),
                                  {"t_inv"}, options);
    std::vector<Polynomial> restricted;
    for (const auto& g : on_gm.generators()) restricted.push_back(embed(g, tring));
    const bool matches_gm = ideals_equal(Ideal(tring, restricted), zminus, options);

    const auto total = rank_over_point(slice, {});
    const Correspondence zm = rho_slice(id, n, Sign::minus, options);
    const std::optional<std::size_t> minus_rank =
        zm.certificate ? std::optional<std::size_t>(zm.certificate->rank) : std::nullopt;
    const Correspondence sum = add(zm, identity(point(field)), options);
    const std::optional<std::size_t> sum_rank =
        sum.certificate ? std::optional<std::size_t>(sum.certificate->rank) : std::nullopt;
    const std::size_t nz = static_cast<std::size_t>(n);
    const bool ranks = total == nz && minus_rank == nz - 1 && sum_rank == nz;
    c.passed = same && disjoint && decomposes && matches_gm && ranks;
    c.ideals.push_back(grevlex_cert(slice));
    c.ideals.push_back(grevlex_cert(zminus));
    c.ideals.push_back(grevlex_cert(zminus.plus(origin)));
    if (zm.certificate) c.flf.push_back(*zm.certificate);
    if (sum.certificate) c.flf.push_back(*sum.certificate);
    auto show = [](const std::optional<std::size_t>& r) { return r ? std::to_string(*r) : std::string("?"); };
    c.detail = "ranks " + show(total) + " = " + show(minus_rank) + " + 1, sum rank " + show(sum_rank) +
               (disjoint ? ", comaximal" : ", not comaximal") + (decomposes ? ", intersection matches" : ", intersection differs") +
               (matches_gm ? "" : ", saturation differs from Gm restriction");
    rep.checks.push_back(std::move(c));
  }

  // (e) Z(t^n + 1) on A^1 equals its restriction to Gm.
  {
    SubCheck c{"z_plus_avoids_origin", false, "", {}, {}};
    const Ideal zp(tring, {tn + tone});
    const Ideal sat = saturate(zp, tt, options);
    c.passed = ideals_equal(sat, zp, options);
    c.ideals.push_back(grevlex_cert(sat));
    c.detail = c.passed ? "saturation at t changes nothing" : "saturation at t differs";
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

}  // namespace flf
