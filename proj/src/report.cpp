#include "flf/report.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include <openssl/evp.h>

#include "flf/poly_text.hpp"

#ifndef FLF_VERSION
#define FLF_VERSION "0.0.0"
#endif

namespace flf {

using nlohmann::json;

std::string tool_version() { return FLF_VERSION; }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::error: return "error";
  }
  return "error";
}

Verdict parse_verdict(const std::string& s) {
  if (s == "pass") return Verdict::pass;
  if (s == "fail") return Verdict::fail;
  if (s == "inconclusive") return Verdict::inconclusive;
  if (s == "error") return Verdict::error;
  throw Error("unknown verdict '" + s + "'");
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::pass: return 0;
    case Verdict::fail: return 1;
    case Verdict::error: return 2;
    case Verdict::inconclusive: return 3;
  }
  return 2;
}

Verdict aggregate(const std::vector<Report>& reports) {
  auto any = [&](Verdict v) {
    for (const auto& r : reports) {
      if (r.verdict == v) return true;
    }
    return false;
  };
  for (Verdict v : {Verdict::error, Verdict::fail, Verdict::inconclusive}) {
    if (any(v)) return v;
  }
  return Verdict::pass;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

// ---- serialization ----

namespace {

json polys_json(const std::vector<Polynomial>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(print_polynomial(p));
  return out;
}

std::vector<Polynomial> polys_from(const json& j, const RingPtr& ring) {
  std::vector<Polynomial> out;
  for (const auto& s : j) out.push_back(parse_polynomial(s.get<std::string>(), ring));
  return out;
}

json matrix_json(const PolyMatrix& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(polys_json(row));
  return out;
}

PolyMatrix matrix_from(const json& j, const RingPtr& ring) {
  PolyMatrix out;
  for (const auto& row : j) out.push_back(polys_from(row, ring));
  return out;
}

json order_json(const MonomialOrder& order, const Ring& ring) {
  json j;
  switch (order.kind()) {
    case MonomialOrder::Kind::lex: j["kind"] = "lex"; break;
    case MonomialOrder::Kind::grevlex: j["kind"] = "grevlex"; break;
    case MonomialOrder::Kind::block: {
      j["kind"] = "block";
      json first = json::array();
      for (std::size_t i = 0; i < order.first_block().size(); ++i) {
        if (order.first_block()[i]) first.push_back(ring.name(i));
      }
      j["first"] = first;
      break;
    }
  }
  return j;
}

MonomialOrder order_from(const json& j, const Ring& ring) {
  const std::string kind = j.at("kind");
  if (kind == "lex") return MonomialOrder::lex();
  if (kind == "grevlex") return MonomialOrder::grevlex();
  if (kind != "block") throw Error("unknown monomial order '" + kind + "'");
  std::vector<bool> first(ring.size(), false);
  for (const auto& n : j.at("first")) first[ring.require(n.get<std::string>())] = true;
  return MonomialOrder::block(first);
}

json outcome_json(const FlfOutcome& o, const std::vector<std::string>& fiber, const AffineScheme& base) {
  json j;
  j["verdict"] = to_string(o.verdict);
  j["detail"] = o.detail;
  j["fiber_variables"] = fiber;
  if (o.witness_variable) j["witness_variable"] = *o.witness_variable;
  j["base_ring"] = ring_json(*base.ring());
  j["fitting_zero"] = polys_json(o.fitting_zero);
  if (o.evidence) j["evidence"] = ideal_certificate_json(*o.evidence);
  if (o.base_evidence) j["base_evidence"] = ideal_certificate_json(*o.base_evidence);
  return j;
}

FlfOutcome outcome_from(const json& j) {
  FlfOutcome o;
  const std::string v = j.at("verdict");
  o.verdict = v == "not-finite"  ? FlfVerdict::not_finite
              : v == "not-flat"  ? FlfVerdict::not_flat
              : v == "certified" ? FlfVerdict::certified
                                 : FlfVerdict::inconclusive;
  o.detail = j.value("detail", "");
  if (j.contains("witness_variable")) o.witness_variable = j.at("witness_variable").get<std::string>();
  o.fitting_zero = polys_from(j.at("fitting_zero"), ring_from_json(j.at("base_ring")));
  if (j.contains("evidence")) o.evidence = ideal_certificate_from_json(j.at("evidence"));
  if (j.contains("base_evidence")) o.base_evidence = ideal_certificate_from_json(j.at("base_evidence"));
  return o;
}

json ideal_json(const Ideal& i) {
  return json{{"ring", ring_json(*i.ring())}, {"generators", polys_json(i.generators())}};
}

// ---- certificate entries ----

json flf_entry(const FlfCertificate& c, const std::string& claim) {
  return json{{"kind", "flf"}, {"claim", claim}, {"rank", c.rank}, {"certificate", flf_certificate_json(c)}};
}

json negative_entry(const FlfOutcome& o, const PresentedAlgebra& a, const std::string& claim) {
  return json{{"kind", "negative"}, {"claim", claim}, {"outcome", outcome_json(o, a.fiber_names(), a.base)}};
}

json ideal_entry(const IdealCertificate& c, const std::string& claim) {
  return json{{"kind", "ideal"}, {"claim", claim}, {"certificate", ideal_certificate_json(c)}};
}

json unit_entry(const Ideal& i, const GroebnerOptions& o, const std::string& claim) {
  return json{{"kind", "unit-ideal"},
              {"claim", claim},
              {"certificate", ideal_certificate_json(certify_ideal(i, MonomialOrder::grevlex(), o))}};
}

json equality_entry(const EqualityEvidence& e, const std::string& claim) {
  return json{{"kind", "equality"},
              {"claim", claim},
              {"lhs", ideal_certificate_json(e.lhs)},
              {"rhs", ideal_certificate_json(e.rhs)},
              {"map_differences", polys_json(e.map_differences)}};
}

json membership_entry(const Ideal& i, const std::vector<Polynomial>& members, const GroebnerOptions& o,
                      const std::string& claim) {
  return json{{"kind", "membership"},
              {"claim", claim},
              {"certificate", ideal_certificate_json(certify_ideal(i, MonomialOrder::grevlex(), o))},
              {"polynomials", polys_json(members)}};
}

json bound_entry(const FlatnessBound& b, const std::vector<Polynomial>& fs, std::optional<int> n,
                 const std::string& claim) {
  json j{{"kind", "flatness-bound"},
         {"claim", claim},
         {"t", b.t},
         {"f", polys_json(fs)},
         {"N", b.N},
         {"certificate", flf_certificate_json(b.certificate)}};
  if (n) j["n"] = *n;
  return j;
}

// Adds the certificate or the negative evidence of an outcome.
void attach(Report& rep, const FlfOutcome& o, const PresentedAlgebra& a, const std::string& what) {
  if (o.verdict == FlfVerdict::certified && o.certificate) {
    rep.certificates.push_back(flf_entry(*o.certificate, what + " is finite free of rank " +
                                                             std::to_string(o.certificate->rank)));
  } else if ((o.verdict == FlfVerdict::not_finite || o.verdict == FlfVerdict::not_flat) && o.evidence) {
    rep.certificates.push_back(negative_entry(o, a, what + " is " + to_string(o.verdict)));
  }
}

Verdict verdict_of(FlfVerdict v) {
  switch (v) {
    case FlfVerdict::certified: return Verdict::pass;
    case FlfVerdict::not_finite:
    case FlfVerdict::not_flat: return Verdict::fail;
    case FlfVerdict::inconclusive: return Verdict::inconclusive;
  }
  return Verdict::inconclusive;
}

// ---- argument helpers ----

std::string need(const Request& r, const std::string& key) {
  auto v = r.arg(key);
  if (!v) throw Error("command '" + r.command + "' needs " + key + "=...");
  return *v;
}

int int_arg(const Request& r, const std::string& key, std::optional<int> fallback = std::nullopt) {
  auto v = r.arg(key);
  if (!v) {
    if (fallback) return *fallback;
    throw Error("command '" + r.command + "' needs " + key + "=...");
  }
  try {
    std::size_t used = 0;
    int x = std::stoi(*v, &used);
    if (used != v->size()) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception&) {
    throw Error("argument " + key + " must be an integer, got '" + *v + "'");
  }
}

Sign sign_arg(const Request& r) {
  const std::string s = r.arg("sign").value_or("+");
  if (s == "+" || s == "plus") return Sign::plus;
  if (s == "-" || s == "minus") return Sign::minus;
  throw Error("sign must be + or -, got '" + s + "'");
}

struct Named {
  std::string name;
  Correspondence span;
  FlfOutcome outcome;
};

Named load(const Workspace& w, const std::string& name, const GroebnerOptions& o) {
  Named n{name, w.correspondence(name), {}};
  n.outcome = certify(n.span, o);
  return n;
}

GmSpan gm_span(const Request& r, const Correspondence& c) {
  return GmSpan{c, r.arg("sgm").value_or("t"), r.arg("tgm").value_or("t")};
}

json valuation_table(const FlatnessBound& b) {
  json out = json::array();
  for (const auto& row : b.valuations) {
    json jr = json::array();
    for (const auto& v : row) jr.push_back(v ? json(*v) : json(nullptr));
    out.push_back(jr);
  }
  return out;
}

// ---- commands ----

void cmd_certify(const Workspace& w, const Request& r, const RunOptions& o, Report& rep) {
  Named a = load(w, need(r, "corr"), o.groebner);
  rep.verdict = verdict_of(a.outcome.verdict);
  rep.result["status"] = to_string(a.outcome.verdict);
  if (a.outcome.certificate) rep.result["rank"] = a.outcome.certificate->rank;
  if (a.outcome.witness_variable) rep.result["witness"] = *a.outcome.witness_variable;
  if (a.outcome.verdict == FlfVerdict::not_flat) rep.result["fitting_zero"] = polys_json(a.outcome.fitting_zero);
  rep.detail = a.outcome.detail;
  attach(rep, a.outcome, a.span.left_leg(), "left leg of " + a.name);
}

void cmd_degree(const Workspace& w, const Request& r, const RunOptions& o, Report& rep) {
  Named a = load(w, need(r, "corr"), o.groebner);
  rep.verdict = verdict_of(a.outcome.verdict);
  if (a.span.certificate) {
    rep.result["degree"] = degree(a.span);
    rep.detail = "degree " + std::to_string(degree(a.span));
  } else {
    rep.detail = "not certified: " + a.outcome.detail;
  }
  attach(rep, a.outcome, a.span.left_leg(), "left leg of " + a.name);
}

void cmd_binary(const Workspace& w, const Request& r, const RunOptions& o, Report& rep) {
  const auto names = r.all("corr");
  if (names.size() != 2) throw Error("command '" + r.command + "' needs exactly two corr=... arguments");
  Named a = load(w, names[0], o.groebner);
  Named b = load(w, names[1], o.groebner);
  for (const Named* n : {&a, &b}) {
    if (!n->span.certificate) {
      rep.verdict = verdict_of(n->outcome.verdict);
      rep.detail = "input '" + n->name + "' is not certified: " + n->outcome.detail;
      attach(rep, n->outcome, n->span.left_leg(), "left leg of " + n->name);
      return;
    }
  }
  Correspondence out = r.command == "compose" ? compose(a.span, b.span, o.groebner)
                       : r.command == "add"   ? add(a.span, b.span, o.groebner)
                                              : external_tensor(a.span, b.span, o.groebner);
  FlfOutcome oc;
  if (!out.certificate) {
    oc = certify(out, o.groebner);
  } else {
    oc.verdict = FlfVerdict::certified;
    oc.certificate = out.certificate;
  }
  const std::size_t ra = degree(a.span), rb = degree(b.span);
  const std::size_t expected = r.command == "add" ? ra + rb : ra * rb;
  rep.result["span"] = span_json(out);
  rep.result["expected_rank"] = expected;
  if (out.certificate) rep.result["rank"] = out.certificate->rank;
  if (!out.certificate) {
    rep.verdict = verdict_of(oc.verdict);
    rep.detail = "result not certified: " + oc.detail;
  } else if (out.certificate->rank != expected) {
    rep.verdict = Verdict::fail;
    rep.detail = "rank " + std::to_string(out.certificate->rank) + ", expected " + std::to_string(expected);
  } else {
    rep.verdict = Verdict::pass;
    rep.detail = "rank " + std::to_string(expected);
  }
  attach(rep, oc, out.left_leg(), r.command + " result");
}

void cmd_bound(const Workspace& w, const Request& r, const RunOptions& o, Report& rep) {
  Named a = load(w, need(r, "corr"), o.groebner);
  if (!a.span.certificate) {
    rep.verdict = verdict_of(a.outcome.verdict);
    rep.detail = "left leg of " + a.name + " is not certified: " + a.outcome.detail;
    attach(rep, a.outcome, a.span.left_leg(), "left leg of " + a.name);
    return;
  }
  const std::string t = r.arg("t").value_or("t");
  const RingPtr& ring = a.span.middle.ring();
  const Polynomial f = parse_polynomial(need(r, "f"), ring);
  FlatnessBound b = r.arg("f2")
                        ? flatness_bound_ext(a.span.left_leg(), t, f, parse_polynomial(*r.arg("f2"), ring), o.groebner)
                        : flatness_bound(a.span.left_leg(), t, f, o.groebner);
  rep.verdict = Verdict::pass;
  rep.result["N"] = b.N;
  rep.result["t"] = t;
  rep.result["valuations"] = valuation_table(b);
  json ms = json::array();
  for (const auto& m : b.matrices) ms.push_back(matrix_json(m));
  rep.result["matrices"] = ms;
  rep.detail = "N = " + std::to_string(b.N);
  std::vector<Polynomial> fs{f};
  if (r.arg("f2")) fs.push_back(parse_polynomial(*r.arg("f2"), ring));
  rep.certificates.push_back(bound_entry(b, fs, std::nullopt, "N = " + std::to_string(b.N)));
}

void cmd_slice(const Workspace& w, const Request& r, const RunOptions& o, Report& rep) {
  Named a = load(w, need(r, "corr"), o.groebner);
  const std::string t = r.arg("t").value_or("t");
  const int n = int_arg(r, "n");
  const Polynomial f = parse_polynomial(need(r, "f"), a.span.middle.ring());
  SliceResult s = z_slice(a.span.left_leg(), t, f, n, o.groebner);
  rep.verdict = s.verdict == SliceVerdict::not_flat       ? Verdict::fail
                : s.verdict == SliceVerdict::inconclusive ? Verdict::inconclusive
                                                          : Verdict::pass;
  rep.result["status"] = to_string(s.verdict);
  rep.result["N"] = s.N;
  rep.result["n"] = n;
  rep.result["slice"] = scheme_json(s.slice.total);
  rep.detail = s.detail;
  if (s.verdict == SliceVerdict::flat_by_certificate) {
    FlatnessBound b = flatness_bound(a.span.left_leg(), t, f, o.groebner);
    rep.certificates.push_back(bound_entry(b, {f}, n, "slice flat since n > N = " + std::to_string(b.N)));
  } else {
    attach(rep, s.outcome, s.slice, "slice Z(1 - " + t + "^" + std::to_string(n) + " f)");
  }
}

void cmd_rho(const Workspace& w, const Request& r, const RunOptions& o, Report& rep) {
  Named a = load(w, need(r, "corr"), o.groebner);
  const int m = int_arg(r, "m"), n = int_arg(r, "n");
  const Sign sign = sign_arg(r);
  RhoResult res = rho(gm_span(r, a.span), m, n, sign, o.groebner);
  rep.verdict = verdict_of(res.outcome.verdict);
  rep.result["status"] = to_string(res.outcome.verdict);
  rep.result["s"] = res.s;
  if (res.outcome.certificate) rep.result["rank"] = res.outcome.certificate->rank;
  rep.result["span"] = span_json(res.span);
  rep.detail = res.outcome.detail;
  attach(rep, res.outcome, res.span.left_leg(), "rho_" + std::to_string(m) + std::to_string(n) + to_string(sign));
}

void cmd_rho_slice(const Workspace& w, const Request& r, const RunOptions& o, Report& rep) {
  Named a = load(w, need(r, "corr"), o.groebner);
  const int n = int_arg(r, "n");
  const Sign sign = sign_arg(r);
  Correspondence c = rho_slice(gm_span(r, a.span), n, sign, o.groebner);
  FlfOutcome oc = certify(c, o.groebner);
  rep.verdict = verdict_of(oc.verdict);
  rep.result["status"] = to_string(oc.verdict);
  if (oc.certificate) rep.result["rank"] = oc.certificate->rank;
  rep.result["span"] = span_json(c);
  rep.detail = oc.detail;
  attach(rep, oc, c.left_leg(), "rho_" + std::to_string(n) + to_string(sign) + " slice");
}

void cmd_filtration(const Workspace& w, const Request& r, const RunOptions& o, Report& rep) {
  Named a = load(w, need(r, "corr"), o.groebner);
  const int window = int_arg(r, "window", o.window);
  FiltrationWitness fw = filtration_index(gm_span(r, a.span), window, o.groebner);
  rep.result["window"] = window;
  rep.result["i"] = fw.i ? json(*fw.i) : json(nullptr);
  json checked = json::array();
  for (const auto& e : fw.checked) {
    json je{{"m", e.m}, {"n", e.n}, {"sign", to_string(e.sign)}, {"verdict", to_string(e.verdict)}};
    if (e.rank) je["rank"] = *e.rank;
    checked.push_back(je);
    if (e.certificate && fw.i && e.m >= *fw.i && e.n >= *fw.i) {
      rep.certificates.push_back(flf_entry(*e.certificate, "rho_" + std::to_string(e.m) + "," +
                                                               std::to_string(e.n) + to_string(e.sign) +
                                                               " is finite free"));
    }
  }
  rep.result["checked"] = checked;
  if (fw.blocking) {
    rep.result["blocking"] = json{{"m", fw.blocking->m},
                                  {"n", fw.blocking->n},
                                  {"sign", to_string(fw.blocking->sign)},
                                  {"verdict", to_string(fw.blocking->verdict)},
                                  {"detail", fw.blocking->detail}};
  }
  if (fw.bound_plus) rep.result["N_plus"] = fw.bound_plus->N;
  if (fw.bound_minus) rep.result["N_minus"] = fw.bound_minus->N;
  if (fw.i) {
    rep.verdict = Verdict::pass;
    rep.detail = "i = " + std::to_string(*fw.i) + " within window " + std::to_string(window);
  } else {
    rep.verdict = fw.blocking && fw.blocking->verdict == FlfVerdict::inconclusive ? Verdict::inconclusive
                                                                                   : Verdict::fail;
    rep.detail = "no index within window " + std::to_string(window);
  }
}

void cmd_compat(const Workspace& w, const Request& r, const RunOptions& o, Report& rep) {
  Named a = load(w, need(r, "corr"), o.groebner);
  Named beta = load(w, need(r, "beta"), o.groebner);
  Named gamma = load(w, need(r, "gamma"), o.groebner);
  const int m = int_arg(r, "m"), n = int_arg(r, "n");
  CompatReport c = verify_compat(gm_span(r, a.span), beta.span, gamma.span, m, n, sign_arg(r), o.groebner);
  rep.verdict = c.passed() ? Verdict::pass : Verdict::fail;
  rep.result["pushforward"] = c.pushforward;
  rep.result["pullback"] = c.pullback;
  rep.detail = c.detail;
  const char* names[] = {"pushforward identity", "pullback identity"};
  for (std::size_t i = 0; i < c.evidence.size() && i < 2; ++i) {
    rep.certificates.push_back(equality_entry(c.evidence[i], c.evidence.size() == 2 ? names[i] : "identity"));
  }
}

void cmd_lemma(const Workspace& w, const Request& r, const RunOptions& o, Report& rep) {
  const int n = int_arg(r, "n");
  LemmaReport lr = verify_cancel_final(n, w.field, o.groebner);
  rep.verdict = lr.passed() ? Verdict::pass : Verdict::fail;
  rep.result["n"] = n;
  rep.result["field"] = lr.field;
  json checks = json::array();
  std::size_t passed = 0;
  for (const auto& c : lr.checks) {
    checks.push_back(json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    passed += c.passed;
    for (const auto& ic : c.ideals) rep.certificates.push_back(ideal_entry(ic, c.name));
    for (const auto& fc : c.flf) rep.certificates.push_back(flf_entry(fc, c.name));
  }
  rep.result["checks"] = checks;
  rep.detail = std::to_string(passed) + " of " + std::to_string(lr.checks.size()) + " sub-checks pass";
}

ContractionDatum datum_for(const Correspondence& c) {
  int n = 0;
  const Ring& x = *c.target.ring();
  for (std::size_t i = 0; i < x.size(); ++i) n += !x.is_companion(i);
  return standard_contraction_data(n, c.target.field());
}

void attach_avoidance(Report& rep, const ContractedCorrespondence& cc, const GroebnerOptions& o) {
  const RingPtr& ring = cc.v_double_prime.ring();
  const Polynomial u = Polynomial::variable(ring, cc.u);
  if (cc.avoids_zero) rep.certificates.push_back(unit_entry(cc.v_double_prime.plus(u), o, "V'' + (u) = (1)"));
  if (cc.avoids_one) {
    rep.certificates.push_back(
        unit_entry(cc.v_double_prime.plus(u - Polynomial::constant(ring, 1)), o, "V'' + (u - 1) = (1)"));
  }
}

void cmd_contract(const Workspace& w, const Request& r, const RunOptions& o, Report& rep) {
  Named a = load(w, need(r, "corr"), o.groebner);
  if (!a.span.certificate) {
    rep.verdict = verdict_of(a.outcome.verdict);
    rep.detail = "input '" + a.name + "' is not certified: " + a.outcome.detail;
    attach(rep, a.outcome, a.span.left_leg(), "left leg of " + a.name);
    return;
  }
  ContractionDatum d = datum_for(a.span);
  ContractedCorrespondence cc = contract(a.span, d, o.groebner);
  rep.result["u"] = cc.u;
  rep.result["V"] = json{{"ring", ring_json(*d.x_line.ring())}, {"w", print_polynomial(d.w)}};
  rep.result["V_prime"] = ideal_json(cc.v_prime);
  rep.result["V_double_prime"] = ideal_json(cc.v_double_prime);
  rep.result["avoids_zero"] = cc.avoids_zero;
  rep.result["avoids_one"] = cc.avoids_one;
  json pieces = json::array();
  for (const auto& p : cc.pieces) {
    json jp{{"generator", print_polynomial(p.generator)}, {"localizer", p.localizer}, {"span", span_json(p.span)}};
    if (p.outcome.certificate) jp["rank"] = p.outcome.certificate->rank;
    pieces.push_back(jp);
    attach(rep, p.outcome, p.span.left_leg(), "W' over D(" + print_polynomial(p.generator) + ")");
  }
  rep.result["U"] = pieces;
  rep.result["red_flags"] = cc.red_flags;
  attach_avoidance(rep, cc, o.groebner);
  rep.verdict = cc.red_flags.empty() ? Verdict::pass : Verdict::fail;
  rep.detail = cc.red_flags.empty() ? std::to_string(cc.pieces.size()) + " piece(s), rank " +
                                          std::to_string(degree(a.span))
                                    : "red flag: " + cc.red_flags.front();
}

void cmd_verify_contraction(const Workspace& w, const Request& r, const RunOptions& o, Report& rep) {
  Named a = load(w, need(r, "corr"), o.groebner);
  if (!a.span.certificate) {
    rep.verdict = verdict_of(a.outcome.verdict);
    rep.detail = "input '" + a.name + "' is not certified: " + a.outcome.detail;
    attach(rep, a.outcome, a.span.left_leg(), "left leg of " + a.name);
    return;
  }
  ContractionDatum d = datum_for(a.span);
  EndpointReport er = verify_contraction_endpoints(a.span, d, o.groebner);
  rep.result["identity_at"] = er.identity_at;
  rep.result["constant_at"] = er.constant_at;
  rep.result["avoids_zero"] = er.avoids_zero;
  rep.result["avoids_one"] = er.avoids_one;
  rep.result["zero_equals_alpha"] = er.zero_equals_alpha;
  rep.result["one_equals_alpha"] = er.one_equals_alpha;
  rep.result["zero_constant"] = er.zero_constant;
  rep.result["one_constant"] = er.one_constant;
  if (er.at_zero) rep.result["slice_u0"] = span_json(*er.at_zero);
  if (er.at_one) rep.result["slice_u1"] = span_json(*er.at_one);

  ContractedCorrespondence cc = contract(a.span, d, o.groebner);
  attach_avoidance(rep, cc, o.groebner);
  const std::optional<Correspondence>& ident = er.one_equals_alpha ? er.at_one : er.at_zero;
  const std::optional<Correspondence>& konst = er.one_equals_alpha ? er.at_zero : er.at_one;
  if (er.dichotomy() && ident && konst) {
    if (auto ev = equality_evidence(*ident, a.span, {}, o.groebner)) {
      rep.certificates.push_back(equality_entry(*ev, "slice " + er.identity_at + " equals " + a.name));
    }
    std::vector<Polynomial> members;
    for (std::size_t i = 0; i < d.coordinates.size(); ++i) {
      members.push_back(konst->target_map.at(d.coordinates[i]) -
                        Polynomial::constant(konst->middle.ring(), konst->middle.field().reduce(d.base_point[i])));
    }
    rep.certificates.push_back(membership_entry(konst->middle.ideal(), members, o.groebner,
                                                "slice " + er.constant_at + " factors through x0"));
  }
  rep.verdict = er.passed() ? Verdict::pass : Verdict::fail;
  rep.detail = er.passed() ? "identity at " + er.identity_at + ", constant at " + er.constant_at
                           : "endpoint check failed: " + er.detail;
}

using Handler = std::function<void(const Workspace&, const Request&, const RunOptions&, Report&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"certify", cmd_certify},          {"degree", cmd_degree},
      {"compose", cmd_binary},           {"add", cmd_binary},
      {"tensor", cmd_binary},            {"bound", cmd_bound},
      {"slice", cmd_slice},              {"rho", cmd_rho},
      {"rho-slice", cmd_rho_slice},      {"filtration", cmd_filtration},
      {"verify-compat", cmd_compat},     {"verify-lemma-35", cmd_lemma},
      {"contract", cmd_contract},        {"verify-contraction", cmd_verify_contraction},
  };
  return table;
}

}  // namespace

json ring_json(const Ring& ring) {
  return json{{"field", ring.field().name()}, {"vars", ring.names()}, {"inverted", ring.inverted_names()}};
}

RingPtr ring_from_json(const json& j) {
  return make_ring(CoefficientField::parse(j.at("field")), j.at("vars").get<std::vector<std::string>>(),
                   j.at("inverted").get<std::vector<std::string>>());
}

json scheme_json(const AffineScheme& x) {
  return json{{"ring", ring_json(*x.ring())}, {"relations", polys_json(x.relations())}};
}

json span_json(const Correspondence& c) {
  json map = json::object();
  for (const auto& [y, img] : c.target_map) map[y] = print_polynomial(img);
  return json{{"source", scheme_json(c.source)},
              {"target", scheme_json(c.target)},
              {"middle", scheme_json(c.middle)},
              {"map", map}};
}

json ideal_certificate_json(const IdealCertificate& c) {
  json cof = json::array();
  for (const auto& row : c.cofactors) cof.push_back(polys_json(row));
  return json{{"ring", ring_json(*c.ring)},
              {"order", order_json(c.order, *c.ring)},
              {"generators", polys_json(c.generators)},
              {"basis", polys_json(c.basis)},
              {"cofactors", cof}};
}

IdealCertificate ideal_certificate_from_json(const json& j) {
  IdealCertificate c;
  c.ring = ring_from_json(j.at("ring"));
  c.order = order_from(j.at("order"), *c.ring);
  c.generators = polys_from(j.at("generators"), c.ring);
  c.basis = polys_from(j.at("basis"), c.ring);
  for (const auto& row : j.at("cofactors")) c.cofactors.push_back(polys_from(row, c.ring));
  return c;
}

json flf_certificate_json(const FlfCertificate& c) {
  json mult = json::object();
  for (const auto& [x, m] : c.multiplication) mult[x] = matrix_json(m);
  return json{{"fiber_variables", c.fiber_variables},
              {"algebra", ideal_certificate_json(c.algebra)},
              {"base", ideal_certificate_json(c.base)},
              {"basis", polys_json(c.basis)},
              {"multiplication", mult},
              {"rank", c.rank},
              {"fitting_below", polys_json(c.fitting_below)},
              {"fitting_at", polys_json(c.fitting_at)}};
}

FlfCertificate flf_certificate_from_json(const json& j) {
  FlfCertificate c;
  c.fiber_variables = j.at("fiber_variables").get<std::vector<std::string>>();
  c.algebra = ideal_certificate_from_json(j.at("algebra"));
  c.base = ideal_certificate_from_json(j.at("base"));
  c.basis = polys_from(j.at("basis"), c.algebra.ring);
  for (const auto& [x, m] : j.at("multiplication").items()) c.multiplication.emplace(x, matrix_from(m, c.base.ring));
  c.rank = j.at("rank").get<std::size_t>();
  c.fitting_below = polys_from(j.at("fitting_below"), c.base.ring);
  c.fitting_at = polys_from(j.at("fitting_at"), c.base.ring);
  return c;
}

Report run_request(const Workspace& w, const Request& r, const RunOptions& options) {
  Report rep;
  rep.name = r.name;
  rep.request = r.echo();
  const auto start = std::chrono::steady_clock::now();
  try {
    check_request(w, r);
    handlers().at(r.command)(w, r, options, rep);
  } catch (const BudgetExhausted& e) {
    rep = Report{r.name, r.echo(), Verdict::inconclusive, e.what(), json::object(), json::array(), 0};
  } catch (const std::exception& e) {
    rep = Report{r.name, r.echo(), Verdict::error, e.what(), json::object(), json::array(), 0};
  }
  const auto stop = std::chrono::steady_clock::now();
  rep.millis = options.timing ? std::chrono::duration<double, std::milli>(stop - start).count() : 0.0;
  return rep;
}

json batch_json(const std::vector<Report>& reports, const std::string& digest, const Workspace& w,
                const RunOptions& options) {
  json rs = json::array();
  for (const auto& r : reports) {
    rs.push_back(json{{"name", r.name},
                      {"request", r.request},
                      {"verdict", to_string(r.verdict)},
                      {"detail", r.detail},
                      {"timing_ms", r.millis},
                      {"result", r.result},
                      {"certificates", r.certificates}});
  }
  return json{{"format", "flf-report"},
              {"schema_version", 1},
              {"tool", "flf"},
              {"version", tool_version()},
              {"input_digest", "sha256:" + digest},
              {"field", w.field.name()},
              {"budget", options.groebner.budget},
              {"verdict", to_string(aggregate(reports))},
              {"reports", rs}};
}

std::string render_text(const json& batch) {
  std::ostringstream out;
  out << "flf " << batch.at("version").get<std::string>() << "\n";
  out << "input " << batch.at("input_digest").get<std::string>() << "\n";
  auto scalar = [](const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return std::string("none");
    return v.dump();
  };
  for (const auto& r : batch.at("reports")) {
    out << "\n[" << r.at("name").get<std::string>() << "] " << r.at("request").get<std::string>() << "\n";
    out << "  verdict: " << r.at("verdict").get<std::string>() << "\n";
    if (!r.at("detail").get<std::string>().empty()) out << "  detail: " << r.at("detail").get<std::string>() << "\n";
    for (const auto& [k, v] : r.at("result").items()) {
      if (v.is_primitive()) {
        out << "  " << k << ": " << scalar(v) << "\n";
      } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_primitive(); })) {
        std::string line;
        for (const auto& x : v) line += (line.empty() ? "" : ", ") + scalar(x);
        out << "  " << k << ": [" << line << "]\n";
      } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) {
                   return x.is_array() && std::all_of(x.begin(), x.end(), [](const json& y) { return y.is_primitive(); });
                 })) {
        out << "  " << k << ": " << v.dump() << "\n";
      } else if (v.is_array() && !v.empty() && v.front().is_object() && v.front().contains("passed")) {
        for (const auto& c : v) {
          out << "  check " << c.at("name").get<std::string>() << ": "
              << (c.at("passed").get<bool>() ? "pass" : "fail") << " (" << c.at("detail").get<std::string>()
              << ")\n";
        }
      }
    }
    std::map<std::string, int> kinds;
    for (const auto& c : r.at("certificates")) kinds[c.at("kind").get<std::string>()]++;
    std::string ks;
    for (const auto& [k, n] : kinds) ks += (ks.empty() ? "" : ", ") + std::to_string(n) + " " + k;
    out << "  certificates: " << (ks.empty() ? "none" : ks) << "\n";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", r.at("timing_ms").get<double>());
    out << "  time: " << buf << " ms\n";
  }
  out << "\nverdict: " << batch.at("verdict").get<std::string>() << "\n";
  return out.str();
}

namespace {

bool check_entry(const json& c, std::size_t budget, std::string& why) {
  const std::string kind = c.at("kind");
  if (kind == "ideal") return ideal_certificate_from_json(c.at("certificate")).verify(&why, budget);
  if (kind == "unit-ideal") {
    IdealCertificate ic = ideal_certificate_from_json(c.at("certificate"));
    if (!ic.verify(&why, budget)) return false;
    if (ic.basis.size() != 1 || ic.basis[0].constant_value() != mpq_class(1)) {
      why = "basis is not {1}";
      return false;
    }
    return true;
  }
  if (kind == "flf") {
    FlfCertificate fc = flf_certificate_from_json(c.at("certificate"));
    if (!fc.verify(&why)) return false;
    if (c.contains("rank") && c.at("rank").get<std::size_t>() != fc.rank) {
      why = "claimed rank differs from the certificate";
      return false;
    }
    return true;
  }
  if (kind == "flatness-bound") {
    FlfCertificate fc = flf_certificate_from_json(c.at("certificate"));
    if (!fc.verify(&why)) return false;
    const std::size_t ti = fc.base.ring->require(c.at("t").get<std::string>());
    std::optional<long> least;
    for (const auto& f : polys_from(c.at("f"), fc.algebra.ring)) {
      for (const auto& row : multiplication_matrix(fc, f)) {
        for (const auto& e : row) {
          auto v = laurent_valuation(e, ti);
          if (v && (!least || *v < *least)) least = v;
        }
      }
    }
    const long N = least ? std::max(0L, -*least) : 0L;
    if (N != c.at("N").get<long>()) {
      why = "valuations give N = " + std::to_string(N);
      return false;
    }
    if (c.contains("n") && c.at("n").get<long>() <= N) {
      why = "n does not exceed N";
      return false;
    }
    return true;
  }
  if (kind == "equality") {
    IdealCertificate lhs = ideal_certificate_from_json(c.at("lhs"));
    EqualityEvidence ev{lhs, ideal_certificate_from_json(c.at("rhs")),
                        polys_from(c.at("map_differences"), lhs.ring)};
    return ev.verify(&why);
  }
  if (kind == "membership") {
    IdealCertificate ic = ideal_certificate_from_json(c.at("certificate"));
    if (!ic.verify(&why, budget)) return false;
    const GroebnerBasis gb = ic.as_basis();
    for (const auto& p : polys_from(c.at("polynomials"), ic.ring)) {
      if (!normal_form(p, gb, budget).is_zero()) {
        why = print_polynomial(p) + " is not in the ideal";
        return false;
      }
    }
    return true;
  }
  if (kind == "negative") {
    const json& o = c.at("outcome");
    return verify_negative(outcome_from(o), o.at("fiber_variables").get<std::vector<std::string>>(), &why);
  }
  why = "unknown certificate kind '" + kind + "'";
  return false;
}

}  // namespace

RecheckOutcome recheck(const json& batch, std::size_t budget) {
  RecheckOutcome out;
  if (!batch.is_object() || batch.value("format", "") != "flf-report") {
    throw Error("not an flf report");
  }
  for (const auto& r : batch.at("reports")) {
    const std::string name = r.at("name");
    const Verdict v = parse_verdict(r.at("verdict"));
    const auto& certs = r.at("certificates");
    if (v == Verdict::error || v == Verdict::inconclusive) {
      ++out.skipped;
      out.lines.push_back(name + ": skipped (" + to_string(v) + ")");
      continue;
    }
    std::size_t good = 0, positive = 0, negative = 0;
    std::string first_problem;
    for (const auto& c : certs) {
      std::string why;
      bool ok = false;
      try {
        ok = check_entry(c, budget, why);
      } catch (const std::exception& e) {
        why = e.what();
      }
      const bool neg = c.at("kind") == "negative";
      (neg ? negative : positive) += 1;
      if (ok) {
        ++good;
      } else if (first_problem.empty()) {
        first_problem = c.value("claim", "") + ": " + why;
      }
    }
    bool agrees = good == certs.size();
    if (agrees && v == Verdict::pass) agrees = positive > 0 && negative == 0;
    if (v == Verdict::fail && certs.empty()) {
      ++out.skipped;
      out.lines.push_back(name + ": fail without certificates, nothing to recheck");
      continue;
    }
    if (agrees) {
      ++out.confirmed;
      out.lines.push_back(name + ": confirmed " + to_string(v) + " (" + std::to_string(good) + " certificate(s))");
    } else {
      ++out.rejected;
      out.lines.push_back(name + ": REJECTED " + to_string(v) +
                          (first_problem.empty() ? std::string(" (no certificates)") : " (" + first_problem + ")"));
    }
  }
  out.ok = out.rejected == 0;
  return out;
}

}  // namespace flf
