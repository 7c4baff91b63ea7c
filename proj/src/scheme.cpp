#include "flf/scheme.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "flf/errors.hpp"

namespace flf {

AffineScheme::AffineScheme(RingPtr ring, std::vector<Polynomial> relations)
    : ring_(ring), ideal_(ring) {
  std::vector<Polynomial> all;
  for (auto& r : relations) {
    if (!same_ring(r.ring(), ring_)) throw RingMismatch("scheme relation lives in another ring");
    if (r.has_negative_exponents()) r = laurent_encode(r);
    if (!r.is_zero()) relations_.push_back(r);
  }
  all = relations_;
  for (std::size_t i = 0; i < ring_->size(); ++i) {
    if (!ring_->is_inverted(i)) continue;
    Monomial m(ring_->size(), 0);
    m[i] = 1;
    m[*ring_->companion(i)] = 1;
    all.push_back(Polynomial::monomial(ring_, m, 1) - Polynomial::constant(ring_, 1));
  }
  ideal_ = Ideal(ring_, std::move(all));
}

bool AffineScheme::is_empty(const GroebnerOptions& options) const {
  return is_unit_ideal(ideal_, options);
}

AffineScheme point(const CoefficientField& field) { return AffineScheme(make_ring(field, {})); }

AffineScheme affine_line(const CoefficientField& field, const std::string& var) {
  return AffineScheme(make_ring(field, {var}));
}

AffineScheme multiplicative_group(const CoefficientField& field, const std::string& var) {
  return AffineScheme(make_ring(field, {var}, {var}));
}

AffineScheme product(const AffineScheme& x, const AffineScheme& y) {
  if (!(x.field() == y.field())) throw RingMismatch("product of schemes over different fields");
  std::vector<std::string> names = x.ring()->names();
  for (const auto& n : y.ring()->names()) {
    if (x.ring()->index_of(n)) throw Error("product: variable '" + n + "' occurs in both factors");
    names.push_back(n);
  }
  std::vector<std::string> inverted = x.ring()->inverted_names();
  for (const auto& n : y.ring()->inverted_names()) inverted.push_back(n);
  RingPtr ring = make_ring(x.field(), names, inverted);
  std::vector<Polynomial> rels;
  for (const auto& r : x.relations()) rels.push_back(embed(r, ring));
  for (const auto& r : y.relations()) rels.push_back(embed(r, ring));
  return AffineScheme(ring, std::move(rels));
}

std::map<std::string, std::string> with_companions(const Ring& ring,
                                                   const std::map<std::string, std::string>& names) {
  std::map<std::string, std::string> out = names;
  for (const auto& [from, to] : names) {
    auto i = ring.index_of(from);
    if (!i || !ring.is_inverted(*i)) continue;
    const std::string c = ring.name(*ring.companion(*i));
    if (!out.count(c)) out[c] = Ring::companion_name(to);
  }
  return out;
}

AffineScheme rename(const AffineScheme& x, const std::map<std::string, std::string>& names) {
  const Ring& src = *x.ring();
  const auto full = with_companions(src, names);
  std::vector<std::string> new_names;
  for (const auto& n : src.names()) {
    auto it = full.find(n);
    new_names.push_back(it == full.end() ? n : it->second);
  }
  std::vector<std::string> inverted;
  for (const auto& n : src.inverted_names()) {
    auto it = full.find(n);
    inverted.push_back(it == full.end() ? n : it->second);
  }
  RingPtr ring = make_ring(src.field(), new_names, inverted);
  if (ring->size() != src.size()) throw Error("rename broke companion naming");
  std::vector<Polynomial> rels;
  for (const auto& r : x.relations()) rels.push_back(Polynomial::from_terms(ring, r.terms()));
  return AffineScheme(ring, std::move(rels));
}

bool same_presentation(const AffineScheme& a, const AffineScheme& b, const GroebnerOptions& options) {
  if (!a.ring()->same_as(*b.ring())) return false;
  Ideal bi(a.ring());
  for (const auto& g : b.ideal().generators()) bi = bi.plus(embed(g, a.ring()));
  return ideals_equal(a.ideal(), bi, options);
}

bool same_scheme(const AffineScheme& a, const AffineScheme& b, const GroebnerOptions& options) {
  const Ring& ra = *a.ring();
  const Ring& rb = *b.ring();
  if (!(ra.field() == rb.field()) || ra.size() != rb.size()) return false;
  for (std::size_t i = 0; i < rb.size(); ++i) {
    auto j = ra.index_of(rb.name(i));
    if (!j || ra.is_inverted(*j) != rb.is_inverted(i) || ra.is_companion(*j) != rb.is_companion(i)) return false;
  }
  Ideal bi(a.ring());
  for (const auto& g : b.ideal().generators()) bi = bi.plus(embed(g, a.ring()));
  return ideals_equal(a.ideal(), bi, options);
}

void PresentedAlgebra::validate(const GroebnerOptions& options) const {
  const Ring& t = *total.ring();
  const Ring& b = *base.ring();
  if (!(t.field() == b.field())) throw RingMismatch("algebra and base over different fields");
  for (std::size_t i = 0; i < b.size(); ++i) {
    auto ti = t.index_of(b.name(i));
    if (!ti) throw Error("base variable '" + b.name(i) + "' missing from the algebra");
    if (t.is_inverted(*ti) != b.is_inverted(i) || t.is_companion(*ti) != b.is_companion(i)) {
      throw Error("base variable '" + b.name(i) + "' has different inversion flags");
    }
  }
  GroebnerBasis gb = buchberger(total.ideal(), MonomialOrder::grevlex(), options);
  for (const auto& r : base.relations()) {
    if (!ideal_contains(gb, embed(r, total.ring()))) {
      throw Error("base relation '" + r.to_string() + "' does not vanish on the algebra");
    }
  }
}

std::vector<bool> PresentedAlgebra::fiber_mask() const {
  const Ring& t = *total.ring();
  std::vector<bool> mask(t.size(), true);
  for (const auto& n : base.ring()->names()) mask[t.require(n)] = false;
  return mask;
}

std::vector<std::string> PresentedAlgebra::fiber_names() const {
  std::vector<std::string> out;
  const auto mask = fiber_mask();
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.push_back(total.ring()->name(i));
  }
  return out;
}

std::string name_stem(const std::string& name) {
  auto pos = name.rfind('_');
  if (pos == std::string::npos || pos + 1 == name.size() || pos == 0) return name;
  for (std::size_t i = pos + 1; i < name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return name;
  }
  return name.substr(0, pos);
}

}  // namespace flf
