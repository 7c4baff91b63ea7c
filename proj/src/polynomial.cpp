#include "flf/polynomial.hpp"

#include <algorithm>
#include <limits>

#include "flf/errors.hpp"
#include "flf/monomial_order.hpp"
#include "flf/poly_text.hpp"

namespace flf {

namespace {

const MonomialOrder& canonical_order() {
  static const MonomialOrder order = MonomialOrder::grevlex();
  return order;
}

std::int32_t checked_exponent(std::int64_t e) {
  if (e > std::numeric_limits<std::int32_t>::max() || e < std::numeric_limits<std::int32_t>::min()) {
    throw DegreeOverflow();
  }
  return static_cast<std::int32_t>(e);
}

Monomial add_exponents(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    r[i] = checked_exponent(static_cast<std::int64_t>(a[i]) + b[i]);
  }
  return r;
}

void require_same(const Polynomial& a, const Polynomial& b) {
  if (!same_ring(a.ring(), b.ring())) throw RingMismatch("polynomials belong to different rings");
}

}  // namespace

Polynomial Polynomial::constant(RingPtr ring, const mpq_class& c) {
  Monomial zero(ring->size(), 0);
  return monomial(std::move(ring), std::move(zero), c);
}

Polynomial Polynomial::variable(RingPtr ring, const std::string& name) {
  Monomial m(ring->size(), 0);
  m[ring->require(name)] = 1;
  return monomial(std::move(ring), std::move(m), mpq_class(1));
}

Polynomial Polynomial::monomial(RingPtr ring, Monomial exponents, const mpq_class& c) {
  std::vector<Term> terms;
  terms.push_back(Term{std::move(exponents), c});
  return from_terms(std::move(ring), std::move(terms));
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  const auto& field = ring->field();
  for (auto& t : terms) {
    if (t.exponents.size() != ring->size()) throw Error("exponent vector has wrong length");
    t.coeff = field.reduce(t.coeff);
  }
  const auto& order = canonical_order();
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return order.greater(a.exponents, b.exponents); });
  Polynomial out(std::move(ring));
  for (auto& t : terms) {
    if (!out.terms_.empty() && out.terms_.back().exponents == t.exponents) {
      out.terms_.back().coeff = field.add(out.terms_.back().coeff, t.coeff);
    } else {
      if (!out.terms_.empty() && out.terms_.back().coeff == 0) out.terms_.pop_back();
      out.terms_.push_back(std::move(t));
    }
  }
  if (!out.terms_.empty() && out.terms_.back().coeff == 0) out.terms_.pop_back();
  return out;
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  return std::all_of(terms_[0].exponents.begin(), terms_[0].exponents.end(),
                     [](std::int32_t e) { return e == 0; });
}

std::optional<mpq_class> Polynomial::constant_value() const {
  if (!is_constant()) return std::nullopt;
  if (terms_.empty()) return mpq_class(0);
  return terms_[0].coeff;
}

long Polynomial::total_degree() const {
  long best = std::numeric_limits<long>::min();
  for (const auto& t : terms_) {
    long d = 0;
    for (auto e : t.exponents) d += e;
    best = std::max(best, d);
  }
  return terms_.empty() ? -1 : best;
}

bool Polynomial::involves(std::size_t var) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [&](const Term& t) { return t.exponents[var] != 0; });
}

bool Polynomial::has_negative_exponents() const {
  for (const auto& t : terms_) {
    for (auto e : t.exponents) {
      if (e < 0) return true;
    }
  }
  return false;
}

mpq_class Polynomial::coefficient(const Monomial& m) const {
  for (const auto& t : terms_) {
    if (t.exponents == m) return t.coeff;
  }
  return 0;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(ring_);
  out.terms_ = terms_;
  for (auto& t : out.terms_) t.coeff = ring_->field().neg(t.coeff);
  return out;
}

Polynomial Polynomial::scaled(const mpq_class& c) const {
  std::vector<Term> terms = terms_;
  for (auto& t : terms) t.coeff = ring_->field().mul(t.coeff, ring_->field().reduce(c));
  return from_terms(ring_, std::move(terms));
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  require_same(a, b);
  const auto& order = canonical_order();
  const auto& field = a.ring_->field();
  Polynomial out(a.ring_);
  out.terms_.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    int c;
    if (i == a.terms_.size()) {
      c = -1;
    } else if (j == b.terms_.size()) {
      c = 1;
    } else {
      c = order.compare(a.terms_[i].exponents, b.terms_[j].exponents);
    }
    if (c > 0) {
      out.terms_.push_back(a.terms_[i++]);
    } else if (c < 0) {
      out.terms_.push_back(b.terms_[j++]);
    } else {
      mpq_class s = field.add(a.terms_[i].coeff, b.terms_[j].coeff);
      if (s != 0) out.terms_.push_back(Term{a.terms_[i].exponents, s});
      ++i;
      ++j;
    }
  }
  return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same(a, b);
  const auto& field = a.ring_->field();
  std::map<Monomial, mpq_class> acc;
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      auto m = add_exponents(s.exponents, t.exponents);
      auto [it, inserted] = acc.try_emplace(std::move(m), 0);
      it->second = field.add(it->second, field.mul(s.coeff, t.coeff));
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (c != 0) terms.push_back(Term{m, c});
  }
  return Polynomial::from_terms(a.ring_, std::move(terms));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!same_ring(a.ring_, b.ring_)) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].exponents != b.terms_[i].exponents || a.terms_[i].coeff != b.terms_[i].coeff) {
      return false;
    }
  }
  return true;
}

std::string Polynomial::to_string() const { return print_polynomial(*this); }

Polynomial normalize(const Polynomial& p) {
  return Polynomial::from_terms(p.ring(), p.terms());
}

std::optional<Polynomial> unit_monomial_inverse(const Polynomial& p) {
  if (p.size() != 1) return std::nullopt;
  const auto& ring = *p.ring();
  const auto& t = p.terms()[0];
  Monomial inv(ring.size(), 0);
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const std::int32_t e = t.exponents[i];
    if (e == 0) continue;
    auto c = ring.companion(i);
    if (!c) return std::nullopt;
    // v^e with e > 0 inverts to v_inv^e; v^-e (Laurent) inverts to v^e.
    if (e > 0) {
      inv[*c] = checked_exponent(static_cast<std::int64_t>(inv[*c]) + e);
    } else {
      inv[i] = checked_exponent(static_cast<std::int64_t>(inv[i]) - e);
    }
  }
  return Polynomial::monomial(p.ring(), std::move(inv), ring.field().inv(t.coeff));
}

Polynomial substitute(const Polynomial& p, const Assignment& assignment, const RingPtr& target) {
  const Ring& src = *p.ring();
  std::vector<Polynomial> images;
  images.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    auto it = assignment.find(src.name(i));
    if (it != assignment.end()) {
      if (!same_ring(it->second.ring(), target)) {
        throw RingMismatch("image of '" + src.name(i) + "' is not in the target ring");
      }
      images.push_back(it->second);
    } else {
      images.push_back(Polynomial(target));  // placeholder, filled below
    }
  }
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (assignment.count(src.name(i))) continue;
    auto owner = src.companion(i);
    if (owner && assignment.count(src.name(*owner))) {
      // Companion of an assigned variable (or assigned companion's owner).
      const auto& image = assignment.at(src.name(*owner));
      auto inv = unit_monomial_inverse(image);
      if (!inv) {
        throw LocalizationViolated("image '" + print_polynomial(image) + "' of '" +
                                   src.name(*owner) + "' is not a certified unit");
      }
      images[i] = *inv;
      continue;
    }
    auto ti = target->index_of(src.name(i));
    if (!ti) throw Error("variable '" + src.name(i) + "' has no image in the target ring");
    images[i] = Polynomial::variable(target, src.name(i));
  }
  const auto& field = target->field();
  Polynomial result(target);
  // Cache powers per variable to avoid recomputation across terms.
  std::vector<std::map<std::int32_t, Polynomial>> powers(src.size());
  auto power = [&](std::size_t var, std::int32_t e) -> const Polynomial& {
    auto& cache = powers[var];
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    Polynomial value(target);
    if (e >= 0) {
      value = images[var].pow(static_cast<unsigned>(e));
    } else {
      auto inv = unit_monomial_inverse(images[var]);
      if (!inv) {
        throw LocalizationViolated("negative power of '" + src.name(var) +
                                   "' needs a unit image");
      }
      value = inv->pow(static_cast<unsigned>(-static_cast<std::int64_t>(e)));
    }
    return cache.emplace(e, std::move(value)).first->second;
  };
  for (const auto& t : p.terms()) {
    Polynomial term = Polynomial::constant(target, field.reduce(t.coeff));
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (t.exponents[i] != 0) term = term * power(i, t.exponents[i]);
    }
    result = result + term;
  }
  return result;
}

Polynomial substitute(const Polynomial& p, const Assignment& assignment) {
  return substitute(p, assignment, p.ring());
}

Polynomial laurent_encode(const Polynomial& p) {
  const Ring& ring = *p.ring();
  std::vector<Term> terms = p.terms();
  for (auto& t : terms) {
    for (std::size_t i = 0; i < ring.size(); ++i) {
      if (t.exponents[i] >= 0) continue;
      if (!ring.is_inverted(i)) {
        throw Error("negative exponent on variable '" + ring.name(i) + "' which is not inverted");
      }
      const std::size_t c = *ring.companion(i);
      t.exponents[c] = checked_exponent(static_cast<std::int64_t>(t.exponents[c]) - t.exponents[i]);
      t.exponents[i] = 0;
    }
  }
  return Polynomial::from_terms(p.ring(), std::move(terms));
}

Polynomial embed(const Polynomial& p, const RingPtr& target) {
  if (same_ring(p.ring(), target)) return Polynomial::from_terms(target, p.terms());
  const Ring& src = *p.ring();
  std::vector<std::size_t> map(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    auto ti = target->index_of(src.name(i));
    if (!ti) {
      if (p.involves(i)) throw Error("variable '" + src.name(i) + "' missing from target ring");
      map[i] = target->size();
    } else {
      map[i] = *ti;
    }
  }
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    Monomial m(target->size(), 0);
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (t.exponents[i] != 0) m[map[i]] = t.exponents[i];
    }
    terms.push_back(Term{std::move(m), t.coeff});
  }
  return Polynomial::from_terms(target, std::move(terms));
}

std::optional<long> laurent_valuation(const Polynomial& p, std::size_t var) {
  if (p.is_zero()) return std::nullopt;
  auto c = p.ring()->companion(var);
  long best = std::numeric_limits<long>::max();
  for (const auto& t : p.terms()) {
    long v = t.exponents[var];
    if (c) v -= t.exponents[*c];
    best = std::min(best, v);
  }
  return best;
}

}  // namespace flf
