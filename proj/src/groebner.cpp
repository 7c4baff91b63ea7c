#include "flf/groebner.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "flf/errors.hpp"

namespace flf {

namespace {

using Ordered = std::vector<Term>;

bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

Monomial quotient(const Monomial& b, const Monomial& a) {
  Monomial q(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) q[i] = b[i] - a[i];
  return q;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial l(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) l[i] = std::max(a[i], b[i]);
  return l;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > 0 && b[i] > 0) return false;
  }
  return true;
}

Monomial times(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::int64_t e = static_cast<std::int64_t>(a[i]) + b[i];
    if (e > INT32_MAX) throw DegreeOverflow();
    r[i] = static_cast<std::int32_t>(e);
  }
  return r;
}

/// Arithmetic on order-sorted term vectors plus the step budget.
class Engine {
 public:
  Engine(const RingPtr& ring, const MonomialOrder& order, std::size_t budget)
      : ring_(ring), field_(ring->field()), order_(order), budget_(budget) {}

  Ordered to_ordered(const Polynomial& p) const {
    for (const auto& t : p.terms()) {
      for (auto e : t.exponents) {
        if (e < 0) throw Error("Groebner input must be Laurent-encoded (negative exponent found)");
      }
    }
    Ordered out = p.terms();
    std::sort(out.begin(), out.end(),
              [&](const Term& a, const Term& b) { return order_.greater(a.exponents, b.exponents); });
    return out;
  }

  Polynomial to_poly(const Ordered& o) const { return Polynomial::from_terms(ring_, o); }

  /// a[from..] - c*m*g, sorted.
  Ordered sub_mul(const Ordered& a, std::size_t from, const mpq_class& c, const Monomial& m,
                  const Ordered& g) const {
    Ordered out;
    out.reserve(a.size() - from + g.size());
    std::size_t i = from;
    std::size_t j = 0;
    Monomial shifted;
    bool have_shifted = false;
    while (i < a.size() || j < g.size()) {
      if (j < g.size() && !have_shifted) {
        shifted = times(g[j].exponents, m);
        have_shifted = true;
      }
      int cmp;
      if (i == a.size()) {
        cmp = -1;
      } else if (j == g.size()) {
        cmp = 1;
      } else {
        cmp = order_.compare(a[i].exponents, shifted);
      }
      if (cmp > 0) {
        out.push_back(a[i++]);
      } else if (cmp < 0) {
        out.push_back(Term{shifted, field_.neg(field_.mul(c, g[j].coeff))});
        ++j;
        have_shifted = false;
      } else {
        mpq_class v = field_.sub(a[i].coeff, field_.mul(c, g[j].coeff));
        if (v != 0) out.push_back(Term{a[i].exponents, v});
        ++i;
        ++j;
        have_shifted = false;
      }
    }
    return out;
  }

  Ordered scaled(const Ordered& a, const mpq_class& c) const {
    Ordered out = a;
    for (auto& t : out) t.coeff = field_.mul(t.coeff, c);
    return out;
  }

  void tick() {
    if (++steps_ > budget_) throw BudgetExhausted(steps_ - 1, basis_size_, pending_);
  }

  void set_diagnostics(std::size_t basis_size, std::size_t pending) {
    basis_size_ = basis_size;
    pending_ = pending;
  }

  const CoefficientField& field() const { return field_; }
  const MonomialOrder& order() const { return order_; }
  std::size_t steps() const { return steps_; }

 private:
  RingPtr ring_;
  const CoefficientField& field_;
  const MonomialOrder& order_;
  std::size_t budget_;
  std::size_t steps_ = 0;
  std::size_t basis_size_ = 0;
  std::size_t pending_ = 0;
};

struct Element {
  Ordered poly;
  std::vector<Ordered> cof;  // empty when cofactors are not tracked
  bool active = true;
};

/// Full reduction of f (with cofactors) modulo the active elements, skipping
/// index `skip`. Returns the remainder.
void reduce(Engine& eng, Ordered& f, std::vector<Ordered>* fcof, const std::vector<Element>& basis,
            std::size_t skip = static_cast<std::size_t>(-1)) {
  Ordered remainder;
  std::size_t pos = 0;
  while (pos < f.size()) {
    const Term& head = f[pos];
    const Element* divisor = nullptr;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (k == skip || !basis[k].active) continue;
      if (divides(basis[k].poly.front().exponents, head.exponents)) {
        divisor = &basis[k];
        break;
      }
    }
    if (!divisor) {
      remainder.push_back(head);
      ++pos;
      continue;
    }
    eng.tick();
    const Ordered& g = divisor->poly;
    const mpq_class c = eng.field().div(head.coeff, g.front().coeff);
    const Monomial m = quotient(head.exponents, g.front().exponents);
    if (fcof) {
      for (std::size_t j = 0; j < fcof->size(); ++j) {
        if (divisor->cof[j].empty()) continue;
        (*fcof)[j] = eng.sub_mul((*fcof)[j], 0, c, m, divisor->cof[j]);
      }
    }
    f = eng.sub_mul(f, pos, c, m, g);
    pos = 0;
  }
  f = std::move(remainder);
}

void make_monic(Engine& eng, Element& e) {
  if (e.poly.empty()) return;
  const mpq_class inv = eng.field().inv(e.poly.front().coeff);
  if (inv == 1) return;
  e.poly = eng.scaled(e.poly, inv);
  for (auto& c : e.cof) c = eng.scaled(c, inv);
}

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
  std::size_t serial;
};

}  // namespace

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> generators) : ring_(std::move(ring)) {
  for (auto& g : generators) {
    if (!same_ring(g.ring(), ring_)) throw RingMismatch("ideal generator lives in another ring");
    if (!g.is_zero()) generators_.push_back(std::move(g));
  }
}

Ideal Ideal::plus(const Ideal& other) const {
  std::vector<Polynomial> gens = generators_;
  for (const auto& g : other.generators()) gens.push_back(g);
  return Ideal(ring_, std::move(gens));
}

Ideal Ideal::plus(const Polynomial& p) const {
  std::vector<Polynomial> gens = generators_;
  gens.push_back(p);
  return Ideal(ring_, std::move(gens));
}

bool GroebnerBasis::is_unit() const {
  return basis_.size() == 1 && basis_[0].is_constant() && !basis_[0].is_zero();
}

GroebnerBasis GroebnerBasis::from_claimed(RingPtr ring, MonomialOrder order,
                                          std::vector<Polynomial> generators,
                                          std::vector<Polynomial> basis,
                                          std::vector<std::vector<Polynomial>> cofactors) {
  GroebnerBasis gb(ring, order);
  Engine eng(ring, gb.order_, 0);
  gb.generators_ = std::move(generators);
  for (auto& b : basis) {
    if (b.is_zero()) throw Error("claimed basis contains zero");
    gb.ordered_.push_back(eng.to_ordered(b));
  }
  gb.basis_ = std::move(basis);
  gb.tracked_ = cofactors.size() == gb.basis_.size();
  gb.cofactors_ = std::move(cofactors);
  return gb;
}

GroebnerBasis buchberger(const Ideal& ideal, const MonomialOrder& order,
                         const GroebnerOptions& options) {
  const RingPtr& ring = ideal.ring();
  if (order.kind() == MonomialOrder::Kind::block && order.first_block().size() != ring->size()) {
    throw Error("block order does not match the ring size");
  }
  Engine eng(ring, order, options.budget);
  const auto& gens = ideal.generators();
  const std::size_t ngens = gens.size();
  const bool track = options.track_cofactors;

  std::vector<Element> basis;
  std::vector<Pair> pending;
  std::set<std::pair<std::size_t, std::size_t>> pending_set;
  std::size_t serial = 0;

  auto add_element = [&](Element e) {
    make_monic(eng, e);
    const std::size_t idx = basis.size();
    basis.push_back(std::move(e));
    for (std::size_t i = 0; i < idx; ++i) {
      pending.push_back(Pair{i, idx, lcm(basis[i].poly.front().exponents,
                                         basis[idx].poly.front().exponents),
                             serial++});
      pending_set.insert({i, idx});
    }
  };

  for (std::size_t g = 0; g < ngens; ++g) {
    Element e;
    e.poly = eng.to_ordered(gens[g]);
    if (track) {
      e.cof.assign(ngens, Ordered{});
      e.cof[g] = Ordered{Term{Monomial(ring->size(), 0), mpq_class(1)}};
    }
    reduce(eng, e.poly, track ? &e.cof : nullptr, basis);
    if (!e.poly.empty()) add_element(std::move(e));
  }

  std::mt19937_64 rng(options.seed);
  while (!pending.empty()) {
    eng.set_diagnostics(basis.size(), pending.size());
    std::size_t pick = 0;
    switch (options.strategy) {
      case PairStrategy::normal:
        for (std::size_t k = 1; k < pending.size(); ++k) {
          const int c = order.compare(pending[k].lcm, pending[pick].lcm);
          if (c < 0 || (c == 0 && pending[k].serial < pending[pick].serial)) pick = k;
        }
        break;
      case PairStrategy::fifo:
        for (std::size_t k = 1; k < pending.size(); ++k) {
          if (pending[k].serial < pending[pick].serial) pick = k;
        }
        break;
      case PairStrategy::random:
        pick = std::uniform_int_distribution<std::size_t>(0, pending.size() - 1)(rng);
        break;
    }
    const Pair pr = pending[pick];
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(pick));
    pending_set.erase({pr.i, pr.j});

    const Ordered& fi = basis[pr.i].poly;
    const Ordered& fj = basis[pr.j].poly;
    if (coprime(fi.front().exponents, fj.front().exponents)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!divides(basis[k].poly.front().exponents, pr.lcm)) continue;
      const auto ik = std::minmax(pr.i, k);
      const auto jk = std::minmax(pr.j, k);
      if (!pending_set.count({ik.first, ik.second}) && !pending_set.count({jk.first, jk.second})) {
        chain = true;
      }
    }
    if (chain) continue;

    // S-polynomial: lcm/LM(fi) * fi - lcm/LM(fj) * fj (both monic).
    Element s;
    const Monomial mi = quotient(pr.lcm, fi.front().exponents);
    const Monomial mj = quotient(pr.lcm, fj.front().exponents);
    const mpq_class minus_one = eng.field().neg(mpq_class(1));
    s.poly = eng.sub_mul(Ordered{}, 0, minus_one, mi, fi);
    s.poly = eng.sub_mul(s.poly, 0, mpq_class(1), mj, fj);
    if (track) {
      s.cof.assign(ngens, Ordered{});
      for (std::size_t g = 0; g < ngens; ++g) {
        s.cof[g] = eng.sub_mul(Ordered{}, 0, minus_one, mi, basis[pr.i].cof[g]);
        s.cof[g] = eng.sub_mul(s.cof[g], 0, mpq_class(1), mj, basis[pr.j].cof[g]);
      }
    }
    eng.tick();
    reduce(eng, s.poly, track ? &s.cof : nullptr, basis);
    if (!s.poly.empty()) add_element(std::move(s));
  }

  // Minimalize: drop elements whose leading monomial is divisible by another's.
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (i == j || !basis[j].active) continue;
      const auto& li = basis[i].poly.front().exponents;
      const auto& lj = basis[j].poly.front().exponents;
      if (divides(lj, li) && (li != lj || j < i)) {
        basis[i].active = false;
        break;
      }
    }
  }
  // Interreduce tails.
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!basis[i].active) continue;
    reduce(eng, basis[i].poly, track ? &basis[i].cof : nullptr, basis, i);
    make_monic(eng, basis[i]);
  }

  std::vector<Element*> kept;
  for (auto& e : basis) {
    if (e.active) kept.push_back(&e);
  }
  std::sort(kept.begin(), kept.end(), [&](const Element* a, const Element* b) {
    return order.greater(a->poly.front().exponents, b->poly.front().exponents);
  });

  GroebnerBasis gb(ring, order);
  gb.generators_ = gens;
  gb.tracked_ = track;
  for (Element* e : kept) {
    gb.basis_.push_back(eng.to_poly(e->poly));
    gb.ordered_.push_back(e->poly);
    if (track) {
      std::vector<Polynomial> cof;
      for (const auto& c : e->cof) cof.push_back(eng.to_poly(c));
      gb.cofactors_.push_back(std::move(cof));
    }
  }
  gb.steps_ = eng.steps();
  return gb;
}

namespace {

std::vector<Element> as_elements(const GroebnerBasis& gb) {
  std::vector<Element> basis;
  for (std::size_t i = 0; i < gb.size(); ++i) basis.push_back(Element{gb.ordered(i), {}, true});
  return basis;
}

}  // namespace

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb, std::size_t budget) {
  if (!same_ring(p.ring(), gb.ring())) throw RingMismatch("normal_form: ring mismatch");
  Engine eng(gb.ring(), gb.order(), budget);
  Ordered f = eng.to_ordered(p);
  reduce(eng, f, nullptr, as_elements(gb));
  return eng.to_poly(f);
}

bool ideal_contains(const GroebnerBasis& gb, const Polynomial& p) {
  return normal_form(p, gb).is_zero();
}

bool satisfies_buchberger_criterion(const GroebnerBasis& gb, std::size_t budget) {
  Engine eng(gb.ring(), gb.order(), budget);
  const auto basis = as_elements(gb);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      const Ordered& fi = basis[i].poly;
      const Ordered& fj = basis[j].poly;
      if (coprime(fi.front().exponents, fj.front().exponents)) continue;
      const Monomial l = lcm(fi.front().exponents, fj.front().exponents);
      const mpq_class ci = eng.field().inv(fi.front().coeff);
      const mpq_class cj = eng.field().inv(fj.front().coeff);
      Ordered s = eng.sub_mul(Ordered{}, 0, eng.field().neg(ci), quotient(l, fi.front().exponents), fi);
      s = eng.sub_mul(s, 0, cj, quotient(l, fj.front().exponents), fj);
      reduce(eng, s, nullptr, basis);
      if (!s.empty()) return false;
    }
  }
  return true;
}

bool is_reduced(const GroebnerBasis& gb) {
  for (std::size_t i = 0; i < gb.size(); ++i) {
    if (gb.ordered(i).front().coeff != 1) return false;
    for (std::size_t j = 0; j < gb.size(); ++j) {
      if (i == j) continue;
      for (const auto& t : gb.ordered(i)) {
        if (divides(gb.leading_monomial(j), t.exponents)) return false;
      }
    }
  }
  return true;
}

std::string fresh_name(const Ring& ring, const std::string& stem) {
  if (!ring.index_of(stem)) return stem;
  for (int k = 2;; ++k) {
    std::string candidate = stem + "_" + std::to_string(k);
    if (!ring.index_of(candidate)) return candidate;
  }
}

Ideal eliminate(const Ideal& ideal, const std::vector<std::string>& drop,
                const GroebnerOptions& options) {
  const Ring& ring = *ideal.ring();
  std::vector<bool> first(ring.size(), false);
  for (const auto& name : drop) first[ring.require(name)] = true;
  if (drop.empty()) return canonical(ideal, options);
  GroebnerBasis gb = buchberger(ideal, MonomialOrder::block(first), options);
  std::vector<Polynomial> kept;
  for (const auto& b : gb.basis()) {
    bool uses = false;
    for (std::size_t i = 0; i < ring.size(); ++i) {
      if (first[i] && b.involves(i)) uses = true;
    }
    if (!uses) kept.push_back(b);
  }
  return Ideal(ideal.ring(), std::move(kept));
}

namespace {

/// ring extended by one leading variable, plus the embedded ideal.
std::pair<RingPtr, std::string> with_aux(const Ring& ring) {
  const std::string y = fresh_name(ring, "aux_y");
  std::vector<std::string> names{y};
  for (const auto& n : ring.names()) names.push_back(n);
  return {make_ring(ring.field(), std::move(names), ring.inverted_names()), y};
}

Ideal back_to(const Ideal& ideal, const RingPtr& ring) {
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(embed(g, ring));
  return Ideal(ring, std::move(gens));
}

}  // namespace

Ideal saturate(const Ideal& ideal, const Polynomial& g, const GroebnerOptions& options) {
  if (g.is_zero()) throw Error("saturation by zero");
  auto [ext, y] = with_aux(*ideal.ring());
  std::vector<Polynomial> gens;
  for (const auto& f : ideal.generators()) gens.push_back(embed(f, ext));
  gens.push_back(Polynomial::constant(ext, 1) - Polynomial::variable(ext, y) * embed(g, ext));
  return back_to(eliminate(Ideal(ext, std::move(gens)), {y}, options), ideal.ring());
}

Ideal intersect(const Ideal& a, const Ideal& b, const GroebnerOptions& options) {
  if (!same_ring(a.ring(), b.ring())) throw RingMismatch("intersect: ring mismatch");
  auto [ext, y] = with_aux(*a.ring());
  const Polynomial yv = Polynomial::variable(ext, y);
  const Polynomial one_minus_y = Polynomial::constant(ext, 1) - yv;
  std::vector<Polynomial> gens;
  for (const auto& f : a.generators()) gens.push_back(yv * embed(f, ext));
  for (const auto& f : b.generators()) gens.push_back(one_minus_y * embed(f, ext));
  return back_to(eliminate(Ideal(ext, std::move(gens)), {y}, options), a.ring());
}

Ideal canonical(const Ideal& ideal, const GroebnerOptions& options) {
  GroebnerBasis gb = buchberger(ideal, MonomialOrder::grevlex(), options);
  return Ideal(ideal.ring(), gb.basis());
}

bool ideals_equal(const Ideal& a, const Ideal& b, const GroebnerOptions& options) {
  if (!same_ring(a.ring(), b.ring())) throw RingMismatch("ideals_equal: ring mismatch");
  return canonical(a, options).generators() == canonical(b, options).generators();
}

bool is_unit_ideal(const Ideal& ideal, const GroebnerOptions& options) {
  return buchberger(ideal, MonomialOrder::grevlex(), options).is_unit();
}

}  // namespace flf
