#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flf/monomial_order.hpp"
#include "flf/polynomial.hpp"

namespace flf {

/// Generators of an ideal; zero generators are dropped, so the zero ideal
/// is the empty list.
class Ideal {
 public:
  explicit Ideal(RingPtr ring, std::vector<Polynomial> generators = {});

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return generators_; }
  bool is_zero() const { return generators_.empty(); }

  Ideal plus(const Ideal& other) const;
  Ideal plus(const Polynomial& p) const;

 private:
  RingPtr ring_;
  std::vector<Polynomial> generators_;
};

/// S-pair selection schedule. The reduced basis does not depend on it.
enum class PairStrategy { normal, fifo, random };

struct GroebnerOptions {
  std::size_t budget = 1'000'000;  // reduction steps
  PairStrategy strategy = PairStrategy::normal;
  std::uint64_t seed = 0;  // used by PairStrategy::random
  bool track_cofactors = false;
};

/// Reduced Groebner basis: monic, interreduced, sorted by decreasing
/// leading monomial.
class GroebnerBasis {
 public:
  const RingPtr& ring() const { return ring_; }
  const MonomialOrder& order() const { return order_; }
  /// Input generators, in the order the cofactors refer to.
  const std::vector<Polynomial>& generators() const { return generators_; }
  const std::vector<Polynomial>& basis() const { return basis_; }
  std::size_t size() const { return basis_.size(); }
  const Monomial& leading_monomial(std::size_t i) const { return ordered_[i].front().exponents; }
  bool is_unit() const;
  bool has_cofactors() const { return tracked_; }
  /// basis()[i] == sum_j cofactors()[i][j] * generators()[j].
  const std::vector<std::vector<Polynomial>>& cofactors() const { return cofactors_; }
  std::size_t steps() const { return steps_; }

  /// Basis polynomial sorted by this basis' order (leading term first).
  const std::vector<Term>& ordered(std::size_t i) const { return ordered_[i]; }

  /// Builds a basis from claimed data without running Buchberger; used to
  /// re-check certificates. No validation is done here.
  static GroebnerBasis from_claimed(RingPtr ring, MonomialOrder order,
                                    std::vector<Polynomial> generators,
                                    std::vector<Polynomial> basis,
                                    std::vector<std::vector<Polynomial>> cofactors = {});

 private:
  friend GroebnerBasis buchberger(const Ideal&, const MonomialOrder&, const GroebnerOptions&);
  GroebnerBasis(RingPtr ring, MonomialOrder order) : ring_(std::move(ring)), order_(std::move(order)) {}

  RingPtr ring_;
  MonomialOrder order_;
  std::vector<Polynomial> generators_;
  std::vector<Polynomial> basis_;
  std::vector<std::vector<Term>> ordered_;
  std::vector<std::vector<Polynomial>> cofactors_;
  std::size_t steps_ = 0;
  bool tracked_ = false;
};

/// Buchberger's algorithm with the product and chain criteria.
/// Throws BudgetExhausted when options.budget reduction steps are used up.
GroebnerBasis buchberger(const Ideal& ideal, const MonomialOrder& order,
                         const GroebnerOptions& options = {});

/// Fully reduced remainder of p modulo the basis.
Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb,
                       std::size_t budget = 1'000'000);

bool ideal_contains(const GroebnerBasis& gb, const Polynomial& p);

/// Buchberger's criterion on claimed data: every S-polynomial of the basis
/// reduces to zero. Does not compute a basis.
bool satisfies_buchberger_criterion(const GroebnerBasis& gb, std::size_t budget = 1'000'000);

/// True iff no basis element has a term divisible by another element's
/// leading monomial and every leading coefficient is 1.
bool is_reduced(const GroebnerBasis& gb);

/// I intersected with the subring free of `drop`, via a block order placing
/// `drop` first. Generators stay in I's ring.
Ideal eliminate(const Ideal& ideal, const std::vector<std::string>& drop,
                const GroebnerOptions& options = {});

/// (I : g^infinity) via an auxiliary variable y and the relation 1 - y*g.
Ideal saturate(const Ideal& ideal, const Polynomial& g, const GroebnerOptions& options = {});

Ideal intersect(const Ideal& a, const Ideal& b, const GroebnerOptions& options = {});

/// Reduced grevlex bases coincide.
bool ideals_equal(const Ideal& a, const Ideal& b, const GroebnerOptions& options = {});
bool is_unit_ideal(const Ideal& ideal, const GroebnerOptions& options = {});

/// Reduced grevlex basis as an ideal (canonical generators).
Ideal canonical(const Ideal& ideal, const GroebnerOptions& options = {});

/// Name not present in `ring`, derived from `stem`.
std::string fresh_name(const Ring& ring, const std::string& stem);

}  // namespace flf
