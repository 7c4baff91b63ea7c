#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "flf/ring.hpp"

namespace flf {

struct Term {
  Monomial exponents;
  mpq_class coeff;
};

/// Exact multivariate (Laurent) polynomial. Immutable value type.
///
/// Terms are kept sorted descending in grevlex, with no zero coefficients
/// and no repeated monomials; two equal polynomials therefore have identical
/// term vectors.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr ring, const mpq_class& c);
  static Polynomial constant(RingPtr ring, long c) { return constant(ring, mpq_class(c)); }
  static Polynomial variable(RingPtr ring, const std::string& name);
  static Polynomial monomial(RingPtr ring, Monomial exponents, const mpq_class& c);
  /// Canonicalizes an arbitrary term list: merges repeats, reduces
  /// coefficients, drops zeros, sorts.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value of a constant polynomial (0 for the zero polynomial).
  std::optional<mpq_class> constant_value() const;
  long total_degree() const;
  bool involves(std::size_t var) const;
  bool has_negative_exponents() const;
  /// Coefficient of an exact monomial (0 if absent).
  mpq_class coefficient(const Monomial& m) const;

  Polynomial operator-() const;
  Polynomial scaled(const mpq_class& c) const;
  Polynomial pow(unsigned e) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  std::string to_string() const;

 private:
  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Canonical representative of a term list (idempotent).
Polynomial normalize(const Polynomial& p);

using Assignment = std::map<std::string, Polynomial>;

/// Ring homomorphism from p's ring into `target`.
///
/// Variables missing from `assignment` go to the same-named variable of
/// `target`. When an inverted variable v is assigned but v_inv is not, the
/// image of v must be a unit monomial (nonzero constant times inverted
/// variables and their companions); its inverse is then used for v_inv.
/// Any other image throws LocalizationViolated.
Polynomial substitute(const Polynomial& p, const Assignment& assignment, const RingPtr& target);

/// Same ring; only the listed variables change.
Polynomial substitute(const Polynomial& p, const Assignment& assignment);

/// Inverse of a unit monomial, if `p` is one.
std::optional<Polynomial> unit_monomial_inverse(const Polynomial& p);

/// Rewrites t^-k as t_inv^k. Negative exponents on variables that are not
/// inverted throw flf::Error.
Polynomial laurent_encode(const Polynomial& p);

/// Same polynomial read in another ring whose variables include p's support.
Polynomial embed(const Polynomial& p, const RingPtr& target);

/// Laurent valuation in variable `var`: min over terms of
/// exp(var) - exp(companion). Empty for the zero polynomial.
std::optional<long> laurent_valuation(const Polynomial& p, std::size_t var);

}  // namespace flf
