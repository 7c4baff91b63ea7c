#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flf/errors.hpp"
#include "flf/scheme.hpp"

namespace flf {

using PolyMatrix = std::vector<std::vector<Polynomial>>;

/// Cokernel of `relations` (one row per relation, one column per
/// generator) over O(base).
struct ModulePresentation {
  AffineScheme base;
  /// Generator monomials, printed in the algebra's ring.
  std::vector<Polynomial> generators;
  /// Entries live in base.ring().
  PolyMatrix relations;
};

class NotFinite : public Error {
 public:
  explicit NotFinite(std::string variable)
      : Error("not finite over base: no monic relation in '" + variable + "'"),
        variable_(std::move(variable)) {}
  const std::string& variable() const { return variable_; }

 private:
  std::string variable_;
};

class Inconclusive : public Error {
 public:
  using Error::Error;
};

/// Staircase analysis of an algebra over its base under the block order
/// (fiber variables first).
struct FiberAnalysis {
  std::vector<bool> fiber;
  GroebnerBasis gb;       // block order, cofactors tracked
  GroebnerBasis base_gb;  // grevlex on the base ring, cofactors tracked
  bool empty = false;
  /// Contraction elements (base ring) that are not in the base ideal.
  std::vector<Polynomial> torsion;
  /// A fiber variable with no pure-power leading monomial.
  std::optional<std::string> infinite_direction;
  /// Basis elements whose leading monomial mixes fiber and base variables.
  std::vector<Polynomial> mixed;
  /// Fiber staircase, ascending; valid when infinite_direction is empty.
  std::vector<Monomial> staircase;
};

FiberAnalysis analyze_fibers(const PresentedAlgebra& algebra, const GroebnerOptions& options = {});

/// Presentation of O(total) as an O(base)-module on the fiber staircase.
/// Throws NotFinite or Inconclusive.
ModulePresentation module_presentation(const PresentedAlgebra& algebra,
                                       const GroebnerOptions& options = {});

/// Generators of Fitt_r: the (g - r)-minors, g = number of generators.
/// Throws Inconclusive when more than `minor_budget` minors would be needed.
std::vector<Polynomial> fitting_ideal(const ModulePresentation& m, std::size_t r,
                                      std::size_t minor_budget = 100'000);

/// Fitt_r = 0 in O(base).
bool fitting_is_zero(const ModulePresentation& m, std::size_t r, const GroebnerOptions& options = {});
/// Fitt_r = O(base).
bool fitting_is_unit(const ModulePresentation& m, std::size_t r, const GroebnerOptions& options = {});
/// r with Fitt_{r-1} = 0 and Fitt_r = (1), if any.
std::optional<std::size_t> locally_free_rank(const ModulePresentation& m,
                                             const GroebnerOptions& options = {});

Polynomial determinant(const PolyMatrix& square, const RingPtr& ring);

/// Fiber part of a monomial of the algebra ring.
Monomial fiber_part(const Monomial& m, const std::vector<bool>& fiber);
Monomial base_part(const Monomial& m, const std::vector<bool>& fiber);

}  // namespace flf
