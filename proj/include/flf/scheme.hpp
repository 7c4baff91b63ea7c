#pragma once

#include <map>
#include <string>
#include <vector>

#include "flf/groebner.hpp"

namespace flf {

/// Spec of ring / (relations + unit relations of inverted variables).
class AffineScheme {
 public:
  AffineScheme(RingPtr ring, std::vector<Polynomial> relations = {});

  const RingPtr& ring() const { return ring_; }
  /// Relations as declared, without the unit relations.
  const std::vector<Polynomial>& relations() const { return relations_; }
  /// Declared relations followed by v*v_inv - 1 for each inverted v.
  const Ideal& ideal() const { return ideal_; }
  const CoefficientField& field() const { return ring_->field(); }

  /// O(X) = 0.
  bool is_empty(const GroebnerOptions& options = {}) const;

 private:
  RingPtr ring_;
  std::vector<Polynomial> relations_;
  Ideal ideal_;
};

AffineScheme point(const CoefficientField& field);
AffineScheme affine_line(const CoefficientField& field, const std::string& var);
AffineScheme multiplicative_group(const CoefficientField& field, const std::string& var);

/// X x Y over k. Variable names must be disjoint.
AffineScheme product(const AffineScheme& x, const AffineScheme& y);

/// Renames variables (companions follow their owners).
AffineScheme rename(const AffineScheme& x, const std::map<std::string, std::string>& names);

/// Same ring (names, order, inversion) and the same ideal.
bool same_presentation(const AffineScheme& a, const AffineScheme& b,
                       const GroebnerOptions& options = {});

/// Same variables by name (order ignored), same inversion flags and the
/// same ideal.
bool same_scheme(const AffineScheme& a, const AffineScheme& b, const GroebnerOptions& options = {});

/// A scheme Z whose ring contains the base scheme's variables by name; the
/// remaining variables are fiber coordinates. The structure map is the
/// inclusion of base coordinates.
struct PresentedAlgebra {
  AffineScheme total;
  AffineScheme base;

  /// Checks that base variables occur in total with the same inversion
  /// flags and that base relations vanish in O(total).
  void validate(const GroebnerOptions& options = {}) const;
  std::vector<bool> fiber_mask() const;
  std::vector<std::string> fiber_names() const;
};

/// Companion-aware rename map: every listed owner v -> w also maps
/// v_inv -> w_inv.
std::map<std::string, std::string> with_companions(const Ring& ring,
                                                   const std::map<std::string, std::string>& names);

/// Strips a trailing "_<digits>" suffix introduced by fresh naming.
std::string name_stem(const std::string& name);

}  // namespace flf
