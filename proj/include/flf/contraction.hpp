#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "flf/spans.hpp"

namespace flf {

/// W = {w != 0} in X x A^1_u and f: W -> X, with base point x0.
struct ContractionDatum {
  AffineScheme x;
  std::vector<std::string> coordinates;  // owners, one per factor
  std::vector<mpq_class> base_point;
  std::string u;
  AffineScheme x_line;                   // X x A^1_u
  Polynomial w;                          // on x_line
  Assignment f;                          // coordinate -> polynomial on x_line
};

/// X = Gm^n with coordinates t1..tn, x0 = (1,...,1), w = prod(u t_i + 1 - u),
/// f_i = u t_i + 1 - u.
ContractionDatum standard_contraction_data(int n, const CoefficientField& field = CoefficientField::rationals());

struct DatumCheck {
  bool w_at_zero_is_one = false;
  bool w_unit_along_base_point = false;
  bool f_at_one_is_identity = false;
  bool f_at_zero_is_base_point = false;
  bool f_fixes_base_point = false;
  bool f_invertible_on_w = false;  // each f_i divides w
  bool passed() const {
    return w_at_zero_is_one && w_unit_along_base_point && f_at_one_is_identity && f_at_zero_is_base_point &&
           f_fixes_base_point && f_invertible_on_w;
  }
};

DatumCheck check_datum(const ContractionDatum& datum, const GroebnerOptions& options = {});

/// One standard open D(g) of U with the span D(g) <- W'_g -> X.
struct ContractedPiece {
  Polynomial generator;  // g on Y x A^1_u
  std::string localizer; // z with z*g = 1
  Correspondence span;
  FlfOutcome outcome;    // certification of W'_g over D(g)
};

struct ContractedCorrespondence {
  std::string u;
  Ideal v_prime;         // (w o q) + I_Z on Z x A^1
  Ideal v_double_prime;  // its image in Y x A^1 (elimination of fiber variables)
  bool avoids_zero = false;  // V'' + (u) = (1)
  bool avoids_one = false;   // V'' + (u - 1) = (1)
  std::vector<ContractedPiece> pieces;
  /// Failed invariants; these would contradict the construction.
  std::vector<std::string> red_flags;
};

/// alpha: Y -> X certified; X must be datum.x. Throws flf::Error on an
/// invalid datum.
ContractedCorrespondence contract(const Correspondence& alpha, const ContractionDatum& datum,
                                  const GroebnerOptions& options = {});

struct EndpointReport {
  /// Restrictions of s(alpha) to u = 0 and u = 1, as spans Y -> X.
  std::optional<Correspondence> at_zero;
  std::optional<Correspondence> at_one;
  bool zero_equals_alpha = false;
  bool one_equals_alpha = false;
  bool zero_constant = false;  // target map lands in the ideal of x0
  bool one_constant = false;
  bool avoids_zero = false;
  bool avoids_one = false;
  std::string identity_at;  // "u=0", "u=1" or ""
  std::string constant_at;
  std::string detail;
  /// Exactly one endpoint equals alpha and the other factors through x0.
  bool dichotomy() const;
  bool passed() const { return avoids_zero && avoids_one && dichotomy(); }
};

EndpointReport verify_contraction_endpoints(const Correspondence& alpha, const ContractionDatum& datum,
                                            const GroebnerOptions& options = {});

/// Inverse of `g` in ring/ideal, when g is a unit there.
std::optional<Polynomial> unit_inverse(const Ideal& ideal, const Polynomial& g, const GroebnerOptions& options = {});

}  // namespace flf
