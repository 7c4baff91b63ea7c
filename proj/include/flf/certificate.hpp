#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flf/module.hpp"

namespace flf {

/// A claimed reduced Groebner basis together with cofactors expressing each
/// basis element in the generators. Checking it needs only reductions.
struct IdealCertificate {
  RingPtr ring;
  MonomialOrder order = MonomialOrder::grevlex();
  std::vector<Polynomial> generators;
  std::vector<Polynomial> basis;
  std::vector<std::vector<Polynomial>> cofactors;

  /// Requires a basis computed with cofactor tracking.
  static IdealCertificate from(const GroebnerBasis& gb);
  GroebnerBasis as_basis() const;

  /// Confirms: basis is reduced, satisfies Buchberger's criterion, every
  /// generator reduces to zero, and each cofactor row sums to its basis
  /// element. Together these show basis is the reduced basis of (generators).
  bool verify(std::string* why = nullptr, std::size_t budget = 1'000'000) const;
};

/// Computes the reduced basis of `ideal` with cofactors.
IdealCertificate certify_ideal(const Ideal& ideal, const MonomialOrder& order,
                               const GroebnerOptions& options = {});

/// Finite-local-freeness certificate of O(Z) over O(X): a free basis of
/// fiber staircase monomials with multiplication matrices.
struct FlfCertificate {
  std::vector<std::string> fiber_variables;
  IdealCertificate algebra;  // block order on the algebra ring
  IdealCertificate base;     // grevlex on the base ring
  /// Staircase monomials e_1..e_d in the algebra ring, e_1 = 1.
  std::vector<Polynomial> basis;
  /// For each fiber variable x: entry [i][j] is the coefficient of e_j in
  /// x*e_i, a base-ring polynomial in normal form.
  std::map<std::string, PolyMatrix> multiplication;
  std::size_t rank = 0;
  /// Fitt_{rank-1} (empty = zero ideal) and Fitt_rank generators.
  std::vector<Polynomial> fitting_below;
  std::vector<Polynomial> fitting_at;

  bool verify(std::string* why = nullptr) const;
};

/// Matrix of multiplication by f on the certified basis: entry [i][j] is
/// the coefficient of e_j in f*e_i, a base-ring polynomial.
PolyMatrix multiplication_matrix(const FlfCertificate& certificate, const Polynomial& f);

enum class FlfVerdict { certified, not_finite, not_flat, inconclusive };

std::string to_string(FlfVerdict v);

struct FlfOutcome {
  FlfVerdict verdict = FlfVerdict::inconclusive;
  std::string detail;
  std::optional<FlfCertificate> certificate;
  /// not_finite: a fiber variable satisfying no monic equation.
  std::optional<std::string> witness_variable;
  /// not_flat: Fitt_0 of the cyclic submodule O(X)*1, i.e. the contraction.
  std::vector<Polynomial> fitting_zero;
  /// The basis backing a not_finite / not_flat verdict.
  std::optional<IdealCertificate> evidence;
  std::optional<IdealCertificate> base_evidence;
  /// Inconclusive only because of a mixed leading term.
  bool mixed_leading_term = false;
};

/// Sound decision: `certified` means finite locally free (in fact free) of
/// the recorded rank; `not_flat` needs a domain base (all supported bases
/// are). Budget exhaustion yields `inconclusive`.
FlfOutcome certify_flf(const PresentedAlgebra& algebra, const GroebnerOptions& options = {});

/// Re-validates a not_finite / not_flat outcome from its evidence.
bool verify_negative(const FlfOutcome& outcome, const std::vector<std::string>& fiber_variables,
                     std::string* why = nullptr);

}  // namespace flf
