#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flf/certificate.hpp"

namespace flf {

/// A span X <- Z -> Y. The ring of Z contains the variables of X by name
/// (the left leg is the inclusion); the remaining variables are fiber
/// coordinates. The right leg sends every variable of Y, companions
/// included, to a polynomial on Z.
struct Correspondence {
  AffineScheme source;
  AffineScheme target;
  AffineScheme middle;
  Assignment target_map;
  /// Present when Z -> X has been certified finite locally free.
  std::optional<FlfCertificate> certificate;

  PresentedAlgebra left_leg() const { return PresentedAlgebra{middle, source}; }
  std::vector<std::string> fiber_names() const { return left_leg().fiber_names(); }

  /// Structure maps are ring maps: source relations and target relations
  /// vanish on Z. Throws flf::Error otherwise.
  void validate(const GroebnerOptions& options = {}) const;
};

/// Builds and validates a span. Images of target companions that are not
/// listed are filled in when the owner's image is a unit monomial.
Correspondence make_correspondence(AffineScheme source, AffineScheme target, AffineScheme middle,
                                   Assignment target_map, const GroebnerOptions& options = {});

/// Runs certify_flf on the left leg and stores the certificate on success.
FlfOutcome certify(Correspondence& alpha, const GroebnerOptions& options = {});

Correspondence identity(const AffineScheme& x);
/// Graph of a morphism X -> Y given by images of Y's variables in X's ring.
Correspondence graph(const AffineScheme& x, const AffineScheme& y, Assignment map,
                     const GroebnerOptions& options = {});

/// Fiber product over the shared interface. Certified when both inputs are
/// and the composite certifies.
Correspondence compose(const Correspondence& alpha, const Correspondence& beta,
                       const GroebnerOptions& options = {});

/// Disjoint union of middles, presented with an idempotent.
Correspondence add(const Correspondence& alpha, const Correspondence& beta,
                   const GroebnerOptions& options = {});

/// The span with empty middle.
Correspondence zero(const AffineScheme& x, const AffineScheme& y);

Correspondence external_tensor(const Correspondence& alpha, const Correspondence& beta,
                               const GroebnerOptions& options = {});

enum class Comparison { equal, different, incomparable };

/// Presentation-level comparison: middle variables matched by name (after
/// `matching`, which renames beta's variables), equal ideals, and equal
/// target maps modulo the ideal. Isomorphism is not tested.
Comparison compare(const Correspondence& alpha, const Correspondence& beta,
                   const std::map<std::string, std::string>& matching = {},
                   const GroebnerOptions& options = {});

/// Re-checkable form of an `equal` comparison: reduced grevlex bases of
/// both middle ideals (beta's renamed into alpha's ring) and the target-map
/// differences, which reduce to zero modulo lhs.
struct EqualityEvidence {
  IdealCertificate lhs;
  IdealCertificate rhs;
  std::vector<Polynomial> map_differences;
  bool verify(std::string* why = nullptr) const;
};

/// Empty unless compare() would return equal.
std::optional<EqualityEvidence> equality_evidence(const Correspondence& alpha, const Correspondence& beta,
                                                  const std::map<std::string, std::string>& matching = {},
                                                  const GroebnerOptions& options = {});

/// compare() == equal; throws flf::Error("incomparable presentations").
bool equals(const Correspondence& alpha, const Correspondence& beta,
            const std::map<std::string, std::string>& matching = {},
            const GroebnerOptions& options = {});

/// Rank of the certified left leg; throws when uncertified.
std::size_t degree(const Correspondence& alpha);

/// Formal difference plus - minus; nothing is cancelled.
struct VirtualCorrespondence {
  Correspondence plus;
  Correspondence minus;
};

/// Names for `wanted` that avoid `taken`; keeps a name when free, else
/// stem_2, stem_3, ... Inverted names also reserve their companion.
/// Chosen names are added to `taken`.
std::map<std::string, std::string> fresh_names(const Ring& ring, const std::vector<std::string>& wanted,
                                               std::set<std::string>& taken);

}  // namespace flf
