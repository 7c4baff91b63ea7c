#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flf/spans.hpp"

namespace flf {

enum class Sign { plus, minus };
std::string to_string(Sign s);

/// g_n^+ = t1^n + 1, g_n^- = t1^n + t2, in k[t1^+-1, t2^+-1].
struct GPoly {
  int n;
  Sign sign;
  Polynomial value;
};

/// h_mn = s*g_n + (1 - s)*g_m, in k[s, t1^+-1, t2^+-1].
struct HPoly {
  int m;
  int n;
  Sign sign;
  Polynomial value;
};

GPoly g_poly(int n, Sign sign, const CoefficientField& field = CoefficientField::rationals());
HPoly h_poly(int m, int n, Sign sign, const CoefficientField& field = CoefficientField::rationals());

/// The same formulas evaluated at arbitrary polynomials of one ring.
Polynomial g_value(int n, Sign sign, const Polynomial& t1, const Polynomial& t2);
Polynomial h_value(int m, int n, Sign sign, const Polynomial& s, const Polynomial& t1, const Polynomial& t2);

/// Valuation bound for Z(1 - t^n f) over X, where Z is finite free over
/// X x Gm with coordinate t.
struct FlatnessBound {
  std::string t;
  FlfCertificate certificate;  // Z over X x Gm
  /// Multiplication matrices of f (or of f1, f2 for the two-term form).
  std::vector<PolyMatrix> matrices;
  /// Per entry: least t-valuation over the matrices; empty when all vanish.
  std::vector<std::vector<std::optional<long>>> valuations;
  /// max(0, -least valuation); 0 when every entry vanishes.
  long N = 0;

  /// t^n * a_ij lies in t*A[t] for every entry: n + val >= 1.
  bool criterion_holds(long n) const;
};

/// Requires Z certified finite free over its base, whose ring has t
/// inverted. Throws flf::Error otherwise.
FlatnessBound flatness_bound(const PresentedAlgebra& z, const std::string& t, const Polynomial& f,
                             const GroebnerOptions& options = {});

/// One N valid for Z(1 - t^n (f1 t^a + f2 t^b)) uniformly in a, b >= 0.
FlatnessBound flatness_bound_ext(const PresentedAlgebra& z, const std::string& t, const Polynomial& f1,
                                 const Polynomial& f2, const GroebnerOptions& options = {});

/// f1 t^a + f2 t^b.
Polynomial shifted_sum(const Polynomial& f1, const Polynomial& f2, const std::string& t, int a, int b);

/// The base X x Gm with the Gm factor removed. Relations may not involve t.
AffineScheme drop_gm(const AffineScheme& x_gm, const std::string& t);

enum class SliceVerdict { flat_by_certificate, certified_flf, not_flat, inconclusive };
std::string to_string(SliceVerdict v);

struct SliceResult {
  PresentedAlgebra slice;  // O(Z)/(1 - t^n f) over X
  SliceVerdict verdict = SliceVerdict::inconclusive;
  FlfOutcome outcome;      // certify_flf of the slice over X
  long N = 0;
  std::string detail;
};

SliceResult z_slice(const PresentedAlgebra& z, const std::string& t, const Polynomial& f, int n,
                    const GroebnerOptions& options = {});

/// A span X x Gm <- Z -> Y x Gm with its two Gm coordinates named.
struct GmSpan {
  Correspondence span;
  std::string source_gm;
  std::string target_gm;
};

/// p: Gm <- Gm -> Gm with t -> 1, and id_Gm.
GmSpan projector_span(const CoefficientField& field = CoefficientField::rationals());
GmSpan identity_gm(const CoefficientField& field = CoefficientField::rationals());

struct RhoResult {
  Correspondence span;  // X x A^1_s <- Z_mn -> Y
  std::string s;
  FlfOutcome outcome;
};

RhoResult rho(const GmSpan& alpha, int m, int n, Sign sign, const GroebnerOptions& options = {});

/// X <- Z(g_n(t1, t2)) -> Y, certification attempted.
Correspondence rho_slice(const GmSpan& alpha, int n, Sign sign, const GroebnerOptions& options = {});

/// rho_n^+ - rho_n^-.
VirtualCorrespondence rho_difference(const GmSpan& alpha, int n, const GroebnerOptions& options = {});

/// Restriction of a span over X x A^1_s to s = value.
Correspondence specialize(const Correspondence& over_line, const std::string& s, long value);

struct WindowEntry {
  int m = 0;
  int n = 0;
  Sign sign = Sign::plus;
  FlfVerdict verdict = FlfVerdict::inconclusive;
  std::optional<std::size_t> rank;
  std::string detail;
  std::optional<FlfCertificate> certificate;
};

struct FiltrationWitness {
  /// Least i such that every (m, n, sign) with i <= m, n <= window
  /// certifies over X x A^1; empty when even (window, window) fails.
  std::optional<int> i;
  int window = 0;
  std::vector<WindowEntry> checked;
  std::optional<WindowEntry> blocking;
  /// Flatness (not finiteness) for m, n > N via the two-term bound.
  std::optional<FlatnessBound> bound_plus;
  std::optional<FlatnessBound> bound_minus;
};

FiltrationWitness filtration_index(const GmSpan& alpha, int window, const GroebnerOptions& options = {});

struct CompatReport {
  bool pushforward = false;  // rho(gamma o alpha) = gamma_* rho(alpha)
  bool pullback = false;     // rho(alpha o beta) = beta^* rho(alpha)
  std::string detail;
  std::vector<EqualityEvidence> evidence;  // one per passing identity
  bool passed() const { return pushforward && pullback; }
};

/// beta: X' -> X and gamma: Y -> Y' act on the non-Gm factors.
CompatReport verify_compat(const GmSpan& alpha, const Correspondence& beta, const Correspondence& gamma,
                           int m, int n, Sign sign, const GroebnerOptions& options = {});

struct SubCheck {
  std::string name;
  bool passed = false;
  std::string detail;
  /// Ideal bases backing the check, re-checkable without Buchberger.
  std::vector<IdealCertificate> ideals;
  std::vector<FlfCertificate> flf;
};

struct LemmaReport {
  int n = 0;
  std::string field;
  std::vector<SubCheck> checks;
  bool passed() const;
};

/// The five checks behind rho_n^+(p) = rho_n^-(p) and the homotopy
/// H = D(t^n + t s + 1 - s) between D(t^n + 1) and D(t^n + t).
LemmaReport verify_cancel_final(int n, const CoefficientField& field = CoefficientField::rationals(),
                                const GroebnerOptions& options = {});

}  // namespace flf
