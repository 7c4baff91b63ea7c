#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "flf/cancellation.hpp"
#include "flf/contraction.hpp"
#include "flf/workspace.hpp"

namespace flf {

std::string tool_version();

enum class Verdict { pass, fail, inconclusive, error };
std::string to_string(Verdict v);
Verdict parse_verdict(const std::string& s);
/// 0 pass, 1 fail, 2 error (bad input), 3 inconclusive or budget.
int exit_code(Verdict v);

struct RunOptions {
  GroebnerOptions groebner;
  int window = 8;
  bool timing = true;  // false writes 0 so output is reproducible
};

struct Report {
  std::string name;
  std::string request;  // echo
  Verdict verdict = Verdict::error;
  std::string detail;
  nlohmann::json result = nlohmann::json::object();
  /// Typed, independently checkable evidence; see recheck().
  nlohmann::json certificates = nlohmann::json::array();
  double millis = 0;
};

/// Never throws: budget exhaustion becomes inconclusive, every other
/// library error becomes an error verdict.
Report run_request(const Workspace& w, const Request& r, const RunOptions& options);

/// error, then fail, then inconclusive, then pass.
Verdict aggregate(const std::vector<Report>& reports);

nlohmann::json batch_json(const std::vector<Report>& reports, const std::string& digest, const Workspace& w,
                          const RunOptions& options);
/// Human-readable rendering of a batch; verdicts are read from the JSON.
std::string render_text(const nlohmann::json& batch);

std::string sha256_hex(const std::string& bytes);

struct RecheckOutcome {
  bool ok = false;
  std::size_t confirmed = 0;
  std::size_t rejected = 0;
  std::size_t skipped = 0;
  std::vector<std::string> lines;
};

/// Re-validates every certificate of every report from the stored data
/// alone (reductions and S-polynomial checks, no fresh Groebner bases) and
/// checks the result agrees with the recorded verdicts.
RecheckOutcome recheck(const nlohmann::json& batch, std::size_t budget = 1'000'000);

// Serialization. Polynomials are stored in the canonical text form.
nlohmann::json ring_json(const Ring& ring);
RingPtr ring_from_json(const nlohmann::json& j);
nlohmann::json scheme_json(const AffineScheme& x);
nlohmann::json span_json(const Correspondence& c);
nlohmann::json ideal_certificate_json(const IdealCertificate& c);
IdealCertificate ideal_certificate_from_json(const nlohmann::json& j);
nlohmann::json flf_certificate_json(const FlfCertificate& c);
FlfCertificate flf_certificate_from_json(const nlohmann::json& j);

}  // namespace flf
