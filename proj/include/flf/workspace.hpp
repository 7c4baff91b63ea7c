#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flf/spans.hpp"

namespace flf {

struct SchemeDecl {
  std::string name;
  std::vector<std::string> vars;  // as declared, companions implicit
  std::vector<std::string> inverted;
  AffineScheme scheme;
};

struct CorrespondenceDecl {
  std::string name;
  std::string source;
  std::string target;
  std::vector<std::string> fiber;
  std::vector<std::string> inverted;
  std::vector<Polynomial> relations;  // beyond the source relations
  std::vector<std::pair<std::string, Polynomial>> maps;
  Correspondence span;                // uncertified
};

struct Request {
  std::string name;
  std::string command;
  std::vector<std::pair<std::string, std::string>> args;
  std::size_t line = 0;

  std::optional<std::string> arg(const std::string& key) const;
  std::vector<std::string> all(const std::string& key) const;
  /// "command key=value ..." with values quoted when needed.
  std::string echo() const;
};

/// A parsed workspace document. Declarations keep their textual order;
/// every reference points backwards.
struct Workspace {
  std::optional<CoefficientField> declared_field;
  CoefficientField field = CoefficientField::rationals();
  std::vector<SchemeDecl> schemes;
  std::vector<CorrespondenceDecl> correspondences;
  std::vector<Request> requests;
  /// ('s', i) or ('c', i) in declaration order.
  std::vector<std::pair<char, std::size_t>> order;

  const SchemeDecl* find_scheme(const std::string& name) const;
  const CorrespondenceDecl* find_correspondence(const std::string& name) const;
  /// Throws flf::Error("unresolved name ...").
  const Correspondence& correspondence(const std::string& name) const;
};

const std::vector<std::string>& known_commands();
/// Keys a command accepts; keys listed in `references` name correspondences.
const std::vector<std::string>& command_keys(const std::string& command);
bool is_reference_key(const std::string& key);

/// Throws ParseError with line and column. `fallback` is the field used
/// when the document has no field line; a conflicting one is an error.
Workspace parse_workspace(const std::string& text,
                          std::optional<CoefficientField> fallback = std::nullopt);

/// Canonical form: parse_workspace(print_workspace(w)) prints identically.
std::string print_workspace(const Workspace& w);

/// Checks a request against the command table and the workspace names.
/// Throws ParseError at the request's line.
void check_request(const Workspace& w, const Request& r);

}  // namespace flf
