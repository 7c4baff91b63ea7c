#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "flf/field.hpp"

namespace flf {

/// Exponent vector indexed by ring variable position. Negative entries are
/// allowed only on inverted variables (Laurent support).
using Monomial = std::vector<std::int32_t>;

/// Ordered variable names over a coefficient field.
///
/// Every inverted variable `v` owns a companion `v_inv`; the companion is
/// appended automatically when it is not listed. The unit relation
/// v*v_inv - 1 is not part of the ring; schemes add it.
class Ring {
 public:
  Ring(CoefficientField field, std::vector<std::string> names,
       const std::vector<std::string>& inverted = {});

  const CoefficientField& field() const { return field_; }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  std::optional<std::size_t> index_of(const std::string& name) const;
  /// Throws flf::Error when absent.
  std::size_t require(const std::string& name) const;

  bool is_inverted(std::size_t i) const { return companion_[i] >= 0 && !is_companion_[i]; }
  bool is_companion(std::size_t i) const { return is_companion_[i]; }
  /// Companion index of an inverted variable, or of the companion's owner.
  std::optional<std::size_t> companion(std::size_t i) const;
  std::vector<std::string> inverted_names() const;

  /// Structural equality: same field, names and inversion flags.
  bool same_as(const Ring& other) const;

  static std::string companion_name(const std::string& v) { return v + "_inv"; }

 private:
  CoefficientField field_;
  std::vector<std::string> names_;
  std::vector<std::int64_t> companion_;
  std::vector<bool> is_companion_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(CoefficientField field, std::vector<std::string> names,
                  const std::vector<std::string>& inverted = {});

/// True iff both pointers denote structurally equal rings.
bool same_ring(const RingPtr& a, const RingPtr& b);

bool is_identifier(const std::string& s);

}  // namespace flf
