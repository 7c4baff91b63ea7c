#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace flf {

/// Term order on exponent vectors; variable 0 is the largest variable.
class MonomialOrder {
 public:
  enum class Kind { lex, grevlex, block };

  static MonomialOrder lex() { return MonomialOrder(Kind::lex, {}); }
  static MonomialOrder grevlex() { return MonomialOrder(Kind::grevlex, {}); }
  /// Elimination order: variables flagged in `first` dominate; grevlex
  /// inside each block.
  static MonomialOrder block(std::vector<bool> first) {
    return MonomialOrder(Kind::block, std::move(first));
  }

  Kind kind() const { return kind_; }
  const std::vector<bool>& first_block() const { return first_; }

  /// Negative, zero or positive as a <, ==, > b.
  int compare(std::span<const std::int32_t> a, std::span<const std::int32_t> b) const;
  bool greater(std::span<const std::int32_t> a, std::span<const std::int32_t> b) const {
    return compare(a, b) > 0;
  }

  std::string describe() const;

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  MonomialOrder(Kind k, std::vector<bool> first) : kind_(k), first_(std::move(first)) {}
  Kind kind_;
  std::vector<bool> first_;
};

}  // namespace flf
