#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace flf {

/// Exact coefficient arithmetic over Q or F_p.
///
/// Elements are carried as mpq_class in both cases. Over F_p an element is
/// always an integer in [0, p); every operation returns that representative.
class CoefficientField {
 public:
  enum class Kind { rationals, prime };

  static CoefficientField rationals() { return CoefficientField(Kind::rationals, 0); }
  /// Throws flf::Error unless p is a prime below 2^31.
  static CoefficientField prime(std::uint32_t p);

  Kind kind() const { return kind_; }
  std::uint32_t characteristic() const { return p_; }
  bool is_rationals() const { return kind_ == Kind::rationals; }

  mpq_class reduce(const mpq_class& x) const;
  mpq_class from_int(long v) const { return reduce(mpq_class(v)); }

  mpq_class add(const mpq_class& a, const mpq_class& b) const;
  mpq_class sub(const mpq_class& a, const mpq_class& b) const;
  mpq_class mul(const mpq_class& a, const mpq_class& b) const;
  mpq_class neg(const mpq_class& a) const;
  /// Throws flf::Error on zero.
  mpq_class inv(const mpq_class& a) const;
  mpq_class div(const mpq_class& a, const mpq_class& b) const { return mul(a, inv(b)); }

  /// "QQ" or "Fp:<p>".
  std::string name() const;
  static CoefficientField parse(const std::string& text);

  friend bool operator==(const CoefficientField& a, const CoefficientField& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }

 private:
  CoefficientField(Kind k, std::uint32_t p) : kind_(k), p_(p) {}
  Kind kind_;
  std::uint32_t p_;
};

}  // namespace flf
