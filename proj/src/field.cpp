#include "flf/field.hpp"

#include "flf/errors.hpp"

namespace flf {

namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

}  // namespace

CoefficientField CoefficientField::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p)) {
    throw Error("characteristic must be a prime below 2^31, got " + std::to_string(p));
  }
  return CoefficientField(Kind::prime, p);
}

mpq_class CoefficientField::reduce(const mpq_class& x) const {
  if (kind_ == Kind::rationals) {
    mpq_class r = x;
    r.canonicalize();
    return r;
  }
  mpz_class p(p_);
  mpz_class num = x.get_num() % p;
  if (num < 0) num += p;
  mpz_class den = x.get_den() % p;
  if (den == 0) throw Error("denominator divisible by the characteristic");
  if (den != 1) {
    mpz_class den_inv;
    mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    num = (num * den_inv) % p;
  }
  return mpq_class(num);
}

mpq_class CoefficientField::add(const mpq_class& a, const mpq_class& b) const {
  if (kind_ == Kind::rationals) return a + b;
  mpz_class r = a.get_num() + b.get_num();
  if (r >= p_) r -= p_;
  return mpq_class(r);
}

mpq_class CoefficientField::sub(const mpq_class& a, const mpq_class& b) const {
  if (kind_ == Kind::rationals) return a - b;
  mpz_class r = a.get_num() - b.get_num();
  if (r < 0) r += p_;
  return mpq_class(r);
}

mpq_class CoefficientField::mul(const mpq_class& a, const mpq_class& b) const {
  if (kind_ == Kind::rationals) return a * b;
  return mpq_class(mpz_class(a.get_num() * b.get_num()) % p_);
}

mpq_class CoefficientField::neg(const mpq_class& a) const {
  if (kind_ == Kind::rationals) return -a;
  if (a == 0) return a;
  return mpq_class(mpz_class(p_) - a.get_num());
}

mpq_class CoefficientField::inv(const mpq_class& a) const {
  if (a == 0) throw Error("division by zero");
  if (kind_ == Kind::rationals) return 1 / a;
  mpz_class r;
  mpz_class p(p_);
  mpz_invert(r.get_mpz_t(), a.get_num_mpz_t(), p.get_mpz_t());
  return mpq_class(r);
}

std::string CoefficientField::name() const {
  if (kind_ == Kind::rationals) return "QQ";
  return "Fp:" + std::to_string(p_);
}

CoefficientField CoefficientField::parse(const std::string& text) {
  if (text == "QQ") return rationals();
  if (text.rfind("Fp:", 0) == 0) {
    const std::string digits = text.substr(3);
    if (digits.empty() || digits.size() > 10 ||
        digits.find_first_not_of("0123456789") != std::string::npos) {
      throw Error("bad field declaration '" + text + "'");
    }
    const unsigned long long p = std::stoull(digits);
    if (p >= (1ull << 31)) throw Error("characteristic must be below 2^31");
    return prime(static_cast<std::uint32_t>(p));
  }
  throw Error("bad field declaration '" + text + "' (expected QQ or Fp:<p>)");
}

}  // namespace flf
