#include "flf/poly_text.hpp"

#include <cctype>
#include <sstream>

#include "flf/errors.hpp"

namespace flf {

namespace {

class PolyParser {
 public:
  PolyParser(const std::string& text, const RingPtr& ring, std::size_t line, std::size_t column)
      : text_(text), ring_(ring), line_(line), column_(column) {}

  Polynomial parse() {
    skip_space();
    if (pos_ == text_.size()) fail("empty polynomial");
    Polynomial p = expr();
    skip_space();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, column_ + pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = term();
    while (true) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    return power();
  }

  Polynomial power() {
    skip_space();
    const std::size_t atom_start = pos_;
    auto [base, var] = atom();
    if (!accept('^')) return base;
    skip_space();
    bool negative = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      negative = true;
      ++pos_;
    }
    mpz_class e = integer();
    if (e >= mpz_class(1) << 31) throw DegreeOverflow();
    const auto k = static_cast<unsigned>(e.get_ui());
    if (!negative) return base.pow(k);
    if (!var || !ring_->is_inverted(*var)) {
      pos_ = atom_start;
      fail("negative exponent is only allowed on an inverted variable");
    }
    Monomial m(ring_->size(), 0);
    m[*var] = -static_cast<std::int32_t>(k);
    return Polynomial::monomial(ring_, std::move(m), 1);
  }

  mpz_class integer() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return mpz_class(text_.substr(start, pos_ - start));
  }

  std::pair<Polynomial, std::optional<std::size_t>> atom() {
    skip_space();
    if (pos_ == text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return {inner, std::nullopt};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = integer();
      mpz_class den = 1;
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        den = integer();
        if (den == 0) fail("zero denominator");
      }
      mpq_class q(num, den);
      q.canonicalize();
      try {
        return {Polynomial::constant(ring_, q), std::nullopt};
      } catch (const Error&) {
        fail("denominator vanishes in " + ring_->field().name());
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name = text_.substr(start, pos_ - start);
      auto idx = ring_->index_of(name);
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return {Polynomial::variable(ring_, name), idx};
    }
    fail(std::string("unexpected '") + c + "'");
  }

  const std::string& text_;
  RingPtr ring_;
  std::size_t line_;
  std::size_t column_;
  std::size_t pos_ = 0;
};

std::string monomial_text(const Ring& ring, const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += ring.name(i);
    if (m[i] != 1) out += '^' + std::to_string(m[i]);
  }
  return out;
}

}  // namespace

Polynomial parse_polynomial(const std::string& text, const RingPtr& ring, std::size_t line,
                            std::size_t column) {
  return PolyParser(text, ring, line, column).parse();
}

std::string print_coefficient(const mpq_class& c) { return c.get_str(); }

std::string print_polynomial(const Polynomial& p) {
  if (p.is_zero()) return "0";
  const Ring& ring = *p.ring();
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    mpq_class c = t.coeff;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const std::string mono = monomial_text(ring, t.exponents);
    if (mono.empty()) {
      out += print_coefficient(c);
    } else if (c == 1) {
      out += mono;
    } else {
      out += print_coefficient(c) + "*" + mono;
    }
  }
  return out;
}

}  // namespace flf
