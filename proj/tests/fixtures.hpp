#pragma once

#include <string>
#include <vector>

#include "flf/poly_text.hpp"
#include "flf/scheme.hpp"

namespace flf::testing {

inline CoefficientField QQ() { return CoefficientField::rationals(); }

inline AffineScheme scheme(const CoefficientField& k, std::vector<std::string> vars,
                           std::vector<std::string> inverted, const std::vector<std::string>& rels) {
  auto ring = make_ring(k, std::move(vars), inverted);
  std::vector<Polynomial> ps;
  for (const auto& r : rels) ps.push_back(parse_polynomial(r, ring));
  return AffineScheme(ring, ps);
}

inline PresentedAlgebra algebra(const AffineScheme& total, const AffineScheme& base) {
  PresentedAlgebra a{total, base};
  a.validate();
  return a;
}

inline std::vector<std::string> printed(const std::vector<Polynomial>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(print_polynomial(p));
  return out;
}

}  // namespace flf::testing
