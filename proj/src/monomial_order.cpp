#include "flf/monomial_order.hpp"

namespace flf {

namespace {

int grevlex_masked(std::span<const std::int32_t> a, std::span<const std::int32_t> b,
                   const std::vector<bool>* mask, bool want) {
  std::int64_t da = 0;
  std::int64_t db = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (mask && (*mask)[i] != want) continue;
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (mask && (*mask)[i] != want) continue;
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

int MonomialOrder::compare(std::span<const std::int32_t> a, std::span<const std::int32_t> b) const {
  switch (kind_) {
    case Kind::lex:
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      }
      return 0;
    case Kind::grevlex:
      return grevlex_masked(a, b, nullptr, true);
    case Kind::block: {
      const int c = grevlex_masked(a, b, &first_, true);
      if (c != 0) return c;
      return grevlex_masked(a, b, &first_, false);
    }
  }
  return 0;
}

std::string MonomialOrder::describe() const {
  switch (kind_) {
    case Kind::lex:
      return "lex";
    case Kind::grevlex:
      return "grevlex";
    case Kind::block: {
      std::string s = "block:";
      for (bool f : first_) s += f ? '1' : '0';
      return s;
    }
  }
  return "";
}

}  // namespace flf
