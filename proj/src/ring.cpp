#include "flf/ring.hpp"

#include <algorithm>
#include <set>

#include "flf/errors.hpp"

namespace flf {

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(s[0])) return false;
  return std::all_of(s.begin() + 1, s.end(), [&](char c) { return alpha(c) || digit(c); });
}

Ring::Ring(CoefficientField field, std::vector<std::string> names,
           const std::vector<std::string>& inverted)
    : field_(field), names_(std::move(names)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!is_identifier(n)) throw Error("invalid variable name '" + n + "'");
    if (!seen.insert(n).second) throw Error("duplicate variable name '" + n + "'");
  }
  for (const auto& v : inverted) {
    if (!seen.count(v)) throw Error("inverted variable '" + v + "' is not a ring variable");
    const std::string c = companion_name(v);
    if (!seen.count(c)) {
      names_.push_back(c);
      seen.insert(c);
    }
  }
  companion_.assign(names_.size(), -1);
  is_companion_.assign(names_.size(), false);
  for (const auto& v : inverted) {
    const std::size_t vi = *index_of(v);
    const std::size_t ci = *index_of(companion_name(v));
    if (is_companion_[vi] || companion_[ci] >= 0) {
      throw Error("variable '" + v + "' cannot be both inverted and a companion");
    }
    companion_[vi] = static_cast<std::int64_t>(ci);
    companion_[ci] = static_cast<std::int64_t>(vi);
    is_companion_[ci] = true;
  }
}

std::optional<std::size_t> Ring::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

std::size_t Ring::require(const std::string& name) const {
  auto i = index_of(name);
  if (!i) throw Error("unknown variable '" + name + "'");
  return *i;
}

std::optional<std::size_t> Ring::companion(std::size_t i) const {
  if (companion_[i] < 0) return std::nullopt;
  return static_cast<std::size_t>(companion_[i]);
}

std::vector<std::string> Ring::inverted_names() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (is_inverted(i)) out.push_back(names_[i]);
  }
  return out;
}

bool Ring::same_as(const Ring& other) const {
  return field_ == other.field_ && names_ == other.names_ && companion_ == other.companion_;
}

RingPtr make_ring(CoefficientField field, std::vector<std::string> names,
                  const std::vector<std::string>& inverted) {
  return std::make_shared<const Ring>(field, std::move(names), inverted);
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && a->same_as(*b));
}

}  // namespace flf
