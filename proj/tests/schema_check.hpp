#pragma once

#include <regex>
#include <string>
#include <vector>

#include <json.hpp>

namespace flf::testing {

// Enough of JSON Schema draft-07 for docs/report.schema.json: type,
// required, properties, items, enum, pattern, minimum and local $ref.
class SchemaCheck {
 public:
  explicit SchemaCheck(nlohmann::json schema) : root_(std::move(schema)) {}

  std::vector<std::string> errors(const nlohmann::json& doc) const {
    std::vector<std::string> out;
    check(doc, root_, "$", out);
    return out;
  }

 private:
  const nlohmann::json& resolve(const nlohmann::json& s) const {
    if (!s.contains("$ref")) return s;
    const std::string ref = s.at("$ref");
    const std::string prefix = "#/definitions/";
    return resolve(root_.at("definitions").at(ref.substr(prefix.size())));
  }

  static bool has_type(const nlohmann::json& v, const std::string& t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "integer") return v.is_number_integer();
    if (t == "number") return v.is_number();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    return false;
  }

  void check(const nlohmann::json& v, const nlohmann::json& raw, const std::string& at,
             std::vector<std::string>& out) const {
    const nlohmann::json& s = resolve(raw);
    if (s.contains("type") && !has_type(v, s.at("type"))) {
      out.push_back(at + ": expected " + s.at("type").get<std::string>());
      return;
    }
    if (s.contains("enum")) {
      bool found = false;
      for (const auto& e : s.at("enum")) found = found || e == v;
      if (!found) out.push_back(at + ": value not in enum");
    }
    if (s.contains("pattern") && v.is_string() &&
        !std::regex_search(v.get<std::string>(), std::regex(s.at("pattern").get<std::string>()))) {
      out.push_back(at + ": pattern mismatch");
    }
    if (s.contains("minimum") && v.is_number() && v.get<double>() < s.at("minimum").get<double>()) {
      out.push_back(at + ": below minimum");
    }
    if (v.is_object()) {
      if (s.contains("required")) {
        for (const auto& k : s.at("required")) {
          if (!v.contains(k.get<std::string>())) out.push_back(at + ": missing " + k.get<std::string>());
        }
      }
      if (s.contains("properties")) {
        for (const auto& [k, sub] : s.at("properties").items()) {
          if (v.contains(k)) check(v.at(k), sub, at + "." + k, out);
        }
      }
    }
    if (v.is_array() && s.contains("items")) {
      for (std::size_t i = 0; i < v.size(); ++i) check(v[i], s.at("items"), at + "[" + std::to_string(i) + "]", out);
    }
  }

  nlohmann::json root_;
};

}  // namespace flf::testing
