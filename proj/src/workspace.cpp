#include "flf/workspace.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "flf/poly_text.hpp"

namespace flf {

namespace {

struct Scanner {
  const std::string& text;
  std::size_t pos = 0;
  std::size_t line = 1;
  std::size_t col = 1;

  bool done() const { return pos >= text.size(); }
  char peek() const { return done() ? '\0' : text[pos]; }
  char get() {
    char c = text[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line, col); }

  // Whitespace and comments; stops at a newline when `newlines` is false.
  void skip(bool newlines = true) {
    while (!done()) {
      char c = peek();
      if (c == '#') {
        while (!done() && peek() != '\n') get();
      } else if (c == '\n' && !newlines) {
        return;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        get();
      } else {
        return;
      }
    }
  }

  std::string ident(const std::string& what) {
    skip(false);
    std::string out;
    while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) out += get();
    if (!is_identifier(out)) fail("expected " + what);
    return out;
  }

  void expect(const std::string& token) {
    skip();
    if (text.compare(pos, token.size(), token) != 0) fail("expected '" + token + "'");
    for (std::size_t i = 0; i < token.size(); ++i) get();
  }
};

struct Item {
  std::string text;
  std::size_t line;
  std::size_t col;
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Reads up to ';' and splits at ','; each item keeps the position of its
// first non-blank character.
std::vector<Item> statement_items(Scanner& s) {
  std::vector<Item> items;
  Item cur{"", s.line, s.col};
  bool started = false;
  while (true) {
    if (s.done() || s.peek() == '}') s.fail("expected ';'");
    if (s.peek() == '#') {
      while (!s.done() && s.peek() != '\n') s.get();
      continue;
    }
    char c = s.peek();
    if (c == ';' || c == ',') {
      s.get();
      cur.text = trim(cur.text);
      if (cur.text.empty()) s.fail("empty item");
      items.push_back(cur);
      if (c == ';') return items;
      cur = Item{"", s.line, s.col};
      started = false;
      continue;
    }
    if (!started && !std::isspace(static_cast<unsigned char>(c))) {
      started = true;
      cur.line = s.line;
      cur.col = s.col;
    }
    cur.text += s.get();
  }
}

std::string rest_of_line(Scanner& s) {
  std::string out;
  while (!s.done() && s.peek() != '\n') {
    if (s.peek() == '#') break;
    out += s.get();
  }
  return trim(out);
}

const std::map<std::string, std::vector<std::string>>& command_table() {
  static const std::map<std::string, std::vector<std::string>> table{
      {"compose", {"corr"}},
      {"add", {"corr"}},
      {"tensor", {"corr"}},
      {"certify", {"corr"}},
      {"degree", {"corr"}},
      {"bound", {"corr", "f", "f2", "t"}},
      {"slice", {"corr", "f", "n", "t"}},
      {"rho", {"corr", "m", "n", "sign", "sgm", "tgm"}},
      {"rho-slice", {"corr", "n", "sign", "sgm", "tgm"}},
      {"filtration", {"corr", "window", "sgm", "tgm"}},
      {"verify-compat", {"corr", "beta", "gamma", "m", "n", "sign", "sgm", "tgm"}},
      {"verify-lemma-35", {"n"}},
      {"contract", {"corr"}},
      {"verify-contraction", {"corr"}},
  };
  return table;
}

bool needs_quotes(const std::string& v) {
  if (v.empty()) return true;
  return std::any_of(v.begin(), v.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)) || c == '"' || c == '#'; });
}

Request parse_request(Scanner& s) {
  Request r;
  r.line = s.line;
  r.name = s.ident("request name");
  s.skip(false);
  std::string cmd;
  while (!s.done() && (std::isalnum(static_cast<unsigned char>(s.peek())) || s.peek() == '-')) cmd += s.get();
  if (cmd.empty()) s.fail("expected command");
  r.command = cmd;
  while (true) {
    s.skip(false);
    if (s.done() || s.peek() == '\n') break;
    std::string key = s.ident("argument key");
    if (s.peek() != '=') s.fail("expected '=' after '" + key + "'");
    s.get();
    std::string value;
    if (s.peek() == '"') {
      s.get();
      while (!s.done() && s.peek() != '"') {
        if (s.peek() == '\n') s.fail("unterminated string");
        value += s.get();
      }
      if (s.done()) s.fail("unterminated string");
      s.get();
    } else {
      while (!s.done() && !std::isspace(static_cast<unsigned char>(s.peek())) && s.peek() != '#') {
        value += s.get();
      }
    }
    r.args.emplace_back(key, value);
  }
  return r;
}

void check_identifiers(const std::vector<Item>& items) {
  for (const auto& it : items) {
    if (!is_identifier(it.text)) throw ParseError("not a variable name: '" + it.text + "'", it.line, it.col);
  }
}

std::vector<std::string> texts(const std::vector<Item>& items) {
  std::vector<std::string> out;
  for (const auto& it : items) out.push_back(it.text);
  return out;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

}  // namespace

std::optional<std::string> Request::arg(const std::string& key) const {
  for (const auto& [k, v] : args) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::vector<std::string> Request::all(const std::string& key) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : args) {
    if (k == key) out.push_back(v);
  }
  return out;
}

std::string Request::echo() const {
  std::string out = command;
  for (const auto& [k, v] : args) out += " " + k + "=" + (needs_quotes(v) ? "\"" + v + "\"" : v);
  return out;
}

const SchemeDecl* Workspace::find_scheme(const std::string& name) const {
  for (const auto& s : schemes) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const CorrespondenceDecl* Workspace::find_correspondence(const std::string& name) const {
  for (const auto& c : correspondences) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

const Correspondence& Workspace::correspondence(const std::string& name) const {
  const CorrespondenceDecl* c = find_correspondence(name);
  if (!c) throw Error("unresolved name '" + name + "'");
  return c->span;
}

const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [k, v] : command_table()) out.push_back(k);
    return out;
  }();
  return names;
}

const std::vector<std::string>& command_keys(const std::string& command) {
  auto it = command_table().find(command);
  if (it == command_table().end()) throw Error("unknown command '" + command + "'");
  return it->second;
}

bool is_reference_key(const std::string& key) { return key == "corr" || key == "beta" || key == "gamma"; }

void check_request(const Workspace& w, const Request& r) {
  auto it = command_table().find(r.command);
  if (it == command_table().end()) throw ParseError("unknown command '" + r.command + "'", r.line, 1);
  for (const auto& [k, v] : r.args) {
    if (std::find(it->second.begin(), it->second.end(), k) == it->second.end()) {
      throw ParseError("command '" + r.command + "' takes no argument '" + k + "'", r.line, 1);
    }
    if (is_reference_key(k) && !w.find_correspondence(v)) {
      throw ParseError("unresolved name '" + v + "'", r.line, 1);
    }
  }
}

Workspace parse_workspace(const std::string& text, std::optional<CoefficientField> fallback) {
  Workspace w;
  if (fallback) w.field = *fallback;
  Scanner s{text};
  std::set<std::string> names;
  std::set<std::string> request_names;
  bool seen_decl = false;

  auto claim = [&](const std::string& name, std::size_t line, std::size_t col) {
    if (!names.insert(name).second) throw ParseError("duplicate name '" + name + "'", line, col);
  };

  while (true) {
    s.skip();
    if (s.done()) break;
    const std::size_t line = s.line;
    const std::size_t col = s.col;
    const std::string kw = s.ident("declaration");

    if (kw == "field") {
      if (w.declared_field || seen_decl) throw ParseError("field must be declared once, first", line, col);
      s.skip(false);
      const std::string value = rest_of_line(s);
      CoefficientField k = CoefficientField::rationals();
      try {
        k = CoefficientField::parse(value);
      } catch (const Error& e) {
        throw ParseError(e.what(), line, col);
      }
      if (fallback && !(*fallback == k)) {
        throw ParseError("document declares " + k.name() + " but " + fallback->name() + " was requested", line, col);
      }
      w.declared_field = k;
      w.field = k;
    } else if (kw == "scheme") {
      seen_decl = true;
      const std::size_t nl = s.line, nc = s.col;
      const std::string name = s.ident("scheme name");
      claim(name, nl, nc);
      s.expect("{");
      std::vector<std::string> vars, inverted;
      std::vector<Item> rels;
      while (true) {
        s.skip();
        if (s.peek() == '}') {
          s.get();
          break;
        }
        const std::string st = s.ident("'vars', 'invert' or 'relations'");
        std::vector<Item> items = statement_items(s);
        if (st == "vars") {
          check_identifiers(items);
          for (auto& v : texts(items)) vars.push_back(v);
        } else if (st == "invert") {
          check_identifiers(items);
          for (auto& v : texts(items)) inverted.push_back(v);
        } else if (st == "relations") {
          rels.insert(rels.end(), items.begin(), items.end());
        } else {
          s.fail("unknown statement '" + st + "' in scheme");
        }
      }
      for (const auto& v : inverted) {
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) {
          throw ParseError("inverted variable '" + v + "' is not declared", line, col);
        }
      }
      RingPtr ring;
      try {
        ring = make_ring(w.field, vars, inverted);
      } catch (const Error& e) {
        throw ParseError(e.what(), line, col);
      }
      std::vector<Polynomial> ps;
      for (const auto& r : rels) ps.push_back(parse_polynomial(r.text, ring, r.line, r.col));
      w.schemes.push_back(SchemeDecl{name, vars, inverted, AffineScheme(ring, ps)});
      w.order.emplace_back('s', w.schemes.size() - 1);
    } else if (kw == "correspondence") {
      seen_decl = true;
      const std::size_t nl = s.line, nc = s.col;
      const std::string name = s.ident("correspondence name");
      claim(name, nl, nc);
      s.expect(":");
      s.skip();
      const std::size_t sl = s.line, sc = s.col;
      const std::string src = s.ident("source scheme");
      s.expect("->");
      s.skip();
      const std::size_t tl = s.line, tc = s.col;
      const std::string tgt = s.ident("target scheme");
      const SchemeDecl* source = w.find_scheme(src);
      if (!source) throw ParseError("unresolved name '" + src + "'", sl, sc);
      const SchemeDecl* target = w.find_scheme(tgt);
      if (!target) throw ParseError("unresolved name '" + tgt + "'", tl, tc);
      s.expect("{");
      std::vector<std::string> fiber, inverted;
      std::vector<Item> rels;
      std::vector<Item> maps;
      while (true) {
        s.skip();
        if (s.peek() == '}') {
          s.get();
          break;
        }
        const std::string st = s.ident("'fiber', 'invert', 'relations' or 'map'");
        std::vector<Item> items = statement_items(s);
        if (st == "fiber") {
          check_identifiers(items);
          for (auto& v : texts(items)) fiber.push_back(v);
        } else if (st == "invert") {
          check_identifiers(items);
          for (auto& v : texts(items)) inverted.push_back(v);
        } else if (st == "relations") {
          rels.insert(rels.end(), items.begin(), items.end());
        } else if (st == "map") {
          maps.insert(maps.end(), items.begin(), items.end());
        } else {
          s.fail("unknown statement '" + st + "' in correspondence");
        }
      }
      const AffineScheme& x = source->scheme;
      std::vector<std::string> ring_names = fiber;
      for (const auto& v : fiber) {
        if (x.ring()->index_of(v)) throw ParseError("fiber variable '" + v + "' clashes with the source", line, col);
      }
      for (const auto& v : inverted) {
        if (std::find(fiber.begin(), fiber.end(), v) == fiber.end()) {
          throw ParseError("inverted variable '" + v + "' is not a fiber variable", line, col);
        }
      }
      for (const auto& n : x.ring()->names()) ring_names.push_back(n);
      std::vector<std::string> ring_inverted = inverted;
      for (const auto& n : x.ring()->inverted_names()) ring_inverted.push_back(n);
      RingPtr ring;
      try {
        ring = make_ring(w.field, ring_names, ring_inverted);
      } catch (const Error& e) {
        throw ParseError(e.what(), line, col);
      }
      CorrespondenceDecl decl{name, src, tgt, fiber, inverted, {}, {}, identity(point(w.field))};
      std::vector<Polynomial> all;
      for (const auto& r : x.relations()) all.push_back(embed(r, ring));
      for (const auto& r : rels) {
        decl.relations.push_back(parse_polynomial(r.text, ring, r.line, r.col));
        all.push_back(decl.relations.back());
      }
      Assignment map;
      for (const auto& m : maps) {
        auto eq = m.text.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'variable = polynomial'", m.line, m.col);
        const std::string var = trim(m.text.substr(0, eq));
        if (!target->scheme.ring()->index_of(var)) {
          throw ParseError("'" + var + "' is not a variable of " + tgt, m.line, m.col);
        }
        const std::string rhs = m.text.substr(eq + 1);
        std::size_t lead = rhs.find_first_not_of(" \t");
        if (lead == std::string::npos) throw ParseError("empty image for '" + var + "'", m.line, m.col);
        Polynomial img = parse_polynomial(trim(rhs), ring, m.line, m.col + eq + 1 + lead);
        if (!map.emplace(var, img).second) throw ParseError("duplicate map for '" + var + "'", m.line, m.col);
        decl.maps.emplace_back(var, img);
      }
      const Ring& y = *target->scheme.ring();
      for (std::size_t i = 0; i < y.size(); ++i) {
        if (!y.is_companion(i) && !map.count(y.name(i))) {
          throw ParseError("no map for '" + y.name(i) + "'", line, col);
        }
      }
      try {
        decl.span = make_correspondence(x, target->scheme, AffineScheme(ring, all), map);
      } catch (const Error& e) {
        throw ParseError(std::string("correspondence '") + name + "': " + e.what(), line, col);
      }
      w.correspondences.push_back(std::move(decl));
      w.order.emplace_back('c', w.correspondences.size() - 1);
    } else if (kw == "request") {
      Request r = parse_request(s);
      if (!request_names.insert(r.name).second) throw ParseError("duplicate request '" + r.name + "'", line, col);
      check_request(w, r);
      w.requests.push_back(std::move(r));
    } else {
      throw ParseError("unknown declaration '" + kw + "'", line, col);
    }
  }
  return w;
}

std::string print_workspace(const Workspace& w) {
  std::ostringstream out;
  out << "field " << w.field.name() << "\n";
  auto polys = [](const std::vector<Polynomial>& ps) {
    std::vector<std::string> xs;
    for (const auto& p : ps) xs.push_back(print_polynomial(p));
    return join(xs, ", ");
  };
  for (const auto& [kind, i] : w.order) {
    out << "\n";
    if (kind == 's') {
      const SchemeDecl& s = w.schemes[i];
      out << "scheme " << s.name << " {\n";
      if (!s.vars.empty()) out << "  vars " << join(s.vars, ", ") << ";\n";
      if (!s.inverted.empty()) out << "  invert " << join(s.inverted, ", ") << ";\n";
      if (!s.scheme.relations().empty()) out << "  relations " << polys(s.scheme.relations()) << ";\n";
      out << "}\n";
    } else {
      const CorrespondenceDecl& c = w.correspondences[i];
      out << "correspondence " << c.name << " : " << c.source << " -> " << c.target << " {\n";
      if (!c.fiber.empty()) out << "  fiber " << join(c.fiber, ", ") << ";\n";
      if (!c.inverted.empty()) out << "  invert " << join(c.inverted, ", ") << ";\n";
      if (!c.relations.empty()) out << "  relations " << polys(c.relations) << ";\n";
      for (const auto& [y, img] : c.maps) out << "  map " << y << " = " << print_polynomial(img) << ";\n";
      out << "}\n";
    }
  }
  if (!w.requests.empty()) out << "\n";
  for (const auto& r : w.requests) out << "request " << r.name << " " << r.echo() << "\n";
  return out.str();
}

}  // namespace flf
