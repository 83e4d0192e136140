#pragma once

// Line-oriented workspace files.
//
//   # comment
//   modulus 4
//   group T                      (orders follow the name; none = trivial, 0 = Z)
//   ring R over T
//     component () gens 1
//     relation () 4              (raw coordinates)
//     mult () 0 () 0 = 1         (raw generators, value in raw coordinates)
//     one 1
//   end
//   module M over R
//     component () gens 1
//     relation () 2
//     action () 0 () 0 = 1       (canonical ring generator, raw module generator)
//   end
//   hom h : R -> S               (ring morphism; map lines in canonical coordinates)
//     map () 0 = 1
//   end
//   morphism u : M -> N
//     map () 0 = 1
//   end
//   epi psi : G -> T
//     image                      (one line per generator of the source)
//   end
//
// Degrees are written (a,b,...) without spaces; () is the trivial degree.

#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "grc/graded.hpp"

namespace grc {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

class UnknownName : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NamedRing {
  std::string group;
  RingPtr ring;
  bool operator==(const NamedRing& o) const { return group == o.group && *ring == *o.ring; }
};

struct NamedModule {
  std::string ring;
  ModulePtr module;
  bool operator==(const NamedModule& o) const { return ring == o.ring && *module == *o.module; }
};

struct NamedRingHom {
  std::string source, target;
  GradedRingHom hom;
  bool operator==(const NamedRingHom& o) const { return source == o.source && target == o.target && hom == o.hom; }
};

struct NamedMorphism {
  std::string source, target;
  GradedMorphism morphism;
  bool operator==(const NamedMorphism& o) const {
    return source == o.source && target == o.target && morphism == o.morphism;
  }
};

struct NamedEpi {
  std::string source, target;
  GroupEpi epi;
  bool operator==(const NamedEpi&) const = default;
};

struct Workspace {
  std::int64_t modulus = 0;  // 0: not declared
  std::map<std::string, FgAbelianGroup> groups;
  std::map<std::string, NamedEpi> epis;
  std::map<std::string, NamedRing> rings;
  std::map<std::string, NamedModule> modules;
  std::map<std::string, NamedRingHom> homs;
  std::map<std::string, NamedMorphism> morphisms;

  bool operator==(const Workspace&) const = default;

  bool empty() const {
    return groups.empty() && epis.empty() && rings.empty() && modules.empty() && homs.empty() && morphisms.empty();
  }

  const NamedRing& ring(const std::string& name) const { return lookup(rings, name, "ring"); }
  const NamedModule& module(const std::string& name) const { return lookup(modules, name, "module"); }
  const NamedRingHom& hom(const std::string& name) const { return lookup(homs, name, "ring morphism"); }
  const NamedMorphism& morphism(const std::string& name) const { return lookup(morphisms, name, "morphism"); }
  const NamedEpi& epi(const std::string& name) const { return lookup(epis, name, "epimorphism"); }
  const FgAbelianGroup& group(const std::string& name) const { return lookup(groups, name, "group"); }

  /// Name of a ring held by the workspace (by pointer, then structurally).
  std::string ring_name(const RingPtr& r) const {
    for (const auto& [k, v] : rings)
      if (v.ring == r) return k;
    for (const auto& [k, v] : rings)
      if (*v.ring == *r) return k;
    throw UnknownName("ring not in workspace");
  }

  bool has(const std::string& name) const {
    return groups.count(name) || epis.count(name) || rings.count(name) || modules.count(name) || homs.count(name) ||
           morphisms.count(name);
  }

  /// Merge another workspace; names must not clash and moduli must agree.
  void merge(const Workspace& o) {
    if (o.modulus != 0) {
      if (modulus != 0 && modulus != o.modulus)
        throw UnknownName("workspaces declare different moduli " + std::to_string(modulus) + " and " +
                          std::to_string(o.modulus));
      modulus = o.modulus;
    }
    auto add = [&](auto& dst, const auto& src) {
      for (const auto& [k, v] : src) {
        if (has(k)) throw UnknownName("duplicate name " + k);
        dst.emplace(k, v);
      }
    };
    add(groups, o.groups);
    add(epis, o.epis);
    add(rings, o.rings);
    add(modules, o.modules);
    add(homs, o.homs);
    add(morphisms, o.morphisms);
  }

 private:
  template <class M>
  static const typename M::mapped_type& lookup(const M& m, const std::string& name, const char* what) {
    auto it = m.find(name);
    if (it == m.end()) throw UnknownName(std::string("unknown ") + what + " '" + name + "'");
    return it->second;
  }
};

namespace detail {

struct Token {
  std::string text;
  std::size_t column = 0;  // 1-based
};

struct Line {
  std::size_t number = 0;
  std::vector<Token> tokens;
};

inline std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      if (std::isspace(static_cast<unsigned char>(raw[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      line.tokens.push_back({raw.substr(i, j - i), i + 1});
      i = j;
    }
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

class Cursor {
 public:
  explicit Cursor(const Line& l) : line_(l) {}

  bool done() const { return pos_ >= line_.tokens.size(); }

  [[noreturn]] void fail(const std::string& msg) const {
    const std::size_t col = done() ? (line_.tokens.empty() ? 1 : line_.tokens.back().column +
                                                                    line_.tokens.back().text.size())
                                   : line_.tokens[pos_].column;
    throw ParseError(line_.number, col, msg);
  }

  [[noreturn]] void fail_at(std::size_t token, const std::string& msg) const {
    throw ParseError(line_.number, line_.tokens[token].column, msg);
  }

  const Token& peek() const {
    if (done()) fail("unexpected end of line");
    return line_.tokens[pos_];
  }

  std::string word() { return line_.tokens[check_more("a name")].text; }

  void expect(const std::string& kw) {
    const std::size_t p = check_more("'" + kw + "'");
    if (line_.tokens[p].text != kw) {
      pos_ = p;
      fail("expected '" + kw + "', found '" + line_.tokens[p].text + "'");
    }
  }

  std::int64_t integer() {
    const std::size_t p = check_more("an integer");
    auto v = parse_int(line_.tokens[p].text);
    if (!v) {
      pos_ = p;
      fail("expected an integer, found '" + line_.tokens[p].text + "'");
    }
    return *v;
  }

  std::size_t index() {
    const std::size_t p = pos_;
    const std::int64_t v = integer();
    if (v < 0) {
      pos_ = p;
      fail("expected a nonnegative index");
    }
    return static_cast<std::size_t>(v);
  }

  Degree degree() {
    const std::size_t p = check_more("a degree");
    const std::string& t = line_.tokens[p].text;
    if (t.size() < 2 || t.front() != '(' || t.back() != ')') {
      pos_ = p;
      fail("expected a degree such as (0) or (), found '" + t + "'");
    }
    Degree d;
    const std::string body = t.substr(1, t.size() - 2);
    if (!body.empty()) {
      std::size_t start = 0;
      for (;;) {
        const std::size_t comma = body.find(',', start);
        auto v = parse_int(body.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (!v) {
          pos_ = p;
          fail("malformed degree '" + t + "'");
        }
        d.push_back(*v);
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    }
    return d;
  }

  /// Remaining tokens as integers.
  Vec rest() {
    Vec v;
    while (!done()) v.push_back(integer());
    return v;
  }

  void finish() {
    if (!done()) fail("unexpected token '" + line_.tokens[pos_].text + "'");
  }

  std::size_t number() const { return line_.number; }

 private:
  std::size_t check_more(const std::string& what) {
    if (done()) fail("expected " + what);
    return pos_++;
  }

  static std::optional<std::int64_t> parse_int(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t i = s[0] == '-' ? 1 : 0;
    if (i == s.size()) return std::nullopt;
    for (std::size_t k = i; k < s.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(s[k]))) return std::nullopt;
    if (s.size() - i > 15) return std::nullopt;
    return std::stoll(s);
  }

  const Line& line_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Workspace parse_workspace(const std::string& text) {
  Workspace ws;
  const auto lines = detail::tokenize(text);
  std::size_t li = 0;

  auto need_modulus = [&](detail::Cursor& c) {
    if (ws.modulus == 0) c.fail("modulus must be declared first");
  };
  auto fresh = [&](detail::Cursor& c, const std::string& name) {
    if (ws.has(name)) c.fail_at(1, "duplicate name '" + name + "'");
  };
  // Name lookups report the column of the name token.
  auto resolve = [&](detail::Cursor& c, std::size_t token, auto&& fn) {
    try {
      return fn();
    } catch (const UnknownName& e) {
      c.fail_at(token, e.what());
    }
  };
  // Run a builder; validation failures keep their axiom and gain the line.
  auto build = [&](std::size_t line, auto&& fn) {
    try {
      return fn();
    } catch (const ValidationError& e) {
      throw ValidationError(e.axiom(), "line " + std::to_string(line) + ": " + e.what());
    } catch (const ZnError& e) {
      throw ParseError(line, 1, e.what());
    } catch (const GroupError& e) {
      throw ParseError(line, 1, e.what());
    } catch (const IllDefinedMap& e) {
      throw ValidationError(axiom::well_defined, "line " + std::to_string(line) + ": " + e.what());
    }
  };
  // Body lines up to 'end'; returns the line number of the header.
  auto body = [&](const std::function<void(detail::Cursor&, const std::string&)>& item) {
    const std::size_t header = lines[li].number;
    ++li;
    for (;; ++li) {
      if (li == lines.size()) throw ParseError(header, 1, "block is not closed by 'end'");
      detail::Cursor c(lines[li]);
      const std::string kw = c.word();
      if (kw == "end") {
        c.finish();
        ++li;
        return;
      }
      item(c, kw);
    }
  };
  auto component_item = [&](detail::Cursor& c, const std::string& kw, const FgAbelianGroup& G,
                            std::map<Degree, ComponentSpec>& comps) {
    if (kw == "component") {
      const Degree d = G.reduce(c.degree());
      c.expect("gens");
      const std::size_t k = c.index();
      c.finish();
      if (comps.count(d)) c.fail("component " + format_vec(d) + " declared twice");
      comps[d].gens = k;
      return true;
    }
    if (kw == "relation") {
      const Degree d = G.reduce(c.degree());
      auto it = comps.find(d);
      if (it == comps.end()) c.fail("relation for undeclared component " + format_vec(d));
      Vec r = c.rest();
      if (r.size() != it->second.gens) c.fail("relation has wrong length");
      it->second.relations.push_back(std::move(r));
      return true;
    }
    return false;
  };
  auto bilinear_item = [&](detail::Cursor& c, const FgAbelianGroup& G, std::vector<BilinearEntry>& out) {
    BilinearEntry e;
    e.g = G.reduce(c.degree());
    e.i = c.index();
    e.h = G.reduce(c.degree());
    e.j = c.index();
    c.expect("=");
    e.value = c.rest();
    out.push_back(std::move(e));
  };
  auto map_items = [&](std::vector<MapEntry>& entries, const FgAbelianGroup& G) {
    return [&entries, &G](detail::Cursor& c, const std::string& kw) {
      if (kw != "map") c.fail("expected 'map' or 'end'");
      MapEntry e;
      e.g = G.reduce(c.degree());
      e.i = c.index();
      c.expect("=");
      e.value = c.rest();
      entries.push_back(std::move(e));
    };
  };

  while (li < lines.size()) {
    detail::Cursor c(lines[li]);
    const std::string kw = c.word();
    if (kw == "modulus") {
      const std::int64_t n = c.integer();
      c.finish();
      if (ws.modulus != 0) c.fail("modulus declared twice");
      if (n < 2) c.fail("modulus must be at least 2");
      ws.modulus = n;
      ++li;
    } else if (kw == "group") {
      const std::string name = c.word();
      fresh(c, name);
      const Vec orders = c.rest();
      ws.groups.emplace(name, build(c.number(), [&] { return make_group(orders); }));
      ++li;
    } else if (kw == "ring") {
      need_modulus(c);
      const std::string name = c.word();
      fresh(c, name);
      c.expect("over");
      const std::string gname = c.word();
      c.finish();
      const FgAbelianGroup G = resolve(c, 3, [&] { return ws.group(gname); });
      RingSpec spec;
      spec.group = G;
      spec.n = ws.modulus;
      bool has_one = false;
      const std::size_t header = c.number();
      body([&](detail::Cursor& b, const std::string& k) {
        if (component_item(b, k, G, spec.components)) return;
        if (k == "mult") {
          bilinear_item(b, G, spec.mult);
        } else if (k == "one") {
          spec.one = b.rest();
          has_one = true;
        } else {
          b.fail("unexpected '" + k + "' in ring block");
        }
      });
      if (!has_one) throw ParseError(header, 1, "ring '" + name + "' has no 'one' line");
      ws.rings.emplace(name, NamedRing{gname, build(header, [&] { return build_ring(spec); })});
    } else if (kw == "module") {
      need_modulus(c);
      const std::string name = c.word();
      fresh(c, name);
      c.expect("over");
      const std::string rname = c.word();
      c.finish();
      const RingPtr R = resolve(c, 3, [&] { return ws.ring(rname).ring; });
      ModuleSpec spec;
      spec.ring = R;
      const std::size_t header = c.number();
      body([&](detail::Cursor& b, const std::string& k) {
        if (component_item(b, k, R->group(), spec.components)) return;
        if (k != "action") b.fail("unexpected '" + k + "' in module block");
        bilinear_item(b, R->group(), spec.action);
      });
      ws.modules.emplace(name, NamedModule{rname, build(header, [&] { return build_module(spec); })});
    } else if (kw == "hom" || kw == "morphism" || kw == "epi") {
      const std::string name = c.word();
      fresh(c, name);
      c.expect(":");
      const std::string src = c.word();
      c.expect("->");
      const std::string tgt = c.word();
      c.finish();
      const std::size_t header = c.number();
      if (kw == "epi") {
        const FgAbelianGroup G = resolve(c, 3, [&] { return ws.group(src); });
        const FgAbelianGroup H = resolve(c, 5, [&] { return ws.group(tgt); });
        std::vector<Vec> rows;
        body([&](detail::Cursor& b, const std::string& k) {
          if (k != "image") b.fail("expected 'image' or 'end'");
          rows.push_back(b.rest());
        });
        ws.epis.emplace(name, NamedEpi{src, tgt, build(header, [&] { return make_epi(G, H, rows); })});
      } else if (kw == "hom") {
        need_modulus(c);
        const RingPtr s = resolve(c, 3, [&] { return ws.ring(src).ring; });
        const RingPtr t = resolve(c, 5, [&] { return ws.ring(tgt).ring; });
        if (!(s->group() == t->group())) c.fail("ring morphism between rings over different groups");
        std::vector<MapEntry> entries;
        body(map_items(entries, s->group()));
        ws.homs.emplace(name, NamedRingHom{src, tgt, build(header, [&] { return build_ring_hom(s, t, entries); })});
      } else {
        need_modulus(c);
        const ModulePtr s = resolve(c, 3, [&] { return ws.module(src).module; });
        const ModulePtr t = resolve(c, 5, [&] { return ws.module(tgt).module; });
        if (!same_ring(s->ring, t->ring)) c.fail("morphism between modules over different rings");
        std::vector<MapEntry> entries;
        body(map_items(entries, s->group()));
        ws.morphisms.emplace(name,
                             NamedMorphism{src, tgt, build(header, [&] { return build_morphism(s, t, entries); })});
      }
    } else {
      c.fail_at(0, "unknown declaration '" + kw + "'");
    }
  }
  return ws;
}

namespace detail {

inline std::string degree_text(const Degree& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

inline std::string ints_text(const Vec& v) {
  std::string s;
  for (auto x : v) s += " " + std::to_string(x);
  return s;
}

inline void write_components(std::ostringstream& out, const GradedComponents& c) {
  for (const auto& [d, m] : c.components()) {
    out << "  component " << degree_text(d) << " gens " << m.rank() << "\n";
    for (std::size_t i = 0; i < m.rank(); ++i)
      if (m.order(i) != m.modulus()) {
        Vec r(m.rank(), 0);
        r[i] = m.order(i);
        out << "  relation " << degree_text(d) << ints_text(r) << "\n";
      }
  }
}

inline void write_table(std::ostringstream& out, const char* kw, const std::map<DegreePair, Table>& tables,
                        const GradedComponents& left, const GradedComponents& right,
                        const GradedComponents& result) {
  for (const auto& [key, t] : tables) {
    const auto& [g, h] = key;
    const ZnModule& target = result.component(left.group().add(g, h));
    for (std::size_t b = 0; b < left.component(g).rank(); ++b)
      for (std::size_t i = 0; i < right.component(h).rank(); ++i) {
        const Vec& v = t[b][i];
        if (target.is_zero_element(v)) continue;
        out << "  " << kw << " " << degree_text(g) << " " << b << " " << degree_text(h) << " " << i << " =" << ints_text(v)
            << "\n";
      }
  }
}

inline void write_blocks(std::ostringstream& out, const std::map<Degree, ZnMatrix>& blocks) {
  for (const auto& [d, b] : blocks)
    for (std::size_t i = 0; i < b.rows(); ++i) {
      bool zero = true;
      for (std::size_t j = 0; j < b.cols(); ++j) zero = zero && b.at(i, j) == 0;
      if (zero) continue;
      out << "  map " << degree_text(d) << " " << i << " =" << ints_text(b.row(i)) << "\n";
    }
}

}  // namespace detail

/// Canonical text; parse_workspace(serialize_workspace(w)) == w.
inline std::string serialize_workspace(const Workspace& ws) {
  std::ostringstream out;
  if (ws.modulus != 0) out << "modulus " << ws.modulus << "\n";
  for (const auto& [name, g] : ws.groups) out << "group " << name << detail::ints_text(g.moduli()) << "\n";
  for (const auto& [name, e] : ws.epis) {
    out << "epi " << name << " : " << e.source << " -> " << e.target << "\n";
    for (const auto& row : e.epi.matrix()) out << "  image" << detail::ints_text(row) << "\n";
    out << "end\n";
  }
  for (const auto& [name, r] : ws.rings) {
    out << "ring " << name << " over " << r.group << "\n";
    detail::write_components(out, *r.ring);
    detail::write_table(out, "mult", r.ring->mult, *r.ring, *r.ring, *r.ring);
    out << "  one" << detail::ints_text(r.ring->one) << "\n";
    out << "end\n";
  }
  for (const auto& [name, m] : ws.modules) {
    out << "module " << name << " over " << m.ring << "\n";
    detail::write_components(out, *m.module);
    detail::write_table(out, "action", m.module->action, *m.module->ring, *m.module, *m.module);
    out << "end\n";
  }
  for (const auto& [name, h] : ws.homs) {
    out << "hom " << name << " : " << h.source << " -> " << h.target << "\n";
    detail::write_blocks(out, h.hom.blocks);
    out << "end\n";
  }
  for (const auto& [name, u] : ws.morphisms) {
    out << "morphism " << name << " : " << u.source << " -> " << u.target << "\n";
    detail::write_blocks(out, u.morphism.blocks);
    out << "end\n";
  }
  return out.str();
}

}  // namespace grc
