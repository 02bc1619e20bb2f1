#include "protocat/serialize.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

namespace protocat {

using json = nlohmann::ordered_json;

const char* kind_name(ItemKind k) {
  switch (k) {
    case ItemKind::category: return "category";
    case ItemKind::functor: return "functor";
    case ItemKind::theory: return "theory";
    case ItemKind::monoid: return "monoid";
    default: return "presentation";
  }
}

TopProtoTheory TheoryEntry::topological() const {
  if (identify.empty()) return disc(theory, aritation);
  return quotient_topology(theory, aritation, identify);
}

namespace {

// Position-carrying token; line 0 means "no position" (JSON items).
struct Tok {
  std::string text;
  int line = 0, col = 0;
};

[[noreturn]] void fail_at(const std::string& origin, const Tok& t, const std::string& msg) {
  if (t.line > 0)
    throw InputError(origin + ":" + std::to_string(t.line) + ":" + std::to_string(t.col) + ": " + msg);
  throw InputError(origin + ": " + msg);
}

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

// "chain12" -> 12 for prefix "chain"
std::optional<int> stock_index(std::string_view ref, std::string_view prefix) {
  if (ref.size() <= prefix.size() || ref.substr(0, prefix.size()) != prefix) return std::nullopt;
  return parse_int(ref.substr(prefix.size()));
}

std::vector<int> cyclic_table(int n) {
  std::vector<int> mul(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mul[a * n + b] = (a + b) % n;
  return mul;
}

struct RawHom {
  Tok name, src, dst;
  bool identity = false;
};

struct RawCategory {
  Tok name;
  std::vector<Tok> objects;
  std::vector<RawHom> homs;
  std::vector<std::array<Tok, 3>> compose;  // g, f, g∘f
  Tok end;
};

struct RawFunctor {
  Tok name, src, dst;
  std::vector<std::pair<Tok, Tok>> objects, morphisms;
  Tok end;
};

struct RawTheory {
  Tok name, kind, base, category, functor;
  std::vector<std::pair<Tok, Tok>> identify;
  Tok end;
};

struct RawMonoid {
  Tok name;
  std::vector<Tok> elements;
  Tok unit;
  std::vector<std::vector<Tok>> table;
  Tok end;
};

struct RawPresentation {
  Tok name;
  std::string body;
  int first_line = 0;
};

void check_name(const Workspace& ws, const std::string& origin, const Tok& name) {
  static const std::regex ok("[A-Za-z_][A-Za-z0-9_.\\-]*");
  if (!std::regex_match(name.text, ok)) fail_at(origin, name, "bad item name '" + name.text + "'");
  if (ws.contains(name.text)) fail_at(origin, name, "duplicate name '" + name.text + "'");
}

CatPtr resolve_category(const Workspace& ws, const std::string& origin, const Tok& ref) {
  try {
    return ws.category(ref.text);
  } catch (const InputError& e) {
    fail_at(origin, ref, e.what());
  }
}

void build_category(Workspace& ws, const std::string& origin, const RawCategory& rc) {
  check_name(ws, origin, rc.name);
  FinCategory::Builder b;
  std::map<std::string, int> obj, mor;
  for (const Tok& o : rc.objects) {
    if (obj.count(o.text)) fail_at(origin, o, "duplicate object '" + o.text + "'");
    obj[o.text] = b.add_object(o.text);
  }
  if (obj.empty()) fail_at(origin, rc.name, "category without objects");
  auto find = [&](const std::map<std::string, int>& m, const Tok& t, const char* what) {
    auto it = m.find(t.text);
    if (it == m.end()) fail_at(origin, t, std::string("unknown ") + what + " '" + t.text + "'");
    return it->second;
  };
  std::vector<int> ident(obj.size(), -1);
  for (const RawHom& h : rc.homs) {
    if (mor.count(h.name.text)) fail_at(origin, h.name, "duplicate morphism '" + h.name.text + "'");
    int s = find(obj, h.src, "object"), d = find(obj, h.dst, "object");
    int f = b.add_morphism(h.name.text, s, d);
    mor[h.name.text] = f;
    if (h.identity) {
      if (s != d) fail_at(origin, h.name, "identity '" + h.name.text + "' is not an endomorphism");
      if (ident[s] >= 0) fail_at(origin, h.name, "second identity on '" + h.src.text + "'");
      ident[s] = f;
      b.set_identity(s, f);
    }
  }
  for (std::size_t a = 0; a < ident.size(); ++a)
    if (ident[a] < 0) fail_at(origin, rc.end, "object '" + rc.objects[a].text + "' has no identity");
  std::set<std::pair<int, int>> seen;
  for (const auto& [g, f, h] : rc.compose) {
    int gi = find(mor, g, "morphism"), fi = find(mor, f, "morphism"), hi = find(mor, h, "morphism");
    if (b.dst(fi) != b.src(gi)) fail_at(origin, g, "'" + g.text + " . " + f.text + "' is not composable");
    if (b.src(hi) != b.src(fi) || b.dst(hi) != b.dst(gi))
      fail_at(origin, h, "'" + h.text + "' has the wrong type for '" + g.text + " . " + f.text + "'");
    if (!seen.insert({gi, fi}).second) fail_at(origin, g, "composite '" + g.text + " . " + f.text + "' given twice");
    b.set_compose(gi, fi, hi);
  }
  for (int g = 0; g < b.morphisms(); ++g)
    for (int f = 0; f < b.morphisms(); ++f)
      if (b.dst(f) == b.src(g) && !seen.count({g, f}))
        fail_at(origin, rc.end, "missing composite '" + rc.homs[g].name.text + " . " + rc.homs[f].name.text + "'");
  ws.add_category(rc.name.text, b.build());
}

void build_functor(Workspace& ws, const std::string& origin, const RawFunctor& rf) {
  check_name(ws, origin, rf.name);
  FinFunctor f;
  f.src = resolve_category(ws, origin, rf.src);
  f.dst = resolve_category(ws, origin, rf.dst);
  const FinCategory &A = *f.src, &B = *f.dst;
  f.obj.assign(A.num_objects(), -1);
  f.mor.assign(A.num_morphisms(), -1);
  for (const auto& [x, y] : rf.objects) {
    auto a = A.find_object(x.text);
    if (!a) fail_at(origin, x, "unknown object '" + x.text + "' of " + rf.src.text);
    auto b = B.find_object(y.text);
    if (!b) fail_at(origin, y, "unknown object '" + y.text + "' of " + rf.dst.text);
    if (f.obj[*a] >= 0) fail_at(origin, x, "object '" + x.text + "' mapped twice");
    f.obj[*a] = *b;
  }
  for (const auto& [x, y] : rf.morphisms) {
    auto a = A.find_morphism(x.text);
    if (!a) fail_at(origin, x, "unknown morphism '" + x.text + "' of " + rf.src.text);
    auto b = B.find_morphism(y.text);
    if (!b) fail_at(origin, y, "unknown morphism '" + y.text + "' of " + rf.dst.text);
    if (f.mor[*a] >= 0) fail_at(origin, x, "morphism '" + x.text + "' mapped twice");
    f.mor[*a] = *b;
  }
  for (int a = 0; a < A.num_objects(); ++a)
    if (f.obj[a] < 0) fail_at(origin, rf.end, "object '" + A.object_name(a) + "' is not mapped");
  for (int k = 0; k < A.num_morphisms(); ++k)
    if (f.mor[k] < 0) fail_at(origin, rf.end, "morphism '" + A.morphism_name(k) + "' is not mapped");
  ws.add_functor(rf.name.text, std::move(f), rf.src.text, rf.dst.text);
}

void build_theory(Workspace& ws, const std::string& origin, const RawTheory& rt) {
  check_name(ws, origin, rt.name);
  TheoryEntry t;
  t.aritation_kind = rt.kind.text;
  t.base = rt.base.text;
  CatPtr base = resolve_category(ws, origin, rt.base);
  if (rt.kind.text == "canonical") {
    t.aritation = canonical_aritation(base);
  } else if (rt.kind.text == "projection") {
    auto n = stock_index(rt.base.text, "finset");
    if (!n || ws.categories.count(rt.base.text)) fail_at(origin, rt.base, "projection aritation needs a finset<n> base");
    t.aritation = projection_aritation(finset_category(*n));
  } else {
    fail_at(origin, rt.kind, "aritation must be 'canonical' or 'projection'");
  }
  if (!ws.functors.count(rt.functor.text)) fail_at(origin, rt.functor, "unknown functor '" + rt.functor.text + "'");
  const FinFunctor& L = ws.functors.at(rt.functor.text);
  if (!same_category(L.src, t.aritation.arities))
    fail_at(origin, rt.functor, "'" + rt.functor.text + "' does not start at the arity category");
  CatPtr cat = resolve_category(ws, origin, rt.category);
  if (!same_category(L.dst, cat)) fail_at(origin, rt.functor, "'" + rt.functor.text + "' does not end at " + rt.category.text);
  if (!is_bijective_on_objects(L)) fail_at(origin, rt.functor, "'" + rt.functor.text + "' is not bijective on objects");
  t.theory = make_proto_theory(L);
  t.category = rt.category.text;
  t.functor = rt.functor.text;
  for (const auto& [x, y] : rt.identify) {
    auto f = cat->find_morphism(x.text);
    if (!f) fail_at(origin, x, "unknown morphism '" + x.text + "'");
    auto g = cat->find_morphism(y.text);
    if (!g) fail_at(origin, y, "unknown morphism '" + y.text + "'");
    if (cat->src(*f) != cat->src(*g) || cat->dst(*f) != cat->dst(*g))
      fail_at(origin, x, "'" + x.text + "' and '" + y.text + "' are not parallel");
    t.identify.emplace_back(*f, *g);
  }
  ws.add_theory(rt.name.text, std::move(t));
}

void build_monoid(Workspace& ws, const std::string& origin, const RawMonoid& rm) {
  check_name(ws, origin, rm.name);
  FinMonoid m;
  m.n = static_cast<int>(rm.elements.size());
  if (m.n == 0) fail_at(origin, rm.name, "monoid without elements");
  std::map<std::string, int> idx;
  for (const Tok& e : rm.elements) {
    if (idx.count(e.text)) fail_at(origin, e, "duplicate element '" + e.text + "'");
    idx[e.text] = static_cast<int>(m.names.size());
    m.names.push_back(e.text);
  }
  auto find = [&](const Tok& t) {
    auto it = idx.find(t.text);
    if (it == idx.end()) fail_at(origin, t, "unknown element '" + t.text + "'");
    return it->second;
  };
  if (rm.unit.text.empty()) fail_at(origin, rm.end, "missing UNIT");
  m.unit = find(rm.unit);
  if (static_cast<int>(rm.table.size()) != m.n)
    fail_at(origin, rm.end, "TABLE needs " + std::to_string(m.n) + " rows, got " + std::to_string(rm.table.size()));
  m.mul.clear();
  for (const auto& row : rm.table) {
    if (static_cast<int>(row.size()) != m.n) fail_at(origin, row.empty() ? rm.end : row[0], "row needs " + std::to_string(m.n) + " entries");
    for (const Tok& t : row) m.mul.push_back(find(t));
  }
  ws.add_monoid(rm.name.text, std::move(m));
}

void build_presentation(Workspace& ws, const std::string& origin, const RawPresentation& rp) {
  check_name(ws, origin, rp.name);
  try {
    ws.add_presentation(rp.name.text, parse_presentation(rp.body));
  } catch (const InputError& e) {
    static const std::regex pos("line ([0-9]+), column ([0-9]+): (.*)");
    std::cmatch m;
    if (rp.first_line > 0 && std::regex_match(e.what(), m, pos)) {
      Tok at{"", std::stoi(m[1]) + rp.first_line - 1, std::stoi(m[2])};
      fail_at(origin, at, m[3]);
    }
    fail_at(origin, rp.name, e.what());
  }
}

// ---------------------------------------------------------------------------
// Text format

struct Line {
  int number = 0;
  std::vector<Tok> toks;
  std::string raw;  // without the comment
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t pos = 0;
  int number = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++number;
    Line l;
    l.number = number;
    std::size_t hash = line.find('#');
    l.raw = std::string(line.substr(0, hash));
    for (std::size_t i = 0; i < l.raw.size();) {
      if (std::isspace(static_cast<unsigned char>(l.raw[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < l.raw.size() && !std::isspace(static_cast<unsigned char>(l.raw[j]))) ++j;
      l.toks.push_back({l.raw.substr(i, j - i), number, static_cast<int>(i) + 1});
      i = j;
    }
    out.push_back(std::move(l));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

class TextParser {
 public:
  TextParser(Workspace& ws, std::string_view text, std::string origin)
      : ws_(ws), lines_(tokenize(text)), origin_(std::move(origin)) {}

  std::vector<std::pair<ItemKind, std::string>> run() {
    std::vector<std::pair<ItemKind, std::string>> declared;
    while (next()) {
      const Line& l = lines_[i_];
      const Tok& kw = l.toks[0];
      if (l.toks.size() < 2) fail_at(origin_, kw, "expected a name after '" + kw.text + "'");
      ++i_;
      if (kw.text == "CATEGORY") {
        expect_len(l, 2);
        category(l.toks[1]);
        declared.emplace_back(ItemKind::category, l.toks[1].text);
      } else if (kw.text == "FUNCTOR") {
        functor(l);
        declared.emplace_back(ItemKind::functor, l.toks[1].text);
      } else if (kw.text == "THEORY") {
        expect_len(l, 2);
        theory(l.toks[1]);
        declared.emplace_back(ItemKind::theory, l.toks[1].text);
      } else if (kw.text == "MONOID") {
        expect_len(l, 2);
        monoid(l.toks[1]);
        declared.emplace_back(ItemKind::monoid, l.toks[1].text);
      } else if (kw.text == "PRESENTATION") {
        expect_len(l, 2);
        presentation(l.toks[1]);
        declared.emplace_back(ItemKind::presentation, l.toks[1].text);
      } else {
        fail_at(origin_, kw, "expected CATEGORY, FUNCTOR, THEORY, MONOID or PRESENTATION, got '" + kw.text + "'");
      }
    }
    return declared;
  }

 private:
  Workspace& ws_;
  std::vector<Line> lines_;
  std::string origin_;
  std::size_t i_ = 0;

  bool next() {
    while (i_ < lines_.size() && lines_[i_].toks.empty()) ++i_;
    return i_ < lines_.size();
  }
  void expect_len(const Line& l, std::size_t n) {
    if (l.toks.size() != n) fail_at(origin_, l.toks[std::min(n, l.toks.size() - 1)], "unexpected token '" + l.toks[std::min(n, l.toks.size() - 1)].text + "'");
  }
  Tok eof() const {
    return {"", lines_.empty() ? 1 : lines_.back().number, 1};
  }
  // Lines of the block up to END, which is consumed and returned.
  std::vector<const Line*> block(const Tok& head, Tok& end) {
    std::vector<const Line*> body;
    while (true) {
      if (!next()) fail_at(origin_, eof(), "block '" + head.text + "' is missing END");
      const Line& l = lines_[i_++];
      if (l.toks[0].text == "END") {
        expect_len(l, 1);
        end = l.toks[0];
        return body;
      }
      body.push_back(&l);
    }
  }
  static bool is_header(const Tok& t) {
    return !t.text.empty() && std::all_of(t.text.begin(), t.text.end(), [](char c) { return c == '-' || std::isupper(static_cast<unsigned char>(c)); });
  }
  [[noreturn]] void bad(const Line& l, const std::string& expected) {
    fail_at(origin_, l.toks[0], "expected " + expected);
  }

  void category(const Tok& name) {
    RawCategory rc;
    rc.name = name;
    std::string section;
    for (const Line* l : block(name, rc.end)) {
      const auto& t = l->toks;
      if (t.size() == 1 && is_header(t[0])) {
        section = t[0].text;
        if (section != "OBJECTS" && section != "HOMS" && section != "COMPOSE")
          fail_at(origin_, t[0], "unknown section '" + section + "'");
        continue;
      }
      if (section == "OBJECTS") {
        rc.objects.insert(rc.objects.end(), t.begin(), t.end());
      } else if (section == "HOMS") {
        if ((t.size() != 5 && t.size() != 6) || t[1].text != ":" || t[3].text != "->" || (t.size() == 6 && t[5].text != "id"))
          bad(*l, "'<name> : <src> -> <dst> [id]'");
        rc.homs.push_back({t[0], t[2], t[4], t.size() == 6});
      } else if (section == "COMPOSE") {
        if (t.size() != 5 || t[1].text != "." || t[3].text != "=") bad(*l, "'<g> . <f> = <g∘f>'");
        rc.compose.push_back({t[0], t[2], t[4]});
      } else {
        bad(*l, "a section header (OBJECTS, HOMS, COMPOSE)");
      }
    }
    build_category(ws_, origin_, rc);
  }

  void functor(const Line& head) {
    const auto& h = head.toks;
    if (h.size() != 6 || h[2].text != ":" || h[4].text != "->")
      fail_at(origin_, h[0], "expected 'FUNCTOR <name> : <source> -> <target>'");
    RawFunctor rf;
    rf.name = h[1];
    rf.src = h[3];
    rf.dst = h[5];
    std::string section;
    for (const Line* l : block(rf.name, rf.end)) {
      const auto& t = l->toks;
      if (t.size() == 1 && is_header(t[0])) {
        section = t[0].text;
        if (section != "OBJECTS" && section != "MORPHISMS") fail_at(origin_, t[0], "unknown section '" + section + "'");
        continue;
      }
      if (section.empty()) bad(*l, "a section header (OBJECTS, MORPHISMS)");
      if (t.size() != 3 || t[1].text != "->") bad(*l, "'<source item> -> <target item>'");
      (section == "OBJECTS" ? rf.objects : rf.morphisms).emplace_back(t[0], t[2]);
    }
    build_functor(ws_, origin_, rf);
  }

  void theory(const Tok& name) {
    RawTheory rt;
    rt.name = name;
    for (const Line* l : block(name, rt.end)) {
      const auto& t = l->toks;
      const std::string& kw = t[0].text;
      if (kw == "ARITATION") {
        if (t.size() != 3) bad(*l, "'ARITATION canonical|projection <base>'");
        rt.kind = t[1];
        rt.base = t[2];
      } else if (kw == "CATEGORY" || kw == "L") {
        if (t.size() != 2) bad(*l, "'" + kw + " <name>'");
        (kw == "L" ? rt.functor : rt.category) = t[1];
      } else if (kw == "IDENTIFY") {
        if (t.size() != 3) bad(*l, "'IDENTIFY <f> <g>'");
        rt.identify.emplace_back(t[1], t[2]);
      } else {
        bad(*l, "ARITATION, CATEGORY, L or IDENTIFY");
      }
    }
    if (rt.kind.text.empty()) fail_at(origin_, rt.end, "missing ARITATION");
    if (rt.category.text.empty()) fail_at(origin_, rt.end, "missing CATEGORY");
    if (rt.functor.text.empty()) fail_at(origin_, rt.end, "missing L");
    build_theory(ws_, origin_, rt);
  }

  void monoid(const Tok& name) {
    RawMonoid rm;
    rm.name = name;
    bool table = false;
    for (const Line* l : block(name, rm.end)) {
      const auto& t = l->toks;
      if (t[0].text == "ELEMENTS" && !table) {
        rm.elements.insert(rm.elements.end(), t.begin() + 1, t.end());
      } else if (t[0].text == "UNIT" && !table) {
        if (t.size() != 2) bad(*l, "'UNIT <element>'");
        rm.unit = t[1];
      } else if (t[0].text == "TABLE" && t.size() == 1) {
        table = true;
      } else if (table) {
        rm.table.push_back(t);
      } else {
        bad(*l, "ELEMENTS, UNIT or TABLE");
      }
    }
    build_monoid(ws_, origin_, rm);
  }

  void presentation(const Tok& name) {
    RawPresentation rp;
    rp.name = name;
    rp.first_line = lines_[i_ < lines_.size() ? i_ : lines_.size() - 1].number;
    Tok end;
    int expect = rp.first_line;
    for (const Line* l : block(name, end)) {
      // keep line numbers aligned for error positions
      while (expect < l->number) {
        rp.body += "\n";
        ++expect;
      }
      rp.body += l->raw + "\n";
      ++expect;
    }
    build_presentation(ws_, origin_, rp);
  }
};

// ---------------------------------------------------------------------------
// JSON mirror

Tok jtok(const json& j, const char* what, const std::string& origin, const std::string& item) {
  if (!j.is_string()) throw InputError(origin + ": " + item + ": '" + what + "' must be a string");
  return {j.get<std::string>(), 0, 0};
}

const json& jfield(const json& j, const char* key, const std::string& origin, const std::string& item) {
  if (!j.is_object() || !j.contains(key)) throw InputError(origin + ": " + item + ": missing '" + key + "'");
  return j.at(key);
}

const json& jarray(const json& j, const char* key, const std::string& origin, const std::string& item) {
  const json& a = jfield(j, key, origin, item);
  if (!a.is_array()) throw InputError(origin + ": " + item + ": '" + key + "' must be an array");
  return a;
}

std::pair<Tok, Tok> jpair(const json& e, const char* key, const std::string& origin, const std::string& item) {
  if (!e.is_array() || e.size() != 2) throw InputError(origin + ": " + item + ": entries of '" + key + "' are pairs");
  return {jtok(e[0], key, origin, item), jtok(e[1], key, origin, item)};
}

}  // namespace

// ---------------------------------------------------------------------------

bool Workspace::contains(std::string_view name) const {
  const std::string n(name);
  return categories.count(n) || functors.count(n) || theories.count(n) || monoids.count(n) || presentations.count(n);
}

CatPtr Workspace::category(std::string_view ref) const {
  if (ref.size() > 3 && ref.substr(ref.size() - 3) == "^op") return category(ref.substr(0, ref.size() - 3))->opposite();
  if (auto it = categories.find(std::string(ref)); it != categories.end()) return it->second;
  if (ref == "terminal") return terminal_category();
  if (auto n = stock_index(ref, "chain"); n && *n >= 1 && *n <= 12) return chain_category(*n);
  if (auto n = stock_index(ref, "discrete"); n && *n >= 1 && *n <= 12) return discrete_category(*n);
  if (auto n = stock_index(ref, "finset"); n && *n >= 0 && *n <= 4) return finset_category(*n).cat;
  if (auto n = stock_index(ref, "cyclic"); n && *n >= 1 && *n <= 12) return monoid_category(*n, cyclic_table(*n), 0);
  throw InputError("unknown category '" + std::string(ref) + "'");
}

const FinFunctor& Workspace::functor(std::string_view name) const {
  auto it = functors.find(std::string(name));
  if (it == functors.end()) throw InputError("unknown functor '" + std::string(name) + "'");
  return it->second;
}

const TheoryEntry& Workspace::theory(std::string_view name) const {
  auto it = theories.find(std::string(name));
  if (it == theories.end()) throw InputError("unknown theory '" + std::string(name) + "'");
  return it->second;
}

FinMonoid Workspace::monoid(std::string_view ref) const {
  if (auto it = monoids.find(std::string(ref)); it != monoids.end()) return it->second;
  if (ref == "trivial") return trivial_monoid();
  if (ref == "klein") return product_monoid(cyclic_group(2), cyclic_group(2));
  if (auto n = stock_index(ref, "cyclic"); n && *n >= 1 && *n <= 12) return cyclic_group(*n);
  static const std::regex indexed("monoid([1-4])_([0-9]+)");
  std::cmatch m;
  const std::string s(ref);
  if (std::regex_match(s.c_str(), m, indexed)) {
    auto all = enumerate_monoids(std::stoi(m[1]));
    std::size_t i = std::stoul(m[2]);
    if (i < all.size()) return all[i];
  }
  throw InputError("unknown monoid '" + s + "'");
}

Presentation Workspace::presentation(std::string_view ref) const {
  if (auto it = presentations.find(std::string(ref)); it != presentations.end()) return it->second;
  if (ref == "group") return group_presentation();
  throw InputError("unknown presentation '" + std::string(ref) + "'");
}

void Workspace::add_category(const std::string& name, CatPtr c) {
  if (contains(name)) throw InputError("duplicate name '" + name + "'");
  categories[name] = std::move(c);
  order.emplace_back(ItemKind::category, name);
}

void Workspace::add_functor(const std::string& name, FinFunctor f, std::string src_ref, std::string dst_ref) {
  if (contains(name)) throw InputError("duplicate name '" + name + "'");
  functors[name] = std::move(f);
  functor_refs[name] = {std::move(src_ref), std::move(dst_ref)};
  order.emplace_back(ItemKind::functor, name);
}

void Workspace::add_theory(const std::string& name, TheoryEntry t) {
  if (contains(name)) throw InputError("duplicate name '" + name + "'");
  theories[name] = std::move(t);
  order.emplace_back(ItemKind::theory, name);
}

void Workspace::add_monoid(const std::string& name, FinMonoid m) {
  if (contains(name)) throw InputError("duplicate name '" + name + "'");
  if (m.names.empty())
    for (int i = 0; i < m.n; ++i) m.names.push_back("m" + std::to_string(i));
  monoids[name] = std::move(m);
  order.emplace_back(ItemKind::monoid, name);
}

void Workspace::add_presentation(const std::string& name, Presentation p) {
  if (contains(name)) throw InputError("duplicate name '" + name + "'");
  presentations[name] = std::move(p);
  order.emplace_back(ItemKind::presentation, name);
}

void load_text(Workspace& ws, std::string_view text, const std::string& origin) {
  TextParser(ws, text, origin).run();
}

namespace {

std::vector<std::pair<ItemKind, std::string>> load_json_items(Workspace& ws, std::string_view text,
                                                              const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    // byte offset to line and column
    std::size_t off = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    int line = 1, col = 1;
    for (std::size_t i = 0; i < off; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail_at(origin, Tok{"", line, col}, "JSON syntax error");
  }
  std::vector<std::pair<ItemKind, std::string>> declared;
  const json& items = jarray(root, "items", origin, "workspace");
  for (std::size_t k = 0; k < items.size(); ++k) {
    const json& it = items[k];
    const std::string where = "item " + std::to_string(k);
    const std::string kind = jtok(jfield(it, "kind", origin, where), "kind", origin, where).text;
    const Tok name = jtok(jfield(it, "name", origin, where), "name", origin, where);
    const std::string item = where + " (" + name.text + ")";
    if (kind == "category") {
      RawCategory rc;
      rc.name = name;
      for (const json& o : jarray(it, "objects", origin, item)) rc.objects.push_back(jtok(o, "objects", origin, item));
      for (const json& h : jarray(it, "homs", origin, item)) {
        RawHom rh{jtok(jfield(h, "name", origin, item), "name", origin, item),
                  jtok(jfield(h, "src", origin, item), "src", origin, item),
                  jtok(jfield(h, "dst", origin, item), "dst", origin, item), false};
        if (h.contains("identity")) {
          if (!h.at("identity").is_boolean()) throw InputError(origin + ": " + item + ": 'identity' must be a boolean");
          rh.identity = h.at("identity").get<bool>();
        }
        rc.homs.push_back(rh);
      }
      for (const json& c : jarray(it, "compose", origin, item)) {
        if (!c.is_array() || c.size() != 3) throw InputError(origin + ": " + item + ": compose entries are [g, f, g∘f]");
        rc.compose.push_back({jtok(c[0], "compose", origin, item), jtok(c[1], "compose", origin, item),
                              jtok(c[2], "compose", origin, item)});
      }
      build_category(ws, origin, rc);
      declared.emplace_back(ItemKind::category, name.text);
    } else if (kind == "functor") {
      RawFunctor rf;
      rf.name = name;
      rf.src = jtok(jfield(it, "source", origin, item), "source", origin, item);
      rf.dst = jtok(jfield(it, "target", origin, item), "target", origin, item);
      for (const json& e : jarray(it, "objects", origin, item)) rf.objects.push_back(jpair(e, "objects", origin, item));
      for (const json& e : jarray(it, "morphisms", origin, item)) rf.morphisms.push_back(jpair(e, "morphisms", origin, item));
      build_functor(ws, origin, rf);
      declared.emplace_back(ItemKind::functor, name.text);
    } else if (kind == "theory") {
      RawTheory rt;
      rt.name = name;
      rt.kind = jtok(jfield(it, "aritation", origin, item), "aritation", origin, item);
      rt.base = jtok(jfield(it, "base", origin, item), "base", origin, item);
      rt.category = jtok(jfield(it, "category", origin, item), "category", origin, item);
      rt.functor = jtok(jfield(it, "L", origin, item), "L", origin, item);
      if (it.contains("identify"))
        for (const json& e : jarray(it, "identify", origin, item)) rt.identify.push_back(jpair(e, "identify", origin, item));
      build_theory(ws, origin, rt);
      declared.emplace_back(ItemKind::theory, name.text);
    } else if (kind == "monoid") {
      RawMonoid rm;
      rm.name = name;
      for (const json& e : jarray(it, "elements", origin, item)) rm.elements.push_back(jtok(e, "elements", origin, item));
      rm.unit = jtok(jfield(it, "unit", origin, item), "unit", origin, item);
      for (const json& row : jarray(it, "table", origin, item)) {
        if (!row.is_array()) throw InputError(origin + ": " + item + ": table rows must be arrays");
        std::vector<Tok> r;
        for (const json& e : row) r.push_back(jtok(e, "table", origin, item));
        rm.table.push_back(std::move(r));
      }
      build_monoid(ws, origin, rm);
      declared.emplace_back(ItemKind::monoid, name.text);
    } else if (kind == "presentation") {
      RawPresentation rp;
      rp.name = name;
      for (const json& op : jarray(it, "operators", origin, item))
        rp.body += "op " + jtok(jfield(op, "name", origin, item), "name", origin, item).text + " " +
                   std::to_string(jfield(op, "arity", origin, item).get<int>()) + "\n";
      for (const json& eq : jarray(it, "equations", origin, item))
        rp.body += "eq " + std::to_string(jfield(eq, "arity", origin, item).get<int>()) + " " +
                   jtok(jfield(eq, "lhs", origin, item), "lhs", origin, item).text + " = " +
                   jtok(jfield(eq, "rhs", origin, item), "rhs", origin, item).text + "\n";
      build_presentation(ws, origin, rp);
      declared.emplace_back(ItemKind::presentation, name.text);
    } else {
      throw InputError(origin + ": " + item + ": unknown kind '" + kind + "'");
    }
  }
  return declared;
}

}  // namespace

void load_json(Workspace& ws, std::string_view text, const std::string& origin) { load_json_items(ws, text, origin); }

std::vector<std::pair<ItemKind, std::string>> load_file(Workspace& ws, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return load_json_items(ws, text, path);
  return TextParser(ws, text, path).run();
}

Workspace load(const std::string& path) {
  Workspace ws;
  load_file(ws, path);
  return ws;
}

// ---------------------------------------------------------------------------
// Writers

std::string write_text(const Workspace& ws) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [kind, name] : ws.order) {
    if (!first) out << "\n";
    first = false;
    switch (kind) {
      case ItemKind::category: {
        const FinCategory& c = *ws.categories.at(name);
        out << "CATEGORY " << name << "\nOBJECTS\n";
        for (int a = 0; a < c.num_objects(); ++a) out << "  " << c.object_name(a) << "\n";
        out << "HOMS\n";
        for (int f = 0; f < c.num_morphisms(); ++f)
          out << "  " << c.morphism_name(f) << " : " << c.object_name(c.src(f)) << " -> " << c.object_name(c.dst(f))
              << (c.is_identity(f) ? " id" : "") << "\n";
        out << "COMPOSE\n";
        for (int g = 0; g < c.num_morphisms(); ++g)
          for (int f : c.in(c.src(g)))
            if (c.compose(g, f) >= 0)
              out << "  " << c.morphism_name(g) << " . " << c.morphism_name(f) << " = " << c.morphism_name(c.compose(g, f))
                  << "\n";
        out << "END\n";
        break;
      }
      case ItemKind::functor: {
        const FinFunctor& f = ws.functors.at(name);
        const auto& refs = ws.functor_refs.at(name);
        out << "FUNCTOR " << name << " : " << refs.first << " -> " << refs.second << "\nOBJECTS\n";
        for (int a = 0; a < f.src->num_objects(); ++a)
          out << "  " << f.src->object_name(a) << " -> " << f.dst->object_name(f.obj[a]) << "\n";
        out << "MORPHISMS\n";
        for (int k = 0; k < f.src->num_morphisms(); ++k)
          out << "  " << f.src->morphism_name(k) << " -> " << f.dst->morphism_name(f.mor[k]) << "\n";
        out << "END\n";
        break;
      }
      case ItemKind::theory: {
        const TheoryEntry& t = ws.theories.at(name);
        out << "THEORY " << name << "\nARITATION " << t.aritation_kind << " " << t.base << "\nCATEGORY " << t.category
            << "\nL " << t.functor << "\n";
        for (const auto& [f, g] : t.identify)
          out << "IDENTIFY " << t.theory.theory->morphism_name(f) << " " << t.theory.theory->morphism_name(g) << "\n";
        out << "END\n";
        break;
      }
      case ItemKind::monoid: {
        const FinMonoid& m = ws.monoids.at(name);
        out << "MONOID " << name << "\nELEMENTS";
        for (const auto& e : m.names) out << " " << e;
        out << "\nUNIT " << m.names[m.unit] << "\nTABLE\n";
        for (int a = 0; a < m.n; ++a) {
          out << " ";
          for (int b = 0; b < m.n; ++b) out << " " << m.names[m(a, b)];
          out << "\n";
        }
        out << "END\n";
        break;
      }
      case ItemKind::presentation:
        out << "PRESENTATION " << name << "\n" << print_presentation(ws.presentations.at(name)) << "END\n";
        break;
    }
  }
  return out.str();
}

std::string write_json(const Workspace& ws) {
  json items = json::array();
  for (const auto& [kind, name] : ws.order) {
    json it;
    it["kind"] = kind_name(kind);
    it["name"] = name;
    switch (kind) {
      case ItemKind::category: {
        const FinCategory& c = *ws.categories.at(name);
        it["objects"] = json::array();
        for (int a = 0; a < c.num_objects(); ++a) it["objects"].push_back(c.object_name(a));
        it["homs"] = json::array();
        for (int f = 0; f < c.num_morphisms(); ++f) {
          json h{{"name", c.morphism_name(f)}, {"src", c.object_name(c.src(f))}, {"dst", c.object_name(c.dst(f))}};
          if (c.is_identity(f)) h["identity"] = true;
          it["homs"].push_back(std::move(h));
        }
        it["compose"] = json::array();
        for (int g = 0; g < c.num_morphisms(); ++g)
          for (int f : c.in(c.src(g)))
            if (c.compose(g, f) >= 0)
              it["compose"].push_back({c.morphism_name(g), c.morphism_name(f), c.morphism_name(c.compose(g, f))});
        break;
      }
      case ItemKind::functor: {
        const FinFunctor& f = ws.functors.at(name);
        const auto& refs = ws.functor_refs.at(name);
        it["source"] = refs.first;
        it["target"] = refs.second;
        it["objects"] = json::array();
        for (int a = 0; a < f.src->num_objects(); ++a)
          it["objects"].push_back({f.src->object_name(a), f.dst->object_name(f.obj[a])});
        it["morphisms"] = json::array();
        for (int k = 0; k < f.src->num_morphisms(); ++k)
          it["morphisms"].push_back({f.src->morphism_name(k), f.dst->morphism_name(f.mor[k])});
        break;
      }
      case ItemKind::theory: {
        const TheoryEntry& t = ws.theories.at(name);
        it["aritation"] = t.aritation_kind;
        it["base"] = t.base;
        it["category"] = t.category;
        it["L"] = t.functor;
        if (!t.identify.empty()) {
          it["identify"] = json::array();
          for (const auto& [f, g] : t.identify)
            it["identify"].push_back({t.theory.theory->morphism_name(f), t.theory.theory->morphism_name(g)});
        }
        break;
      }
      case ItemKind::monoid: {
        const FinMonoid& m = ws.monoids.at(name);
        it["elements"] = m.names;
        it["unit"] = m.names[m.unit];
        it["table"] = json::array();
        for (int a = 0; a < m.n; ++a) {
          json row = json::array();
          for (int b = 0; b < m.n; ++b) row.push_back(m.names[m(a, b)]);
          it["table"].push_back(std::move(row));
        }
        break;
      }
      case ItemKind::presentation: {
        const Presentation& p = ws.presentations.at(name);
        it["operators"] = json::array();
        for (const auto& s : p.domain.symbols) it["operators"].push_back({{"name", s.name}, {"arity", s.arity}});
        it["equations"] = json::array();
        for (const auto& e : p.equations)
          it["equations"].push_back(
              {{"arity", e.arity}, {"lhs", p.terms->print(e.lhs, p.domain)}, {"rhs", p.terms->print(e.rhs, p.domain)}});
        break;
      }
    }
    items.push_back(std::move(it));
  }
  json root;
  root["items"] = std::move(items);
  return root.dump(2) + "\n";
}

Report validate_workspace(const Workspace& ws) {
  Report r;
  for (const auto& [kind, name] : ws.order) {
    const std::string prefix = std::string(kind_name(kind)) + " " + name + ": ";
    switch (kind) {
      case ItemKind::category: r.merge(validate_category(*ws.categories.at(name)), prefix); break;
      case ItemKind::functor: r.merge(validate_functor(ws.functors.at(name)), prefix); break;
      case ItemKind::theory: {
        const TheoryEntry& t = ws.theories.at(name);
        r.merge(validate_proto_theory(t.theory), prefix);
        r.merge(validate_aritation(t.aritation), prefix);
        if (!t.identify.empty() && r.ok()) r.merge(validate_top_theory(t.topological()), prefix);
        break;
      }
      case ItemKind::monoid: r.merge(validate_monoid(ws.monoids.at(name)), prefix); break;
      case ItemKind::presentation: r.merge(validate_presentation(ws.presentations.at(name)), prefix); break;
    }
  }
  return r;
}

SetMonad monad_by_name(const Workspace& ws, std::string_view ref) {
  if (ref == "identity") return identity_set_monad();
  if (ref == "maybe") return maybe_monad();
  if (ref.substr(0, 7) == "writer:") return monoid_writer(ws.monoid(ref.substr(7)));
  throw InputError("unknown monad '" + std::string(ref) + "' (identity, maybe, writer:<monoid>)");
}

}  // namespace protocat
