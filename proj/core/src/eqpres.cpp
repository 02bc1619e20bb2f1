#include "protocat/eqpres.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_map>

namespace protocat {

namespace {

long long ipow(int b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

template <class F>
void for_each_function(long long n, int m, F&& visit) {
  if (n > 0 && m == 0) return;
  Table t(n, 0);
  while (true) {
    visit(static_cast<const Table&>(t));
    long long i = n - 1;
    while (i >= 0 && t[i] == m - 1) t[i--] = 0;
    if (i < 0) return;
    ++t[i];
  }
}

}  // namespace

int OperatorDomain::add(std::string name, int arity) {
  if (find(name) >= 0) throw InputError("duplicate operation symbol " + name);
  if (arity < 0) throw InputError("negative arity for " + name);
  symbols.push_back({std::move(name), arity});
  return static_cast<int>(symbols.size()) - 1;
}

int OperatorDomain::find(std::string_view name) const {
  for (std::size_t i = 0; i < symbols.size(); ++i)
    if (symbols[i].name == name) return static_cast<int>(i);
  return -1;
}

// ---------------------------------------------------------------------------
// Terms

int TermBank::var(int i) { return apply(-(i + 1), {}); }

int TermBank::apply(int op, std::vector<int> args) {
  auto key = std::make_pair(op, args);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  TermNode n{op, std::move(args), 0};
  if (op >= 0) {
    n.depth = 1;
    for (int a : n.args) n.depth = std::max(n.depth, nodes_[a].depth + 1);
  }
  nodes_.push_back(std::move(n));
  int id = static_cast<int>(nodes_.size()) - 1;
  index_.emplace(std::move(key), id);
  return id;
}

int TermBank::variables(int t) const {
  const TermNode& n = nodes_[t];
  if (n.op < 0) return -n.op;
  int v = 0;
  for (int a : n.args) v = std::max(v, variables(a));
  return v;
}

int TermBank::substitute(int t, const std::vector<int>& s) {
  if (is_var(t)) return s.at(var_index(t));
  std::vector<int> args;
  for (int a : nodes_[t].args) args.push_back(substitute(a, s));
  return apply(nodes_[t].op, std::move(args));
}

std::string TermBank::print(int t, const OperatorDomain& d) const {
  const TermNode& n = nodes_[t];
  if (n.op < 0) return "x" + std::to_string(-n.op);
  std::string s = d.symbols.at(n.op).name;
  if (n.args.empty()) return s;
  s += '(';
  for (std::size_t i = 0; i < n.args.size(); ++i) {
    if (i) s += ',';
    s += print(n.args[i], d);
  }
  return s + ')';
}

Report validate_presentation(const Presentation& p) {
  Report r;
  const TermBank& b = *p.terms;
  std::function<void(int, const std::string&)> check = [&](int t, const std::string& where) {
    const TermNode& n = b.node(t);
    if (n.op < 0) return;
    if (n.op >= static_cast<int>(p.domain.symbols.size())) {
      r.add("symbol", where + ": unknown symbol");
      return;
    }
    if (static_cast<int>(n.args.size()) != p.domain.symbols[n.op].arity)
      r.add("arity", where + ": " + p.domain.symbols[n.op].name + " applied to " + std::to_string(n.args.size()));
    for (int a : n.args) check(a, where);
  };
  for (std::size_t i = 0; i < p.equations.size(); ++i) {
    const Equation& e = p.equations[i];
    std::string where = "equation " + std::to_string(i);
    check(e.lhs, where);
    check(e.rhs, where);
    if (b.variables(e.lhs) > e.arity || b.variables(e.rhs) > e.arity) r.add("arity", where + ": variable beyond arity");
  }
  return r;
}

namespace {

struct TermParser {
  TermBank& bank;
  const OperatorDomain& d;
  std::string_view s;
  std::size_t i = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("column " + std::to_string(i + 1) + ": " + msg);
  }
  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  std::string name() {
    skip();
    std::size_t b = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '\'')) ++i;
    if (b == i) fail("expected a symbol or variable");
    return std::string(s.substr(b, i - b));
  }
  int term() {
    std::size_t at = i;
    std::string n = name();
    int sym = d.find(n);
    if (sym < 0 && n.size() > 1 && n[0] == 'x' &&
        std::all_of(n.begin() + 1, n.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      int v = std::stoi(n.substr(1));
      if (v < 1) fail("variables start at x1");
      return bank.var(v - 1);
    }
    if (sym < 0) {
      i = at;
      skip();
      fail("unknown symbol " + n);
    }
    std::vector<int> args;
    skip();
    if (i < s.size() && s[i] == '(') {
      ++i;
      skip();
      if (i < s.size() && s[i] == ')') {
        ++i;
      } else {
        while (true) {
          args.push_back(term());
          skip();
          if (i < s.size() && s[i] == ',') {
            ++i;
            continue;
          }
          if (i < s.size() && s[i] == ')') {
            ++i;
            break;
          }
          fail("expected ',' or ')'");
        }
      }
    }
    if (static_cast<int>(args.size()) != d.symbols[sym].arity)
      fail(n + " expects " + std::to_string(d.symbols[sym].arity) + " arguments, got " + std::to_string(args.size()));
    return bank.apply(sym, std::move(args));
  }
};

}  // namespace

int parse_term(TermBank& bank, const OperatorDomain& d, std::string_view text) {
  TermParser p{bank, d, text};
  int t = p.term();
  p.skip();
  if (p.i != text.size()) p.fail("trailing input");
  return t;
}

Presentation parse_presentation(std::string_view text) {
  Presentation p;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto fail = [&](std::size_t col, const std::string& msg) {
      throw InputError("line " + std::to_string(lineno) + ", column " + std::to_string(col + 1) + ": " + msg);
    };
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    std::size_t e = line.find_first_of(" \t", b);
    std::string kw = line.substr(b, e == std::string::npos ? std::string::npos : e - b);
    std::size_t rest = e == std::string::npos ? line.size() : line.find_first_not_of(" \t", e);
    if (rest == std::string::npos) rest = line.size();
    if (kw == "op") {
      std::istringstream ls(line.substr(rest));
      std::string name;
      int arity = -1;
      std::string extra;
      if (!(ls >> name >> arity) || (ls >> extra)) fail(rest, "expected 'op <name> <arity>'");
      try {
        p.domain.add(name, arity);
      } catch (const InputError& err) {
        fail(rest, err.what());
      }
    } else if (kw == "eq") {
      int arity = -1;
      std::size_t pos = rest;
      if (pos < line.size() && std::isdigit(static_cast<unsigned char>(line[pos]))) {
        std::size_t q = pos;
        while (q < line.size() && std::isdigit(static_cast<unsigned char>(line[q]))) ++q;
        arity = std::stoi(line.substr(pos, q - pos));
        pos = q;
      }
      std::size_t eqsign = line.find('=', pos);
      if (eqsign == std::string::npos) fail(pos, "expected '<term> = <term>'");
      Equation eq;
      try {
        eq.lhs = parse_term(*p.terms, p.domain, std::string_view(line).substr(pos, eqsign - pos));
      } catch (const InputError& err) {
        fail(pos, err.what());
      }
      try {
        eq.rhs = parse_term(*p.terms, p.domain, std::string_view(line).substr(eqsign + 1));
      } catch (const InputError& err) {
        fail(eqsign + 1, err.what());
      }
      int used = std::max(p.terms->variables(eq.lhs), p.terms->variables(eq.rhs));
      if (arity >= 0 && arity < used) fail(rest, "equation uses more variables than its arity");
      eq.arity = arity >= 0 ? arity : used;
      p.equations.push_back(eq);
    } else {
      fail(b, "unknown keyword " + kw);
    }
  }
  return p;
}

std::string print_presentation(const Presentation& p) {
  std::string s;
  for (const auto& sym : p.domain.symbols) s += "op " + sym.name + " " + std::to_string(sym.arity) + "\n";
  for (const auto& e : p.equations)
    s += "eq " + std::to_string(e.arity) + " " + p.terms->print(e.lhs, p.domain) + " = " +
         p.terms->print(e.rhs, p.domain) + "\n";
  return s;
}

Presentation group_presentation() {
  return parse_presentation(
      "op e 0\n"
      "op i 1\n"
      "op m 2\n"
      "eq 3 m(x1,m(x2,x3)) = m(m(x1,x2),x3)\n"
      "eq 1 m(e,x1) = x1\n"
      "eq 1 m(x1,e) = x1\n"
      "eq 1 m(x1,i(x1)) = e\n");
}

std::vector<int> generate_terms(TermBank& bank, const OperatorDomain& d, int n, int depth_bound) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i) out.push_back(bank.var(i));
  std::size_t below = 0;  // out[below..] has depth exactly current - 1
  for (int depth = 1; depth <= depth_bound; ++depth) {
    std::size_t layer = out.size();
    for (int s = 0; s < static_cast<int>(d.symbols.size()); ++s) {
      int k = d.symbols[s].arity;
      if (k == 0) {
        if (depth == 1) out.push_back(bank.apply(s, {}));
        continue;
      }
      if (layer == 0) continue;
      std::vector<std::size_t> pick(k, 0);
      while (true) {
        bool fresh = false;
        for (std::size_t p : pick) fresh |= p >= below;
        if (fresh) {
          std::vector<int> args;
          for (std::size_t p : pick) args.push_back(out[p]);
          out.push_back(bank.apply(s, std::move(args)));
        }
        int i = k - 1;
        while (i >= 0 && pick[i] + 1 == layer) pick[i--] = 0;
        if (i < 0) break;
        ++pick[i];
      }
    }
    below = layer;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Models

Report validate_omega_model(const OperatorDomain& d, const OmegaModel& a) {
  Report r;
  if (a.ops.size() != d.symbols.size()) {
    r.add("symbols", "expected " + std::to_string(d.symbols.size()) + " tables");
    return r;
  }
  for (std::size_t s = 0; s < d.symbols.size(); ++s) {
    if (static_cast<long long>(a.ops[s].size()) != ipow(a.size, d.symbols[s].arity))
      r.add("table", d.symbols[s].name + " has the wrong size");
    for (int v : a.ops[s])
      if (v < 0 || v >= a.size) {
        r.add("table", d.symbols[s].name + " leaves the carrier");
        break;
      }
  }
  return r;
}

namespace {

// Tables of many terms at once, children before parents.
struct Evaluator {
  const TermBank& bank;
  const OmegaModel& a;
  int n;
  long long tuples;
  std::unordered_map<int, Table> memo;

  Evaluator(const TermBank& b, const OmegaModel& m, int arity) : bank(b), a(m), n(arity), tuples(ipow(m.size, arity)) {}

  const Table& eval(int t) {
    auto it = memo.find(t);
    if (it != memo.end()) return it->second;
    const TermNode& node = bank.node(t);
    Table out(tuples);
    if (node.op < 0) {
      int v = -node.op - 1;
      if (v >= n) throw PreconditionError("variable x" + std::to_string(v + 1) + " beyond arity " + std::to_string(n));
      long long place = ipow(a.size, n - 1 - v);
      for (long long x = 0; x < tuples; ++x) out[x] = static_cast<int>(x / place % a.size);
    } else {
      if (node.op >= static_cast<int>(a.ops.size())) throw PreconditionError("model lacks symbol " + std::to_string(node.op));
      std::vector<const Table*> args;
      for (int c : node.args) args.push_back(&eval(c));
      const Table& op = a.ops[node.op];
      for (long long x = 0; x < tuples; ++x) {
        long long code = 0;
        for (const Table* c : args) code = code * a.size + (*c)[x];
        out[x] = op[code];
      }
    }
    return memo.emplace(t, std::move(out)).first->second;
  }
};

}  // namespace

Table interpret_term(const TermBank& bank, int t, const OmegaModel& a, int n) {
  Evaluator ev(bank, a, n);
  return ev.eval(t);
}

bool satisfies(const TermBank& bank, const OmegaModel& a, const Equation& eq) {
  if (bank.variables(eq.lhs) > eq.arity || bank.variables(eq.rhs) > eq.arity)
    throw PreconditionError("equation uses variables beyond its arity");
  Evaluator ev(bank, a, eq.arity);
  return ev.eval(eq.lhs) == ev.eval(eq.rhs);
}

std::vector<OmegaModel> enumerate_omega_models(const Presentation& p, int carrier_size) {
  const auto& syms = p.domain.symbols;
  const int ns = static_cast<int>(syms.size());
  std::vector<std::set<int>> uses(p.equations.size());
  std::function<void(int, std::set<int>&)> collect = [&](int t, std::set<int>& out) {
    const TermNode& n = p.terms->node(t);
    if (n.op >= 0) out.insert(n.op);
    for (int c : n.args) collect(c, out);
  };
  for (std::size_t e = 0; e < p.equations.size(); ++e) {
    collect(p.equations[e].lhs, uses[e]);
    collect(p.equations[e].rhs, uses[e]);
  }
  // assign symbols so that equations become checkable as early as possible
  std::vector<int> order;
  std::vector<char> placed(ns, 0);
  std::vector<std::vector<int>> ready(ns + 1);
  auto complete = [&](std::size_t e) {
    for (int s : uses[e])
      if (!placed[s]) return false;
    return true;
  };
  std::vector<char> done(p.equations.size(), 0);
  for (std::size_t e = 0; e < p.equations.size(); ++e)
    if (uses[e].empty()) {
      ready[0].push_back(static_cast<int>(e));
      done[e] = 1;
    }
  for (int step = 0; step < ns; ++step) {
    int best = -1, best_gain = -1;
    for (int s = 0; s < ns; ++s) {
      if (placed[s]) continue;
      placed[s] = 1;
      int gain = 0;
      for (std::size_t e = 0; e < p.equations.size(); ++e) gain += !done[e] && complete(e);
      placed[s] = 0;
      if (gain > best_gain || (gain == best_gain && syms[s].arity > syms[best].arity)) {
        best = s;
        best_gain = gain;
      }
    }
    placed[best] = 1;
    order.push_back(best);
    for (std::size_t e = 0; e < p.equations.size(); ++e)
      if (!done[e] && complete(e)) {
        ready[step + 1].push_back(static_cast<int>(e));
        done[e] = 1;
      }
  }
  std::vector<OmegaModel> out;
  OmegaModel a;
  a.size = carrier_size;
  a.ops.resize(ns);
  auto holds = [&](int step) {
    for (int e : ready[step])
      if (!satisfies(*p.terms, a, p.equations[e])) return false;
    return true;
  };
  std::function<void(int)> dfs = [&](int step) {
    if (!holds(step)) return;
    if (step == ns) {
      out.push_back(a);
      return;
    }
    int s = order[step];
    for_each_function(ipow(carrier_size, syms[s].arity), carrier_size, [&](const Table& t) {
      a.ops[s] = t;
      dfs(step + 1);
    });
    a.ops[s].clear();
  };
  dfs(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Table> model_homomorphisms(const OperatorDomain& d, const OmegaModel& a, const OmegaModel& b) {
  std::vector<Table> out;
  for_each_function(a.size, b.size, [&](const Table& h) {
    for (std::size_t s = 0; s < d.symbols.size(); ++s) {
      const int k = d.symbols[s].arity;
      const long long tuples = ipow(a.size, k);
      for (long long x = 0; x < tuples; ++x) {
        long long y = 0, rest = x, place = 1;
        for (int i = 0; i < k; ++i) {
          y += h[rest % a.size] * place;
          rest /= a.size;
          place *= b.size;
        }
        if (h[a.ops[s][x]] != b.ops[s][y]) return;
      }
    }
    out.push_back(h);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Provability

int Closure::class_of(int term) const {
  for (std::size_t i = 0; i < terms.size(); ++i)
    if (terms[i] == term) return cls[i];
  return -1;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

bool match(const TermBank& bank, int pattern, int t, std::vector<int>& sigma) {
  const TermNode& p = bank.node(pattern);
  if (p.op < 0) {
    int& slot = sigma[-p.op - 1];
    if (slot < 0) {
      slot = t;
      return true;
    }
    return slot == t;
  }
  const TermNode& n = bank.node(t);
  if (n.op != p.op) return false;
  for (std::size_t i = 0; i < p.args.size(); ++i)
    if (!match(bank, p.args[i], n.args[i], sigma)) return false;
  return true;
}

int depth_after(const TermBank& bank, int t, const std::vector<int>& sigma) {
  const TermNode& n = bank.node(t);
  if (n.op < 0) return bank.node(sigma[-n.op - 1]).depth;
  int d = 1;
  for (int c : n.args) d = std::max(d, depth_after(bank, c, sigma) + 1);
  return d;
}

void free_variables(const TermBank& bank, int t, const std::vector<int>& sigma, std::set<int>& out) {
  const TermNode& n = bank.node(t);
  if (n.op < 0) {
    if (sigma[-n.op - 1] < 0) out.insert(-n.op - 1);
    return;
  }
  for (int c : n.args) free_variables(bank, c, sigma, out);
}

}  // namespace

Closure congruence_closure(const Presentation& p, int n, int depth_bound) {
  TermBank& bank = *p.terms;
  Closure c;
  c.arity = n;
  c.depth = depth_bound;
  c.terms = generate_terms(bank, p.domain, n, depth_bound);
  std::unordered_map<int, int> pos;
  for (std::size_t i = 0; i < c.terms.size(); ++i) pos[c.terms[i]] = static_cast<int>(i);
  UnionFind uf(c.terms.size());
  // axiom instances with every substituted term inside the bound
  for (const Equation& eq : p.equations)
    for (int side = 0; side < 2; ++side) {
      int l = side ? eq.rhs : eq.lhs, r = side ? eq.lhs : eq.rhs;
      for (std::size_t u = 0; u < c.terms.size(); ++u) {
        std::vector<int> sigma(std::max(eq.arity, 1), -1);
        if (!match(bank, l, c.terms[u], sigma)) continue;
        std::set<int> fv;
        free_variables(bank, r, sigma, fv);
        std::vector<int> open(fv.begin(), fv.end());
        std::function<void(std::size_t)> fill = [&](std::size_t k) {
          if (k == open.size()) {
            if (depth_after(bank, r, sigma) > depth_bound) return;
            std::vector<int> full = sigma;
            for (int& v : full)
              if (v < 0) v = bank.var(0);
            int rt = bank.substitute(r, full);
            ++c.instances;
            uf.unite(static_cast<int>(u), pos.at(rt));
            return;
          }
          for (int t : c.terms) {
            sigma[open[k]] = t;
            fill(k + 1);
          }
          sigma[open[k]] = -1;
        };
        fill(0);
      }
    }
  // congruence: an operation applied to equivalent arguments
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::pair<int, std::vector<int>>, int> sig;
    for (std::size_t i = 0; i < c.terms.size(); ++i) {
      const TermNode& node = bank.node(c.terms[i]);
      if (node.op < 0) continue;
      std::vector<int> key;
      for (int a : node.args) key.push_back(uf.find(pos.at(a)));
      auto [it, fresh] = sig.emplace(std::make_pair(node.op, std::move(key)), static_cast<int>(i));
      if (!fresh) changed |= uf.unite(it->second, static_cast<int>(i));
    }
  }
  std::map<int, int> number;
  for (std::size_t i = 0; i < c.terms.size(); ++i) {
    int root = uf.find(static_cast<int>(i));
    auto [it, fresh] = number.emplace(root, c.classes);
    if (fresh) ++c.classes;
    c.cls.push_back(it->second);
  }
  return c;
}

SoundnessReport soundness_check(const Presentation& p, int n, int depth_bound, int carrier_bound) {
  SoundnessReport r;
  r.arity = n;
  r.depth = depth_bound;
  r.carrier_bound = carrier_bound;
  Closure c = congruence_closure(p, n, depth_bound);
  r.terms = c.terms.size();
  r.provable_classes = c.classes;
  std::vector<std::vector<int>> semantics(c.terms.size());
  for (int k = 0; k <= carrier_bound; ++k)
    for (const OmegaModel& a : enumerate_omega_models(p, k)) {
      ++r.models;
      Evaluator ev(*p.terms, a, n);
      for (std::size_t i = 0; i < c.terms.size(); ++i) {
        const Table& t = ev.eval(c.terms[i]);
        semantics[i].insert(semantics[i].end(), t.begin(), t.end());
      }
    }
  std::map<std::vector<int>, int> sem_class;
  std::vector<int> sem(c.terms.size());
  for (std::size_t i = 0; i < c.terms.size(); ++i)
    sem[i] = sem_class.emplace(semantics[i], static_cast<int>(sem_class.size())).first->second;
  r.semantic_classes = static_cast<int>(sem_class.size());
  std::vector<int> first(c.classes, -1);
  for (std::size_t i = 0; i < c.terms.size(); ++i) {
    int& f = first[c.cls[i]];
    if (f < 0) {
      f = static_cast<int>(i);
    } else if (sem[f] != sem[i]) {
      r.violations.add("soundness", p.terms->print(c.terms[f], p.domain) + " ~ " +
                                        p.terms->print(c.terms[i], p.domain) + " but their interpretations differ");
    }
  }
  std::map<int, int> rep;  // semantic class -> first provable class seen
  std::set<std::pair<int, int>> merged;
  for (std::size_t i = 0; i < c.terms.size(); ++i) {
    auto [it, fresh] = rep.emplace(sem[i], c.cls[i]);
    if (!fresh && it->second != c.cls[i] && merged.insert({it->second, c.cls[i]}).second) {
      ++r.unproven_pairs;
      if (r.unproven.size() < 5) r.unproven.push_back({c.terms[first[it->second]], c.terms[i]});
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// str_0

Str0 str0(const SetFunctor& u, int arity_bound) {
  Str0 s;
  const auto& C = *u.dom;
  s.tautological.resize(C.num_objects());
  for (int m = 0; m < C.num_objects(); ++m) s.tautological[m].size = u.size[m];
  for (int n = 0; n <= arity_bound; ++n) {
    SetFunctor un = power(u, n);
    auto nats = enumerate_set_nat(un, u);
    for (std::size_t i = 0; i < nats.size(); ++i) {
      s.domain.add("w" + std::to_string(n) + "_" + std::to_string(i), n);
      for (int m = 0; m < C.num_objects(); ++m) s.tautological[m].ops.push_back(nats[i].comp[m]);
    }
    s.ops.push_back(std::move(nats));
  }
  for (int m = 0; m < C.num_objects(); ++m) s.report.merge(validate_omega_model(s.domain, s.tautological[m]));
  if (!s.report.ok()) return s;
  for (int f = 0; f < C.num_morphisms(); ++f) {
    const OmegaModel& a = s.tautological[C.src(f)];
    const OmegaModel& b = s.tautological[C.dst(f)];
    const Table& h = u.map[f];
    for (std::size_t k = 0; k < s.domain.symbols.size(); ++k) {
      const int ar = s.domain.symbols[k].arity;
      const long long tuples = ipow(a.size, ar);
      bool ok = true;
      for (long long x = 0; x < tuples && ok; ++x) {
        long long y = 0, rest = x, place = 1;
        for (int i = 0; i < ar; ++i) {
          y += h[rest % a.size] * place;
          rest /= a.size;
          place *= b.size;
        }
        ok = h[a.ops[k][x]] == b.ops[k][y];
      }
      if (!ok) s.report.add("unit", C.morphism_name(f) + " does not preserve " + s.domain.symbols[k].name);
    }
  }
  return s;
}

}  // namespace protocat
