#include "protocat/topth.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace protocat {

namespace {

bool contains(const std::vector<int>& sorted, int x) { return std::binary_search(sorted.begin(), sorted.end(), x); }

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

// ---------------------------------------------------------------------------
// Finite topologies

FinTopology FinTopology::discrete(int n) {
  FinTopology t;
  for (int x = 0; x < n; ++x) t.min_.push_back({x});
  return t;
}

FinTopology FinTopology::indiscrete(int n) {
  FinTopology t;
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  t.min_.assign(n, all);
  return t;
}

FinTopology FinTopology::partition(const std::vector<int>& block) {
  FinTopology t;
  std::map<int, std::vector<int>> members;
  for (int x = 0; x < static_cast<int>(block.size()); ++x) members[block[x]].push_back(x);
  for (int b : block) t.min_.push_back(members[b]);
  return t;
}

FinTopology FinTopology::from_opens(int n, const std::vector<std::vector<int>>& opens) {
  FinTopology t;
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  t.min_.assign(n, all);
  for (auto o : opens) {
    std::sort(o.begin(), o.end());
    for (int x : o) {
      std::vector<int> meet;
      std::set_intersection(t.min_[x].begin(), t.min_[x].end(), o.begin(), o.end(), std::back_inserter(meet));
      t.min_[x] = std::move(meet);
    }
  }
  return t;
}

FinTopology FinTopology::from_minimal(std::vector<std::vector<int>> minimal) {
  for (auto& u : minimal) std::sort(u.begin(), u.end());
  for (int x = 0; x < static_cast<int>(minimal.size()); ++x) {
    if (!contains(minimal[x], x)) throw PreconditionError("minimal open of a point must contain it");
    for (int y : minimal[x])
      if (y < 0 || y >= static_cast<int>(minimal.size()) || !subset_of(minimal[y], minimal[x]))
        throw PreconditionError("minimal opens are not nested");
  }
  FinTopology t;
  t.min_ = std::move(minimal);
  return t;
}

bool FinTopology::is_open(const std::vector<int>& subset) const {
  std::vector<int> s = subset;
  std::sort(s.begin(), s.end());
  for (int x : s)
    if (!subset_of(min_[x], s)) return false;
  return true;
}

std::vector<std::vector<int>> FinTopology::opens() const {
  std::set<std::vector<int>> out{{}};
  for (int x = 0; x < size(); ++x) {
    std::vector<std::vector<int>> add;
    for (const auto& o : out) {
      std::vector<int> u;
      std::set_union(o.begin(), o.end(), min_[x].begin(), min_[x].end(), std::back_inserter(u));
      add.push_back(std::move(u));
    }
    out.insert(add.begin(), add.end());
  }
  return {out.begin(), out.end()};
}

bool FinTopology::is_discrete() const {
  for (const auto& u : min_)
    if (u.size() != 1) return false;
  return true;
}

bool FinTopology::is_indiscrete() const {
  for (const auto& u : min_)
    if (static_cast<int>(u.size()) != size()) return false;
  return true;
}

Report validate_opens(int n, const std::vector<std::vector<int>>& opens) {
  Report r;
  std::set<std::vector<int>> family;
  for (auto o : opens) {
    std::sort(o.begin(), o.end());
    o.erase(std::unique(o.begin(), o.end()), o.end());
    for (int x : o)
      if (x < 0 || x >= n) {
        r.add("carrier", "open set leaves the carrier");
        return r;
      }
    family.insert(std::move(o));
  }
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  if (!family.count({})) r.add("empty", "the empty set is not open");
  if (!family.count(all)) r.add("carrier", "the carrier is not open");
  for (const auto& a : family)
    for (const auto& b : family) {
      std::vector<int> u, m;
      std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
      if (!family.count(u)) {
        r.add("union", "not closed under union");
        return r;
      }
      if (!family.count(m)) {
        r.add("intersection", "not closed under intersection");
        return r;
      }
    }
  return r;
}

FinTopology product(const FinTopology& a, const FinTopology& b) {
  std::vector<std::vector<int>> m;
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < b.size(); ++y) {
      std::vector<int> u;
      for (int x2 : a.minimal_open(x))
        for (int y2 : b.minimal_open(y)) u.push_back(x2 * b.size() + y2);
      m.push_back(std::move(u));
    }
  return FinTopology::from_minimal(std::move(m));
}

FinTopology subspace(const FinTopology& t, const std::vector<int>& subset) {
  std::vector<int> s = subset;
  std::sort(s.begin(), s.end());
  std::vector<std::vector<int>> m;
  for (int x : s) {
    std::vector<int> u;
    for (int y : t.minimal_open(x)) {
      auto it = std::lower_bound(s.begin(), s.end(), y);
      if (it != s.end() && *it == y) u.push_back(static_cast<int>(it - s.begin()));
    }
    m.push_back(std::move(u));
  }
  return FinTopology::from_minimal(std::move(m));
}

FinTopology initial_topology(int n, const std::vector<std::pair<Table, FinTopology>>& maps) {
  if (std::all_of(maps.begin(), maps.end(), [](const auto& m) { return m.second.is_discrete(); })) {
    // joint kernel
    std::map<std::vector<int>, int> label;
    std::vector<int> block(n);
    for (int x = 0; x < n; ++x) {
      std::vector<int> key;
      for (const auto& [f, t] : maps) key.push_back(f[x]);
      block[x] = label.emplace(std::move(key), static_cast<int>(label.size())).first->second;
    }
    return FinTopology::partition(block);
  }
  std::vector<std::vector<int>> m;
  for (int x = 0; x < n; ++x) {
    std::vector<int> u;
    for (int y = 0; y < n; ++y) {
      bool in = true;
      for (const auto& [f, t] : maps)
        if (!contains(t.minimal_open(f[x]), f[y])) {
          in = false;
          break;
        }
      if (in) u.push_back(y);
    }
    m.push_back(std::move(u));
  }
  return FinTopology::from_minimal(std::move(m));
}

bool is_continuous(const Table& f, const FinTopology& x, const FinTopology& y) {
  for (int a = 0; a < x.size(); ++a)
    for (int b : x.minimal_open(a))
      if (!contains(y.minimal_open(f[a]), f[b])) return false;
  return true;
}

bool is_dense(const FinTopology& t, const std::vector<int>& subset) {
  std::vector<int> s = subset;
  std::sort(s.begin(), s.end());
  for (int x = 0; x < t.size(); ++x) {
    bool meets = false;
    for (int y : t.minimal_open(x))
      if (contains(s, y)) {
        meets = true;
        break;
      }
    if (!meets) return false;
  }
  return true;
}

FinTopology set_t_topology(int x, int y) {
  long long count = 1;
  for (int i = 0; i < x; ++i) count *= y;
  std::vector<std::pair<Table, FinTopology>> ev;
  for (int i = 0; i < x; ++i) {
    Table f(count);
    for (long long c = 0; c < count; ++c) {
      long long v = c;
      for (int j = x - 1; j > i; --j) v /= y;
      f[c] = static_cast<int>(v % y);
    }
    ev.emplace_back(std::move(f), FinTopology::discrete(y));
  }
  FinTopology t = initial_topology(static_cast<int>(count), ev);
  if (!t.is_discrete() && count > 1 && x > 0) throw PreconditionError("pointwise topology on finite sets must be discrete");
  return t;
}

// ---------------------------------------------------------------------------
// Topological proto-theories

TopProtoTheory disc(const ProtoTheory& l, const Aritation& ar) {
  TopProtoTheory t{l, ar, {}};
  const auto& T = *l.theory;
  for (int a = 0; a < T.num_objects(); ++a)
    for (int a2 = 0; a2 < T.num_objects(); ++a2)
      t.hom.push_back(FinTopology::discrete(static_cast<int>(T.hom(a, a2).size())));
  return t;
}

TopProtoTheory quotient_topology(const ProtoTheory& l, const Aritation& ar,
                                 const std::vector<std::pair<int, int>>& identify) {
  const auto& T = *l.theory;
  std::vector<int> parent(T.num_morphisms());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  };
  for (auto [f, g] : identify) {
    if (T.src(f) != T.src(g) || T.dst(f) != T.dst(g)) throw PreconditionError("identified morphisms are not parallel");
    unite(f, g);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int f = 0; f < T.num_morphisms(); ++f) {
      int r = find(f);
      if (r == f) continue;
      for (int g : T.out(T.dst(f))) changed |= unite(T.compose(g, f), T.compose(g, r));
      for (int h : T.in(T.src(f))) changed |= unite(T.compose(f, h), T.compose(r, h));
    }
  }
  TopProtoTheory t{l, ar, {}};
  for (int a = 0; a < T.num_objects(); ++a)
    for (int a2 = 0; a2 < T.num_objects(); ++a2) {
      std::vector<int> block;
      for (int f : T.hom(a, a2)) block.push_back(find(f));
      t.hom.push_back(FinTopology::partition(block));
    }
  return t;
}

Report validate_top_theory(const TopProtoTheory& l) {
  Report r;
  const auto& T = *l.theory.theory;
  const int n = T.num_objects();
  if (static_cast<int>(l.hom.size()) != n * n) {
    r.add("shape", "one topology per hom-set expected");
    return r;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (l.top(a, b).size() != static_cast<int>(T.hom(a, b).size()))
        r.add("shape", "topology on " + T.object_name(a) + " -> " + T.object_name(b) + " has the wrong carrier");
  if (!r.ok()) return r;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const auto& tf = l.top(a, b);
        const auto& tg = l.top(b, c);
        const auto& tgf = l.top(a, c);
        if (tf.is_discrete() && tg.is_discrete()) continue;
        const auto& hf = T.hom(a, b);
        const auto& hg = T.hom(b, c);
        for (std::size_t f = 0; f < hf.size(); ++f)
          for (std::size_t g = 0; g < hg.size(); ++g) {
            const auto& target = tgf.minimal_open(T.hom_pos(T.compose(hg[g], hf[f])));
            for (int f2 : tf.minimal_open(static_cast<int>(f)))
              for (int g2 : tg.minimal_open(static_cast<int>(g)))
                if (!contains(target, T.hom_pos(T.compose(hg[g2], hf[f2])))) {
                  r.add("continuity", "composition " + T.object_name(a) + " -> " + T.object_name(b) + " -> " +
                                          T.object_name(c) + " is not continuous");
                  goto next;
                }
          }
      next:;
      }
  return r;
}

TopProtoTheory restrict_top_theory(const TopProtoTheory& l, const std::vector<int>& arity_objects) {
  const auto& A = *l.theory.arities;
  const auto& T = *l.theory.theory;
  std::vector<int> tobj;
  for (int a : arity_objects) tobj.push_back(l.theory.L.obj[a]);
  auto asub = full_subcategory(A, arity_objects);
  auto tsub = full_subcategory(T, tobj);
  FinFunctor L{asub, tsub, {}, {}};
  for (int a = 0; a < asub->num_objects(); ++a)
    L.obj.push_back(tsub->object(T.object_name(l.theory.L.obj[A.object(asub->object_name(a))])));
  for (int f = 0; f < asub->num_morphisms(); ++f)
    L.mor.push_back(tsub->morphism(T.morphism_name(l.theory.L.mor[A.morphism(asub->morphism_name(f))])));
  TopProtoTheory r{make_proto_theory(L), restrict_arities(l.aritation, arity_objects), {}};
  const auto& S = *tsub;
  for (int a = 0; a < S.num_objects(); ++a)
    for (int b = 0; b < S.num_objects(); ++b) {
      int oa = T.object(S.object_name(a)), ob = T.object(S.object_name(b));
      r.hom.push_back(l.top(oa, ob));  // full subcategory: same hom-set, same order
    }
  return r;
}

bool is_continuous_model(const Semantics& sem, const Model& x, const TopProtoTheory& l) {
  const auto& T = *l.theory.theory;
  const int n = T.num_objects();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const FinTopology& t = l.top(a, b);
      if (t.is_discrete()) continue;
      const auto& h = T.hom(a, b);
      const int elems = sem.aritation().size(l.theory.arity[a], x.carrier);
      for (std::size_t i = 0; i < h.size(); ++i)
        for (int j : t.minimal_open(static_cast<int>(i))) {
          if (j <= static_cast<int>(i)) continue;
          for (int e = 0; e < elems; ++e)
            if (sem.gamma(x, h[i], e) != sem.gamma(x, h[j], e)) return false;
        }
    }
  return true;
}

ModelCategory top_model_category(const TopProtoTheory& l) {
  auto sem = std::make_shared<Semantics>(l.theory, l.aritation);
  std::vector<Model> keep;
  for (const Model& x : sem->enumerate_models())
    if (is_continuous_model(*sem, x, l)) keep.push_back(x);
  return model_category(sem, std::move(keep));
}

TopStructure structure_topological(const FinFunctor& u, const Aritation& ar) {
  TopStructure s{structure(u, ar), {}};
  s.theory.theory = s.str.theory;
  s.theory.aritation = ar;
  const auto& T = *s.str.theory.theory;
  for (int a = 0; a < T.num_objects(); ++a)
    for (int a2 = 0; a2 < T.num_objects(); ++a2) {
      const auto& h = T.hom(a, a2);
      std::vector<std::pair<Table, FinTopology>> ev;
      if (!h.empty()) {
        const std::size_t coords = s.str.components(h[0]).size();
        for (std::size_t c = 0; c < coords; ++c) {
          Table f;
          int top = 0;
          for (int k : h) {
            f.push_back(s.str.components(k)[c]);
            top = std::max(top, f.back() + 1);
          }
          ev.emplace_back(std::move(f), FinTopology::discrete(top));
        }
      }
      s.theory.hom.push_back(initial_topology(static_cast<int>(h.size()), ev));
    }
  return s;
}

TopStructure structure_topological(const FinFunctor& u) { return structure_topological(u, canonical_aritation(u.dst)); }

bool is_topologically_dense(const TheoryMorphism& p, const TopProtoTheory& to) {
  const auto& S = *p.from.theory;
  const auto& T = *p.to.theory;
  for (int a = 0; a < S.num_objects(); ++a)
    for (int b = 0; b < S.num_objects(); ++b) {
      std::vector<int> image;
      for (int f : S.hom(a, b)) image.push_back(T.hom_pos(p.P.mor[f]));
      if (!is_dense(to.top(p.P.obj[a], p.P.obj[b]), image)) return false;
    }
  return true;
}

Completeness check_complete(const TopProtoTheory& l, bool check_semantics) {
  Completeness c;
  c.mod = top_model_category(l);
  c.cplt = structure_topological(c.mod.forget, l.aritation);
  FinFunctor P = psi(c.mod, identity_functor(c.mod.cat), c.cplt.str, c.mod.forget);
  c.E = TheoryMorphism{l.theory, c.cplt.theory.theory, P};
  if (!validate_theory_morphism(c.E).ok()) c.report.add("counit", "E is not a theory morphism");
  const auto& S = *l.theory.theory;
  const auto& T = *c.cplt.theory.theory.theory;
  c.continuous = c.bijective = true;
  bool inverse_continuous = true;
  for (int a = 0; a < S.num_objects(); ++a)
    for (int b = 0; b < S.num_objects(); ++b) {
      const auto& h = S.hom(a, b);
      const int ta = P.obj[a], tb = P.obj[b];
      const FinTopology& ts = l.top(a, b);
      const FinTopology& tt = c.cplt.theory.top(ta, tb);
      Table f;
      for (int k : h) f.push_back(T.hom_pos(P.mor[k]));
      if (!is_continuous(f, ts, tt)) c.continuous = false;
      std::vector<int> inv(T.hom(ta, tb).size(), -1);
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (inv[f[i]] >= 0) c.bijective = false;
        inv[f[i]] = static_cast<int>(i);
      }
      if (std::find(inv.begin(), inv.end(), -1) != inv.end()) c.bijective = false;
      if (c.bijective && !is_continuous(inv, tt, ts)) inverse_continuous = false;
    }
  c.complete = c.bijective && c.continuous && inverse_continuous;
  c.dense = is_topologically_dense(c.E, c.cplt.theory);
  if (!c.continuous) c.report.add("counit", "E is not continuous");
  if (check_semantics) {
    ModelCategory top = top_model_category(c.cplt.theory);
    FinFunctor F;
    bool built = true;
    try {
      F = sem_on_morphism(c.E, top, c.mod);
    } catch (const PreconditionError& e) {
      built = false;
      c.report.add("semantics", e.what());
    }
    if (built) {
      c.sem_checked = true;
      auto onto = [](const std::vector<int>& m, int n) {
        std::vector<char> hit(n, 0);
        for (int v : m) hit[v] = 1;
        return std::find(hit.begin(), hit.end(), 0) == hit.end();
      };
      const int no = c.mod.cat->num_objects(), nm = c.mod.cat->num_morphisms();
      c.sem_split_epic = onto(F.obj, no) && onto(F.mor, nm);
      c.sem_iso = c.sem_split_epic && top.cat->num_objects() == no && top.cat->num_morphisms() == nm;
      if (!c.sem_split_epic) c.report.add("triangle identity", "sem_t(E) is not surjective");
      if (c.dense && !c.sem_iso) c.report.add("dense-iso", "E is dense but sem_t(E) is not an isomorphism");
    }
  }
  return c;
}

Completeness completion(const TopProtoTheory& l) { return check_complete(l, false); }

// ---------------------------------------------------------------------------
// Enough subobjects

std::optional<std::pair<int, std::vector<int>>> find_coproduct(const FinCategory& b, const std::vector<int>& family) {
  const int k = static_cast<int>(family.size());
  for (int s = 0; s < b.num_objects(); ++s) {
    std::vector<const std::vector<int>*> legs;
    bool empty = false;
    for (int x : family) {
      legs.push_back(&b.hom(x, s));
      empty |= legs.back()->empty();
    }
    if (empty) continue;
    std::vector<std::size_t> pick(k, 0);
    while (true) {
      std::vector<int> iota;
      for (int i = 0; i < k; ++i) iota.push_back((*legs[i])[pick[i]]);
      bool universal = true;
      for (int c = 0; c < b.num_objects() && universal; ++c) {
        std::size_t expect = 1;
        for (int x : family) expect *= b.hom(x, c).size();
        const auto& out = b.hom(s, c);
        if (out.size() != expect) {
          universal = false;
          break;
        }
        std::set<std::vector<int>> seen;
        for (int h : out) {
          std::vector<int> t;
          for (int i : iota) t.push_back(b.compose(h, i));
          if (!seen.insert(std::move(t)).second) {
            universal = false;
            break;
          }
        }
      }
      if (universal) return std::make_pair(s, iota);
      int i = k - 1;
      while (i >= 0 && pick[i] + 1 == legs[i]->size()) pick[i--] = 0;
      if (i < 0) break;
      ++pick[i];
    }
  }
  return std::nullopt;
}

EnoughSubobjects check_enough_subobjects(const CatPtr& cat) {
  const auto& B = *cat;
  const int n = B.num_objects();
  EnoughSubobjects r;
  std::vector<std::pair<int, std::vector<int>>> coproducts;  // (s, coprojections)
  std::vector<std::vector<int>> families{{}};
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      families.push_back({a, b});
      for (int c = b; c < n; ++c) families.push_back({a, b, c});
    }
  std::vector<std::vector<int>> members;
  for (const auto& fam : families)
    if (auto cp = find_coproduct(B, fam)) {
      coproducts.push_back(*cp);
      members.push_back(fam);
    }
  for (int q = 0; q < n && r.holds; ++q) {
    const auto& into = B.in(q);  // morphisms into q
    const int m = static_cast<int>(into.size());
    std::map<int, int> local;
    for (int i = 0; i < m; ++i) local[into[i]] = i;
    std::vector<std::vector<int>> below(m), above(m);
    for (int i = 0; i < m; ++i) {
      std::set<int> bl;
      for (int h : B.in(B.src(into[i]))) bl.insert(local.at(B.compose(into[i], h)));
      below[i].assign(bl.begin(), bl.end());
      for (int j : bl) above[j].push_back(i);
    }
    std::vector<int> state(m, 0);  // 0 open, 1 in, 2 out
    std::function<void(int)> dfs = [&](int i) {
      if (!r.holds) return;
      if (i == m) {
        ++r.sieves;
        std::vector<std::vector<int>> p(n);
        for (int j = 0; j < m; ++j)
          if (state[j] == 1) p[B.src(into[j])].push_back(B.hom_pos(into[j]));
        for (std::size_t k = 0; k < coproducts.size(); ++k) {
          std::size_t prod = 1;
          for (int x : members[k]) prod *= p[x].size();
          if (p[coproducts[k].first].size() != prod) return;
        }
        ++r.product_preserving;
        std::vector<std::set<int>> pset(n);
        for (int c = 0; c < n; ++c) pset[c].insert(p[c].begin(), p[c].end());
        for (int rep = 0; rep < n; ++rep)
          for (int xpos : p[rep]) {
            int x = B.hom(rep, q)[xpos];
            bool iso = true;
            for (int c = 0; c < n && iso; ++c) {
              if (B.hom(c, rep).size() != p[c].size()) {
                iso = false;
                break;
              }
              std::set<int> img;
              for (int h : B.hom(c, rep)) img.insert(B.hom_pos(B.compose(x, h)));
              iso = img == pset[c];
            }
            if (iso) return;
          }
        r.holds = false;
        r.object = q;
        r.witness = p;
        return;
      }
      if (state[i] != 0) {
        dfs(i + 1);
        return;
      }
      // exclude i, and everything factoring i
      std::vector<int> changed;
      bool ok = true;
      for (int j : above[i]) {
        if (state[j] == 1) ok = false;
        if (state[j] == 0) {
          state[j] = 2;
          changed.push_back(j);
        }
      }
      if (ok) {
        state[i] = 2;
        dfs(i + 1);
      }
      state[i] = 0;
      for (int j : changed) state[j] = 0;
      changed.clear();
      // include i and everything it factors through
      ok = true;
      for (int j : below[i]) {
        if (state[j] == 2) ok = false;
        if (state[j] == 0) {
          state[j] = 1;
          changed.push_back(j);
        }
      }
      if (ok) {
        state[i] = 1;
        dfs(i + 1);
      }
      state[i] = 0;
      for (int j : changed) state[j] = 0;
    };
    dfs(0);
  }
  return r;
}

std::vector<std::vector<char>> enumerate_posets(int n) {
  std::vector<std::pair<int, int>> cells;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y) cells.push_back({x, y});
  std::vector<std::vector<char>> out;
  const unsigned long total = 1UL << cells.size();
  for (unsigned long mask = 0; mask < total; ++mask) {
    std::vector<char> leq(n * n, 0);
    for (int x = 0; x < n; ++x) leq[x * n + x] = 1;
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (mask >> i & 1UL) leq[cells[i].first * n + cells[i].second] = 1;
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      for (int y = 0; y < n && ok; ++y) {
        if (x != y && leq[x * n + y] && leq[y * n + x]) ok = false;
        for (int z = 0; z < n && ok; ++z)
          if (leq[x * n + y] && leq[y * n + z] && !leq[x * n + z]) ok = false;
      }
    if (ok) out.push_back(std::move(leq));
  }
  return out;
}

bool has_all_joins(int n, const std::vector<char>& leq) {
  for (unsigned long s = 0; s < (1UL << n); ++s) {
    std::vector<int> ub;
    for (int u = 0; u < n; ++u) {
      bool upper = true;
      for (int x = 0; x < n && upper; ++x)
        if (s >> x & 1UL) upper = leq[x * n + u];
      if (upper) ub.push_back(u);
    }
    bool least = false;
    for (int u : ub) {
      bool below_all = true;
      for (int v : ub) below_all &= static_cast<bool>(leq[u * n + v]);
      if (below_all) least = true;
    }
    if (!least) return false;
  }
  return true;
}

}  // namespace protocat
