#include "protocat/groupsem.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace protocat {

namespace {

Table identity_table(int n) {
  Table t(n);
  std::iota(t.begin(), t.end(), 0);
  return t;
}

std::string digits(const Table& t, int width) {
  std::string s;
  for (int v : t) s += zpad(v, width);
  return s;
}

template <class F>
void for_each_function(int n, int m, F&& visit) {
  if (n > 0 && m == 0) return;
  Table t(n, 0);
  while (true) {
    visit(static_cast<const Table&>(t));
    int i = n - 1;
    while (i >= 0 && t[i] == m - 1) t[i--] = 0;
    if (i < 0) return;
    ++t[i];
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Monoids

bool FinMonoid::is_group() const { return !inverse().empty() || n == 0; }

std::vector<int> FinMonoid::inverse() const {
  std::vector<int> inv(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if ((*this)(a, b) == unit && (*this)(b, a) == unit) inv[a] = b;
  for (int v : inv)
    if (v < 0) return {};
  return inv;
}

Report validate_monoid(const FinMonoid& m) {
  Report r;
  if (m.n < 1 || static_cast<int>(m.mul.size()) != m.n * m.n || m.unit < 0 || m.unit >= m.n) {
    r.add("shape", "multiplication table");
    return r;
  }
  for (int v : m.mul)
    if (v < 0 || v >= m.n) {
      r.add("shape", "entry out of range");
      return r;
    }
  for (int a = 0; a < m.n; ++a)
    if (m(m.unit, a) != a || m(a, m.unit) != a) r.add("unit", std::to_string(a));
  for (int a = 0; a < m.n; ++a)
    for (int b = 0; b < m.n; ++b)
      for (int c = 0; c < m.n; ++c)
        if (m(m(a, b), c) != m(a, m(b, c))) {
          r.add("associativity", std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c));
          return r;
        }
  return r;
}

FinMonoid trivial_monoid() { return FinMonoid{}; }

FinMonoid cyclic_group(int n) {
  FinMonoid m;
  m.n = n;
  m.mul.resize(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) m.mul[a * n + b] = (a + b) % n;
  return m;
}

FinMonoid product_monoid(const FinMonoid& a, const FinMonoid& b) {
  FinMonoid m;
  m.n = a.n * b.n;
  m.unit = a.unit * b.n + b.unit;
  m.mul.resize(m.n * m.n);
  for (int x = 0; x < m.n; ++x)
    for (int y = 0; y < m.n; ++y) m.mul[x * m.n + y] = a(x / b.n, y / b.n) * b.n + b(x % b.n, y % b.n);
  return m;
}

bool is_monoid_hom(const FinMonoid& a, const FinMonoid& b, const Table& h) {
  if (static_cast<int>(h.size()) != a.n || h[a.unit] != b.unit) return false;
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y)
      if (h[a(x, y)] != b(h[x], h[y])) return false;
  return true;
}

std::optional<std::vector<int>> monoid_isomorphism(const FinMonoid& a, const FinMonoid& b) {
  if (a.n != b.n) return std::nullopt;
  std::vector<int> p = identity_table(a.n);
  do {
    if (is_monoid_hom(a, b, p)) return p;
  } while (std::next_permutation(p.begin(), p.end()));
  return std::nullopt;
}

std::vector<FinMonoid> enumerate_monoids(int n) {
  std::set<std::vector<int>> seen;
  if (n < 1) return {};
  const int k = n - 1;
  std::vector<int> cells(k * k, 0);
  std::vector<int> perm(k);
  auto table_of = [&](const std::vector<int>& c) {
    std::vector<int> t(n * n);
    for (int a = 0; a < n; ++a) {
      t[a] = a;
      t[a * n] = a;
    }
    for (int a = 1; a < n; ++a)
      for (int b = 1; b < n; ++b) t[a * n + b] = c[(a - 1) * k + (b - 1)];
    return t;
  };
  while (true) {
    auto t = table_of(cells);
    bool assoc = true;
    for (int a = 1; a < n && assoc; ++a)
      for (int b = 1; b < n && assoc; ++b)
        for (int c = 1; c < n && assoc; ++c) assoc = t[t[a * n + b] * n + c] == t[a * n + t[b * n + c]];
    if (assoc) {
      std::vector<int> best;
      std::vector<int> p(n);
      std::iota(perm.begin(), perm.end(), 1);
      do {
        p[0] = 0;
        for (int i = 0; i < k; ++i) p[i + 1] = perm[i];
        std::vector<int> u(n * n);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) u[p[a] * n + p[b]] = p[t[a * n + b]];
        if (best.empty() || u < best) best = u;
      } while (std::next_permutation(perm.begin(), perm.end()));
      seen.insert(best);
    }
    int i = k * k - 1;
    while (i >= 0 && cells[i] == n - 1) cells[i--] = 0;
    if (i < 0) break;
    ++cells[i];
  }
  std::vector<FinMonoid> out;
  for (const auto& t : seen) {
    FinMonoid m;
    m.n = n;
    m.mul = t;
    out.push_back(std::move(m));
  }
  return out;
}

SetMonad monoid_writer(const FinMonoid& m) { return writer_monad(m.n, m.mul, m.unit, "writer"); }

// ---------------------------------------------------------------------------
// E(M)

MonoidTheory e_of_monoid(const FinMonoid& m, const FinSetCategory& base) {
  const auto& B = *base.cat;
  const int nb = B.num_objects();
  const int w = decimal_width(nb - 1);
  const int wv = decimal_width(std::max(m.n * base.bound - 1, 0));
  FinCategory::Builder bld;
  for (int s = 0; s < nb; ++s) bld.add_object(B.object_name(s));
  std::vector<Table> maps;  // k: S → M × S′
  std::vector<std::vector<int>> first(nb, std::vector<int>(nb));
  for (int s = 0; s < nb; ++s)
    for (int s2 = 0; s2 < nb; ++s2) {
      first[s][s2] = static_cast<int>(maps.size());
      for_each_function(s, m.n * s2, [&](const Table& k) {
        bld.add_morphism("q" + zpad(s, w) + zpad(s2, w) + ":" + digits(k, wv), s, s2);
        maps.push_back(k);
      });
    }
  auto unit_map = [&](int s, const Table& f, int s2) {
    Table k(s);
    for (int x = 0; x < s; ++x) k[x] = m.unit * s2 + f[x];
    return k;
  };
  for (int s = 0; s < nb; ++s) bld.set_identity(s, first[s][s] + FinSetCategory::code(m.n * s, unit_map(s, identity_table(s), s)));
  std::vector<int> perm;
  auto fm = bld.build(
      [&](int g, int f) {
        int s = bld.src(f), s1 = bld.dst(f), s2 = bld.dst(g);
        Table k(s);
        for (int x = 0; x < s; ++x) {
          int a = maps[f][x] / std::max(s1, 1), y = maps[f][x] % std::max(s1, 1);
          int b = maps[g][y] / std::max(s2, 1), z = maps[g][y] % std::max(s2, 1);
          k[x] = m(a, b) * s2 + z;
        }
        return first[s][s2] + FinSetCategory::code(m.n * s2, k);
      },
      &perm);
  std::vector<Table> fm_map(maps.size());
  for (std::size_t i = 0; i < maps.size(); ++i) fm_map[perm[i]] = maps[i];
  // free functor FinSet → FM, then the opposite
  FinFunctor free{base.cat, fm, identity_table(nb), std::vector<int>(B.num_morphisms())};
  for (int f = 0; f < B.num_morphisms(); ++f) {
    int s = B.src(f), s2 = B.dst(f);
    free.mor[f] = perm[first[s][s2] + FinSetCategory::code(m.n * s2, unit_map(s, base.under.map[f], s2))];
  }
  auto arities = base.cat->opposite();
  auto fm_op = fm->opposite();
  Factorization fac = bo_ff_factorize(opposite_functor(free, arities, fm_op));
  MonoidTheory mt;
  mt.free_msets = fm;
  mt.theory = make_proto_theory(fac.e);
  const auto& T = *fac.mid;
  mt.table.resize(T.num_morphisms());
  mt.source.resize(T.num_morphisms());
  mt.target.resize(T.num_morphisms());
  for (int l = 0; l < T.num_morphisms(); ++l) {
    mt.table[l] = fm_map[fac.n.mor[l]];
    mt.source[l] = T.src(l);
    mt.target[l] = T.dst(l);
    mt.index_[{T.src(l), T.dst(l), mt.table[l]}] = l;
  }
  return mt;
}

// ---------------------------------------------------------------------------
// Recognition

MonoidRecognition recognize_monoid_theory(const ProtoTheory& th, const FinSetCategory& base) {
  MonoidRecognition r;
  if (!same_category(th.arities, base.cat->opposite())) {
    r.reason = "arities are not the finite-set truncation";
    return r;
  }
  if (base.bound < 1) {
    r.reason = "truncation too small";
    return r;
  }
  const auto& T = *th.theory;
  const auto& L = th.L;
  const int N = base.bound;
  const int L1 = L.obj[1];
  auto point = [&](int s, int x) { return L.mor[base.morphism(1, s, {x})]; };  // L(x: 1 → S): S → 1
  // (ii) copowers of 1 are preserved
  for (int s = 0; s <= N; ++s)
    for (int x = 0; x <= N; ++x) {
      const auto& h = T.hom(L.obj[x], L.obj[s]);
      std::set<std::vector<int>> images;
      for (int k : h) {
        std::vector<int> comps;
        for (int e = 0; e < s; ++e) comps.push_back(T.compose(point(s, e), k));
        images.insert(comps);
      }
      std::size_t expect = 1;
      for (int e = 0; e < s; ++e) expect *= T.hom(L.obj[x], L1).size();
      if (images.size() != h.size() || h.size() != expect) {
        r.reason = "L does not preserve the coproduct " + std::to_string(s) + " (tested against " + std::to_string(x) + ")";
        return r;
      }
    }
  // (iii) unique factorization through L1
  const auto& mons = T.hom(L1, L1);
  std::map<int, std::pair<int, int>> factor;  // theory morphism S → 1 ↦ (m position, s)
  for (int s = 0; s <= N; ++s) {
    std::map<int, int> count;
    for (int mi = 0; mi < static_cast<int>(mons.size()); ++mi)
      for (int e = 0; e < s; ++e) {
        int l = T.compose(mons[mi], point(s, e));
        ++count[l];
        factor[l] = {mi, e};
      }
    for (int l : T.hom(L.obj[s], L1))
      if (count[l] != 1) {
        r.reason = "operation " + T.morphism_name(l) + " has " + std::to_string(count[l]) + " factorizations through L1";
        return r;
      }
  }
  FinMonoid mon;
  mon.n = static_cast<int>(mons.size());
  mon.mul.resize(mon.n * mon.n);
  for (int a = 0; a < mon.n; ++a)
    for (int b = 0; b < mon.n; ++b) mon.mul[a * mon.n + b] = T.hom_pos(T.compose(mons[a], mons[b]));
  mon.unit = T.hom_pos(T.identity(L1));
  r.monoid = mon;
  MonoidTheory e = e_of_monoid(mon, base);
  FinFunctor P{th.theory, e.theory.theory, std::vector<int>(T.num_objects()), {}};
  for (int s = 0; s <= N; ++s) P.obj[L.obj[s]] = e.theory.L.obj[s];
  for (int l = 0; l < T.num_morphisms(); ++l) {
    int s2 = th.arity[T.src(l)], s = th.arity[T.dst(l)];
    Table k(s);
    for (int x = 0; x < s; ++x) {
      auto [mi, y] = factor.at(T.compose(point(s, x), l));
      k[x] = mi * s2 + y;
    }
    P.mor.push_back(e.find(s2, s, k));
  }
  Report ok = validate_functor(P);
  if (!ok.ok() || !(compose(P, L) == e.theory.L) || !is_theory_isomorphism({th, e.theory, P})) {
    r.reason = "comparison with E(M) is not an isomorphism";
    return r;
  }
  r.iso = P;
  r.monoidal = true;
  return r;
}

// ---------------------------------------------------------------------------
// M-sets

EilenbergMoore mset_category(const FinMonoid& m, const FinSetCategory& base) {
  std::vector<int> carrier;
  std::vector<Table> actions;
  for (int d = 0; d <= base.bound; ++d) {
    std::vector<Table> act(m.n);
    act[m.unit] = identity_table(d);
    std::vector<int> order;
    for (int a = 0; a < m.n; ++a)
      if (a != m.unit) order.push_back(a);
    std::vector<char> set(m.n, 0);
    set[m.unit] = 1;
    std::function<void(std::size_t)> dfs = [&](std::size_t i) {
      if (i == order.size()) {
        Table flat;
        for (int a = 0; a < m.n; ++a) flat.insert(flat.end(), act[a].begin(), act[a].end());
        carrier.push_back(d);
        actions.push_back(std::move(flat));
        return;
      }
      int a = order[i];
      for_each_function(d, d, [&](const Table& f) {
        act[a] = f;
        set[a] = 1;
        bool ok = true;
        for (int x = 0; x < m.n && ok; ++x)
          for (int y = 0; y < m.n && ok; ++y) {
            int xy = m(x, y);
            if (!set[x] || !set[y] || !set[xy]) continue;
            for (int z = 0; z < d && ok; ++z) ok = act[xy][z] == act[x][act[y][z]];
          }
        if (ok) dfs(i + 1);
        set[a] = 0;
      });
    };
    dfs(0);
  }
  // canonical order: by carrier, then table
  std::vector<int> idx(carrier.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return std::tie(carrier[a], actions[a]) < std::tie(carrier[b], actions[b]);
  });
  std::vector<int> c2;
  std::vector<Table> a2;
  for (int i : idx) {
    c2.push_back(carrier[i]);
    a2.push_back(actions[i]);
  }
  return algebra_category(c2, a2, {}, base.cat, [&](int i, int j, int f) {
    const Table& t = base.under.map[f];
    int dx = c2[i], dy = c2[j];
    for (int g = 0; g < m.n; ++g)
      for (int x = 0; x < dx; ++x)
        if (t[a2[i][g * dx + x]] != a2[j][g * dy + t[x]]) return false;
    return true;
  });
}

KleisliComparison models_equal_msets(const FinMonoid& m, const FinSetCategory& base) {
  return compare_kleisli_models(e_of_monoid(m, base), monoid_writer(m), base, mset_category(m, base));
}

// ---------------------------------------------------------------------------
// Groups

std::vector<std::vector<int>> subgroups(const FinMonoid& g) {
  std::vector<std::vector<int>> out;
  const int n = g.n;
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    if (!(mask >> g.unit & 1UL)) continue;
    bool closed = true;
    for (int a = 0; a < n && closed; ++a)
      if (mask >> a & 1UL)
        for (int b = 0; b < n && closed; ++b)
          if (mask >> b & 1UL) closed = mask >> g(a, b) & 1UL;
    if (!closed) continue;
    std::vector<int> h;
    for (int a = 0; a < n; ++a)
      if (mask >> a & 1UL) h.push_back(a);
    out.push_back(std::move(h));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

namespace {

std::vector<int> conjugate(const FinMonoid& g, const std::vector<int>& inv, const std::vector<int>& h, int x) {
  std::vector<int> c;
  for (int a : h) c.push_back(g(g(x, a), inv[x]));
  std::sort(c.begin(), c.end());
  return c;
}

}  // namespace

std::vector<std::vector<int>> normal_subgroups(const FinMonoid& g) {
  auto inv = g.inverse();
  if (inv.empty()) throw PreconditionError("not a group");
  std::vector<std::vector<int>> out;
  for (const auto& h : subgroups(g)) {
    bool normal = true;
    for (int x = 0; x < g.n && normal; ++x) normal = conjugate(g, inv, h, x) == h;
    if (normal) out.push_back(h);
  }
  return out;
}

Quotient quotient_by(const FinMonoid& g, const std::vector<int>& normal) {
  Quotient q;
  q.map.assign(g.n, -1);
  std::vector<int> rep;
  for (int a = 0; a < g.n; ++a) {
    if (q.map[a] >= 0) continue;
    int id = static_cast<int>(rep.size());
    rep.push_back(a);
    for (int k : normal) q.map[g(a, k)] = id;
  }
  const int m = static_cast<int>(rep.size());
  q.target.n = m;
  q.target.unit = q.map[g.unit];
  q.target.mul.resize(m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) q.target.mul[a * m + b] = q.map[g(rep[a], rep[b])];
  return q;
}

std::vector<Quotient> full_quotient_family(const FinMonoid& g) {
  std::vector<Quotient> out;
  for (const auto& k : normal_subgroups(g)) out.push_back(quotient_by(g, k));
  return out;
}

ProfiniteCompletion profinite_completion(const FinMonoid& g, const std::vector<Quotient>& family) {
  if (!g.is_group()) throw PreconditionError("profinite completion is only defined for groups");
  const int f = static_cast<int>(family.size());
  for (const auto& q : family) {
    if (!is_monoid_hom(g, q.target, q.map)) throw PreconditionError("family member is not a homomorphism");
    std::vector<char> hit(q.target.n, 0);
    for (int v : q.map) hit[v] = 1;
    if (std::find(hit.begin(), hit.end(), 0) != hit.end()) throw PreconditionError("family member is not surjective");
  }
  // connecting homs k: H_i → H_j with k∘h_i = h_j
  std::vector<std::vector<Table>> link(f, std::vector<Table>(f));
  for (int i = 0; i < f; ++i)
    for (int j = 0; j < f; ++j) {
      Table k(family[i].target.n, -1);
      bool ok = true;
      for (int a = 0; a < g.n && ok; ++a) {
        int& slot = k[family[i].map[a]];
        if (slot < 0) slot = family[j].map[a];
        ok = slot == family[j].map[a];
      }
      if (ok) link[i][j] = k;
    }
  ProfiniteCompletion pc;
  pc.family = family;
  std::vector<int> xi(f, -1);
  std::function<void(int)> dfs = [&](int i) {
    if (i == f) {
      pc.elements.push_back(xi);
      return;
    }
    for (int v = 0; v < family[i].target.n; ++v) {
      xi[i] = v;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) {
        if (!link[i][j].empty()) ok = link[i][j][v] == xi[j];
        if (ok && !link[j][i].empty()) ok = link[j][i][xi[j]] == v;
      }
      if (ok) dfs(i + 1);
    }
    xi[i] = -1;
  };
  dfs(0);
  std::map<std::vector<int>, int> index;
  for (std::size_t e = 0; e < pc.elements.size(); ++e) index[pc.elements[e]] = static_cast<int>(e);
  const int n = static_cast<int>(pc.elements.size());
  pc.group.n = n;
  pc.group.mul.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<int> c(f);
      for (int i = 0; i < f; ++i) c[i] = family[i].target(pc.elements[a][i], pc.elements[b][i]);
      pc.group.mul[a * n + b] = index.at(c);
    }
  std::vector<int> e(f);
  for (int i = 0; i < f; ++i) e[i] = family[i].target.unit;
  pc.group.unit = index.at(e);
  for (int a = 0; a < g.n; ++a) {
    std::vector<int> c(f);
    for (int i = 0; i < f; ++i) c[i] = family[i].map[a];
    pc.eta.push_back(index.at(c));
  }
  return pc;
}

std::vector<GSet> gset_skeleton(const FinMonoid& g, int bound) {
  auto inv = g.inverse();
  if (inv.empty()) throw PreconditionError("not a group");
  // subgroups up to conjugacy, smallest index first
  std::vector<std::vector<int>> reps;
  for (const auto& h : subgroups(g)) {
    bool least = true;
    for (int x = 0; x < g.n && least; ++x) least = !(conjugate(g, inv, h, x) < h);
    if (least) reps.push_back(h);
  }
  std::sort(reps.begin(), reps.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });
  std::vector<GSet> orbit;
  for (const auto& h : reps) {
    Quotient cosets;
    std::vector<int> id(g.n, -1), rep;
    for (int a = 0; a < g.n; ++a) {
      if (id[a] >= 0) continue;
      int c = static_cast<int>(rep.size());
      rep.push_back(a);
      for (int k : h) id[g(a, k)] = c;
    }
    GSet t;
    t.size = static_cast<int>(rep.size());
    t.act.resize(static_cast<std::size_t>(g.n) * t.size);
    for (int a = 0; a < g.n; ++a)
      for (int c = 0; c < t.size; ++c) t.act[a * t.size + c] = id[g(a, rep[c])];
    orbit.push_back(std::move(t));
  }
  std::vector<std::pair<std::vector<int>, GSet>> all;
  std::vector<int> pick;
  std::function<void(int, int)> dfs = [&](int from, int used) {
    GSet x;
    x.size = used;
    x.act.assign(static_cast<std::size_t>(g.n) * used, 0);
    int off = 0;
    for (int o : pick) {
      const GSet& t = orbit[o];
      for (int a = 0; a < g.n; ++a)
        for (int c = 0; c < t.size; ++c) x.act[a * used + off + c] = off + t(a, c);
      off += t.size;
    }
    all.emplace_back(pick, std::move(x));
    for (int o = from; o < static_cast<int>(orbit.size()); ++o)
      if (used + orbit[o].size <= bound) {
        pick.push_back(o);
        dfs(o, used + orbit[o].size);
        pick.pop_back();
      }
  };
  dfs(0, 0);
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return a.second.size != b.second.size ? a.second.size < b.second.size : a.first < b.first;
  });
  std::vector<GSet> out;
  for (auto& [k, x] : all) out.push_back(std::move(x));
  return out;
}

std::vector<Table> equivariant_maps(const FinMonoid& g, const GSet& x, const GSet& y) {
  std::vector<int> reps;
  std::vector<char> seen(x.size, 0);
  for (int a = 0; a < x.size; ++a) {
    if (seen[a]) continue;
    reps.push_back(a);
    for (int h = 0; h < g.n; ++h) seen[x(h, a)] = 1;
  }
  std::vector<std::vector<int>> cand(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (int b = 0; b < y.size; ++b) {
      bool ok = true;
      for (int h = 0; h < g.n && ok; ++h)
        if (x(h, reps[i]) == reps[i]) ok = y(h, b) == b;
      if (ok) cand[i].push_back(b);
    }
  std::vector<Table> out;
  Table f(x.size, -1);
  std::function<void(std::size_t)> dfs = [&](std::size_t i) {
    if (i == reps.size()) {
      out.push_back(f);
      return;
    }
    for (int b : cand[i]) {
      for (int h = 0; h < g.n; ++h) f[x(h, reps[i])] = y(h, b);
      dfs(i + 1);
    }
  };
  dfs(0);
  std::sort(out.begin(), out.end());
  return out;
}

NatEndomorphisms nat_endomorphism_monoid(const FinMonoid& g, int bound) {
  NatEndomorphisms r;
  r.bound = bound;
  r.objects = gset_skeleton(g, bound);
  const int k = static_cast<int>(r.objects.size());
  // the regular action is the coset space of the trivial subgroup, i.e. a single free orbit
  int regular = -1;
  for (int i = 0; i < k && regular < 0; ++i) {
    const GSet& x = r.objects[i];
    if (x.size != g.n) continue;
    bool free_orbit = true;
    for (int h = 0; h < g.n && free_orbit; ++h) free_orbit = x(h, 0) == h;
    if (free_orbit) regular = i;
  }
  r.bound_ok = regular >= 0;
  std::vector<std::vector<std::vector<Table>>> maps(k, std::vector<std::vector<Table>>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) maps[i][j] = equivariant_maps(g, r.objects[i], r.objects[j]);
  auto natural = [&](const std::vector<Table>& xi) {
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        for (const Table& f : maps[i][j]) {
          ++r.maps_checked;
          for (int x = 0; x < r.objects[i].size; ++x)
            if (xi[j][f[x]] != f[xi[i][x]]) return false;
        }
    return true;
  };
  if (r.bound_ok) {
    // Yoneda: a natural ξ is fixed by ξ_R(e) for the regular object R, and then ξ_X(x) = ξ_R(e)·x
    for (int t = 0; t < g.n; ++t) {
      std::vector<Table> xi;
      for (const GSet& x : r.objects) {
        Table c(x.size);
        for (int a = 0; a < x.size; ++a) c[a] = x(t, a);
        xi.push_back(std::move(c));
      }
      if (natural(xi)) r.elements.push_back(std::move(xi));
    }
  } else {
    std::vector<Table> xi(k);
    std::function<void(int)> dfs = [&](int i) {
      if (i == k) {
        if (natural(xi)) r.elements.push_back(xi);
        return;
      }
      for_each_function(r.objects[i].size, r.objects[i].size, [&](const Table& c) {
        xi[i] = c;
        bool ok = true;
        for (int a = 0; a <= i && ok; ++a)
          for (int b = 0; b <= i && ok; ++b)
            for (const Table& f : maps[a][b]) {
              for (int x = 0; x < r.objects[a].size && ok; ++x) ok = xi[b][f[x]] == f[xi[a][x]];
              if (!ok) break;
            }
        if (ok) dfs(i + 1);
      });
    };
    dfs(0);
  }
  std::sort(r.elements.begin(), r.elements.end());
  std::map<std::vector<Table>, int> index;
  for (std::size_t e = 0; e < r.elements.size(); ++e) index[r.elements[e]] = static_cast<int>(e);
  const int n = static_cast<int>(r.elements.size());
  r.monoid.n = n;
  r.monoid.mul.assign(static_cast<std::size_t>(n) * n, -1);
  std::vector<Table> id;
  for (const GSet& x : r.objects) id.push_back(identity_table(x.size));
  r.monoid.unit = index.count(id) ? index[id] : -1;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<Table> c(k);
      for (int i = 0; i < k; ++i) {
        c[i].resize(r.objects[i].size);
        for (int x = 0; x < r.objects[i].size; ++x) c[i][x] = r.elements[a][i][r.elements[b][i][x]];
      }
      auto it = index.find(c);
      r.monoid.mul[a * n + b] = it == index.end() ? -1 : it->second;
    }
  for (int h = 0; h < g.n; ++h) {
    std::vector<Table> c;
    for (const GSet& x : r.objects) {
      Table t(x.size);
      for (int a = 0; a < x.size; ++a) t[a] = x(h, a);
      c.push_back(std::move(t));
    }
    auto it = index.find(c);
    r.cayley.push_back(it == index.end() ? -1 : it->second);
  }
  return r;
}

PhiCheck phi_check(const FinMonoid& g, const ProfiniteCompletion& pc, const NatEndomorphisms& nat) {
  PhiCheck r;
  const int k = static_cast<int>(nat.objects.size());
  // family member whose kernel is the kernel of each action
  std::vector<int> member(k, -1);
  for (int i = 0; i < k; ++i) {
    const GSet& x = nat.objects[i];
    std::vector<char> ker(g.n);
    for (int h = 0; h < g.n; ++h) {
      bool fixes = true;
      for (int a = 0; a < x.size && fixes; ++a) fixes = x(h, a) == a;
      ker[h] = fixes;
    }
    for (std::size_t j = 0; j < pc.family.size() && member[i] < 0; ++j) {
      bool same = true;
      for (int h = 0; h < g.n && same; ++h) same = (pc.family[j].map[h] == pc.family[j].target.unit) == static_cast<bool>(ker[h]);
      if (same) member[i] = static_cast<int>(j);
    }
    if (member[i] < 0) r.report.add("family", "no quotient through which action " + std::to_string(i) + " factors");
  }
  if (!r.report.ok()) return r;
  std::map<std::vector<Table>, int> index;
  for (std::size_t e = 0; e < nat.elements.size(); ++e) index[nat.elements[e]] = static_cast<int>(e);
  for (const auto& xi : pc.elements) {
    std::vector<Table> comp;
    for (int i = 0; i < k; ++i) {
      const Quotient& q = pc.family[member[i]];
      int h = static_cast<int>(std::find(q.map.begin(), q.map.end(), xi[member[i]]) - q.map.begin());
      const GSet& x = nat.objects[i];
      Table t(x.size);
      for (int a = 0; a < x.size; ++a) t[a] = x(h, a);
      comp.push_back(std::move(t));
    }
    auto it = index.find(comp);
    r.phi.push_back(it == index.end() ? -1 : it->second);
    if (it == index.end()) r.report.add("naturality", "Phi(xi) is not a natural endomorphism");
  }
  if (!r.report.ok()) return r;
  if (!is_monoid_hom(pc.group, nat.monoid, r.phi)) r.report.add("homomorphism", "Phi does not preserve composition");
  std::vector<char> hit(nat.elements.size(), 0);
  for (int v : r.phi) hit[v] = 1;
  if (r.phi.size() != nat.elements.size() || std::find(hit.begin(), hit.end(), 0) != hit.end())
    r.report.add("bijective", "Phi is not a bijection");
  for (int h = 0; h < g.n; ++h)
    if (r.phi[pc.eta[h]] != nat.cayley[h]) r.report.add("unit comparison", "Phi(eta(" + std::to_string(h) + ")) differs from the action of " + std::to_string(h));
  return r;
}

}  // namespace protocat
