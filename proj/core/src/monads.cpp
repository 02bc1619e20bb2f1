#include "protocat/monads.hpp"

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

Table after(const Table& g, const Table& f) {  // g∘f
  Table h(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) h[i] = g[f[i]];
  return h;
}

// all functions n → m in lexicographic order
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

std::string digits(const Table& t, int width) {
  std::string s;
  for (int v : t) s += zpad(v, width);
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Monads on finite sets

SetMonad identity_set_monad() {
  SetMonad t;
  t.name = "identity";
  t.size = [](int n) { return n; };
  t.fmap = [](int, int, const Table& f) { return f; };
  t.unit = identity_table;
  t.mult = identity_table;
  return t;
}

SetMonad maybe_monad() {
  SetMonad t;
  t.name = "maybe";
  t.size = [](int n) { return n + 1; };
  t.fmap = [](int n, int m, const Table& f) {
    Table r(f);
    (void)n;
    r.push_back(m);
    return r;
  };
  t.unit = identity_table;
  t.mult = [](int n) {
    Table r = identity_table(n + 1);
    r.push_back(n);
    return r;
  };
  return t;
}

SetMonad writer_monad(int order, const std::vector<int>& mul, int unit, const std::string& name) {
  SetMonad t;
  t.name = name;
  t.size = [order](int n) { return order * n; };
  t.fmap = [order](int n, int m, const Table& f) {
    Table r(order * n);
    for (int g = 0; g < order; ++g)
      for (int x = 0; x < n; ++x) r[g * n + x] = g * m + f[x];
    return r;
  };
  t.unit = [unit](int n) {
    Table r(n);
    for (int x = 0; x < n; ++x) r[x] = unit * n + x;
    return r;
  };
  t.mult = [order, mul](int n) {
    Table r(order * order * n);
    for (int g = 0; g < order; ++g)
      for (int h = 0; h < order; ++h)
        for (int x = 0; x < n; ++x) r[g * order * n + h * n + x] = mul[g * order + h] * n + x;
    return r;
  };
  return t;
}

Report validate_set_monad(const SetMonad& t, int bound) {
  Report r;
  for (int n = 0; n <= bound; ++n) {
    int tn = t.size(n);
    if (t.fmap(n, n, identity_table(n)) != identity_table(tn)) r.add("functor identity", std::to_string(n));
    Table eta = t.unit(n), mu = t.mult(n);
    if (static_cast<int>(eta.size()) != n || static_cast<int>(mu.size()) != t.size(tn)) {
      r.add("shape", "unit or multiplication at " + std::to_string(n));
      continue;
    }
    if (after(mu, t.unit(tn)) != identity_table(tn)) r.add("left unit", std::to_string(n));
    if (after(mu, t.fmap(n, tn, eta)) != identity_table(tn)) r.add("right unit", std::to_string(n));
    if (after(mu, t.fmap(t.size(tn), tn, mu)) != after(mu, t.mult(tn))) r.add("associativity", std::to_string(n));
    for (int m = 0; m <= bound; ++m)
      for_each_function(n, m, [&](const Table& f) {
        Table tf = t.fmap(n, m, f);
        if (after(tf, eta) != after(t.unit(m), f)) r.add("unit naturality", std::to_string(n) + "->" + std::to_string(m));
        if (after(tf, mu) != after(t.mult(m), t.fmap(tn, t.size(m), tf)))
          r.add("multiplication naturality", std::to_string(n) + "->" + std::to_string(m));
        for (int k = 0; k <= bound; ++k)
          for_each_function(m, k, [&](const Table& g) {
            if (t.fmap(n, k, after(g, f)) != after(t.fmap(m, k, g), tf)) r.add("functor composition", "");
          });
      });
  }
  return r;
}

// ---------------------------------------------------------------------------
// Monads on finite categories

Report validate_fin_monad(const FinMonad& m) {
  Report r = validate_functor(m.t);
  if (!r.ok()) return r;
  const auto& B = *m.base;
  const auto& T = m.t;
  const int n = B.num_objects();
  if (static_cast<int>(m.unit.size()) != n || static_cast<int>(m.mult.size()) != n) {
    r.add("shape", "unit or multiplication");
    return r;
  }
  for (int b = 0; b < n; ++b) {
    if (B.src(m.unit[b]) != b || B.dst(m.unit[b]) != T.obj[b]) r.add("unit type", B.object_name(b));
    int tb = T.obj[b];
    if (B.src(m.mult[b]) != T.obj[tb] || B.dst(m.mult[b]) != tb) r.add("multiplication type", B.object_name(b));
  }
  if (!r.ok()) return r;
  for (int f = 0; f < B.num_morphisms(); ++f) {
    int a = B.src(f), b = B.dst(f);
    if (B.compose(T.mor[f], m.unit[a]) != B.compose(m.unit[b], f)) r.add("unit naturality", B.morphism_name(f));
    if (B.compose(T.mor[f], m.mult[a]) != B.compose(m.mult[b], T.mor[T.mor[f]]))
      r.add("multiplication naturality", B.morphism_name(f));
  }
  for (int b = 0; b < n; ++b) {
    int tb = T.obj[b];
    int id = B.identity(tb);
    if (B.compose(m.mult[b], m.unit[tb]) != id) r.add("left unit", B.object_name(b));
    if (B.compose(m.mult[b], T.mor[m.unit[b]]) != id) r.add("right unit", B.object_name(b));
    if (B.compose(m.mult[b], T.mor[m.mult[b]]) != B.compose(m.mult[b], m.mult[tb])) r.add("associativity", B.object_name(b));
  }
  return r;
}

FinMonad identity_monad(const CatPtr& base) {
  FinMonad m{base, identity_functor(base), {}, {}};
  for (int b = 0; b < base->num_objects(); ++b) {
    m.unit.push_back(base->identity(b));
    m.mult.push_back(base->identity(b));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Kleisli theories

int KleisliTheory::find(int b2, int b, const Table& t) const {
  auto it = index_.find({b2, b, t});
  return it == index_.end() ? -1 : it->second;
}

int KleisliTheory::find_base(int b2, int f) const {
  auto it = base_index_.find({b2, f});
  return it == base_index_.end() ? -1 : it->second;
}

KleisliTheory kleisli(const SetMonad& t, const FinSetCategory& base) {
  const auto& B = *base.cat;
  const int n = B.num_objects();
  int widest = 1;
  for (int b = 0; b < n; ++b) widest = std::max(widest, t.size(b));
  const int w = decimal_width(n - 1);
  const int wv = decimal_width(widest - 1);
  FinCategory::Builder bld;
  for (int b = 0; b < n; ++b) bld.add_object(B.object_name(b));
  std::vector<Table> tables;
  std::vector<std::vector<int>> first(n, std::vector<int>(n));
  for (int b2 = 0; b2 < n; ++b2)
    for (int b = 0; b < n; ++b) {
      first[b2][b] = static_cast<int>(tables.size());
      for_each_function(b, t.size(b2), [&](const Table& f) {
        int id = bld.add_morphism("k" + zpad(b2, w) + zpad(b, w) + ":" + digits(f, wv), b2, b);
        tables.push_back(f);
        (void)id;
      });
    }
  std::vector<Table> units(n);
  for (int b = 0; b < n; ++b) {
    units[b] = t.unit(b);
    bld.set_identity(b, first[b][b] + FinSetCategory::code(t.size(b), units[b]));
  }
  std::vector<Table> lifted(tables.size());  // T(f) for f: b → T b′
  std::vector<Table> mults(n);
  for (int b = 0; b < n; ++b) mults[b] = t.mult(b);
  std::vector<int> perm;
  auto cat = bld.build(
      [&](int k, int l) {
        int b2 = bld.src(l), b = bld.dst(l), c = bld.dst(k);
        if (lifted[l].empty() && t.size(b) > 0) lifted[l] = t.fmap(b, t.size(b2), tables[l]);
        Table r(c);
        for (int z = 0; z < c; ++z) r[z] = mults[b2][lifted[l][tables[k][z]]];
        return first[b2][c] + FinSetCategory::code(t.size(b2), r);
      },
      &perm);
  KleisliTheory kt;
  kt.table.resize(tables.size());
  kt.source.resize(tables.size());
  kt.target.resize(tables.size());
  for (std::size_t i = 0; i < tables.size(); ++i) {
    int j = perm[i];
    kt.table[j] = tables[i];
    kt.source[j] = bld.src(static_cast<int>(i));
    kt.target[j] = bld.dst(static_cast<int>(i));
    kt.index_[{kt.source[j], kt.target[j], tables[i]}] = j;
  }
  auto arities = base.cat->opposite();
  FinFunctor L{arities, cat, identity_table(n), std::vector<int>(B.num_morphisms())};
  for (int f = 0; f < B.num_morphisms(); ++f) {
    int x = B.src(f), y = B.dst(f);
    L.mor[f] = kt.find(y, x, after(units[y], base.under.map[f]));
  }
  kt.theory = make_proto_theory(L);
  return kt;
}

KleisliTheory kleisli(const FinMonad& m) {
  const auto& B = *m.base;
  const int n = B.num_objects();
  const int w = decimal_width(n - 1);
  FinCategory::Builder bld;
  for (int b = 0; b < n; ++b) bld.add_object(B.object_name(b));
  std::vector<int> base_of;
  std::map<std::pair<int, int>, int> local;
  for (int b2 = 0; b2 < n; ++b2)
    for (int b = 0; b < n; ++b)
      for (int f : B.hom(b, m.t.obj[b2])) {
        int id = bld.add_morphism("k" + zpad(b2, w) + ":" + B.morphism_name(f), b2, b);
        base_of.push_back(f);
        local[{b2, f}] = id;
      }
  for (int b = 0; b < n; ++b) bld.set_identity(b, local[{b, m.unit[b]}]);
  std::vector<int> perm;
  auto cat = bld.build(
      [&](int k, int l) {
        int b2 = bld.src(l);
        int r = B.compose(m.mult[b2], B.compose(m.t.mor[base_of[l]], base_of[k]));
        return local.at({b2, r});
      },
      &perm);
  KleisliTheory kt;
  kt.base_map.resize(base_of.size());
  kt.source.resize(base_of.size());
  kt.target.resize(base_of.size());
  for (std::size_t i = 0; i < base_of.size(); ++i) {
    int j = perm[i];
    kt.base_map[j] = base_of[i];
    kt.source[j] = bld.src(static_cast<int>(i));
    kt.target[j] = bld.dst(static_cast<int>(i));
    kt.base_index_[{kt.source[j], base_of[i]}] = j;
  }
  auto arities = m.base->opposite();
  FinFunctor L{arities, cat, identity_table(n), std::vector<int>(B.num_morphisms())};
  for (int f = 0; f < B.num_morphisms(); ++f) L.mor[f] = kt.find_base(B.dst(f), B.compose(m.unit[B.dst(f)], f));
  kt.theory = make_proto_theory(L);
  return kt;
}

// ---------------------------------------------------------------------------
// Eilenberg–Moore categories

namespace {

struct AlgebraList {
  std::vector<int> carrier;
  std::vector<Table> table;
  std::vector<int> action;
};


EilenbergMoore em_from_homs(const AlgebraList& algs, const CatPtr& base,
                            const std::function<bool(int, int, int)>& is_hom) {
  const auto& B = *base;
  const int k = static_cast<int>(algs.carrier.size());
  const int w = decimal_width(std::max(k - 1, 0));
  FinCategory::Builder bld;
  for (int i = 0; i < k; ++i) bld.add_object("a" + zpad(i, w));
  std::vector<int> base_of;
  std::map<std::tuple<int, int, int>, int> local;
  int hw = 1;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      hw = std::max(hw, decimal_width(static_cast<long long>(B.hom(algs.carrier[i], algs.carrier[j]).size()) - 1));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int f : B.hom(algs.carrier[i], algs.carrier[j]))
        if (is_hom(i, j, f)) {
          int id = bld.add_morphism("e" + zpad(i, w) + "." + zpad(j, w) + ":" + zpad(B.hom_pos(f), hw), i, j);
          base_of.push_back(f);
          local[{i, j, f}] = id;
          if (i == j && f == B.identity(algs.carrier[i])) bld.set_identity(i, id);
        }
  std::vector<int> perm;
  auto cat = bld.build(
      [&](int g, int f) {
        auto it = local.find({bld.src(f), bld.dst(g), B.compose(base_of[g], base_of[f])});
        return it == local.end() ? -1 : it->second;
      },
      &perm);
  EilenbergMoore em;
  em.cat = cat;
  em.carrier = algs.carrier;
  em.action_table = algs.table;
  em.action = algs.action;
  em.forget = FinFunctor{cat, base, algs.carrier, std::vector<int>(base_of.size())};
  for (std::size_t i = 0; i < base_of.size(); ++i) em.forget.mor[perm[i]] = base_of[i];
  return em;
}

bool is_set_algebra(const SetMonad& t, int d, const Table& s) {
  if (after(s, t.unit(d)) != identity_table(d)) return false;
  return after(s, t.fmap(t.size(d), d, s)) == after(s, t.mult(d));
}

bool is_set_algebra_hom(const SetMonad& t, int dx, const Table& sx, int dy, const Table& sy, const Table& f) {
  Table tf = t.fmap(dx, dy, f);
  for (std::size_t e = 0; e < sx.size(); ++e)
    if (f[sx[e]] != sy[tf[e]]) return false;
  return true;
}

}  // namespace

EilenbergMoore algebra_category(std::vector<int> carrier, std::vector<Table> action_table, std::vector<int> action,
                                const CatPtr& base, const std::function<bool(int, int, int)>& is_hom) {
  AlgebraList algs{std::move(carrier), std::move(action_table), std::move(action)};
  return em_from_homs(algs, base, is_hom);
}

EilenbergMoore eilenberg_moore(const SetMonad& t, const FinSetCategory& base) {
  AlgebraList algs;
  for (int d = 0; d <= base.bound; ++d)
    for_each_function(t.size(d), d, [&](const Table& s) {
      if (is_set_algebra(t, d, s)) {
        algs.carrier.push_back(d);
        algs.table.push_back(s);
      }
    });
  return em_from_homs(algs, base.cat, [&](int i, int j, int f) {
    return is_set_algebra_hom(t, algs.carrier[i], algs.table[i], algs.carrier[j], algs.table[j], base.under.map[f]);
  });
}

EilenbergMoore eilenberg_moore(const FinMonad& m) {
  const auto& B = *m.base;
  AlgebraList algs;
  for (int d = 0; d < B.num_objects(); ++d) {
    int td = m.t.obj[d];
    for (int s : B.hom(td, d)) {
      if (B.compose(s, m.unit[d]) != B.identity(d)) continue;
      if (B.compose(s, m.t.mor[s]) != B.compose(s, m.mult[d])) continue;
      algs.carrier.push_back(d);
      algs.action.push_back(s);
    }
  }
  return em_from_homs(algs, m.base, [&](int i, int j, int f) {
    return B.compose(f, algs.action[i]) == B.compose(algs.action[j], m.t.mor[f]);
  });
}

// ---------------------------------------------------------------------------
// Comparison mod(kle T) ≅ EM(T)

namespace {

void finish_comparison(KleisliComparison& c) {
  const auto& mc = c.mod;
  const auto& em = c.em;
  c.to_em.mor.clear();
  c.from_em.mor.clear();
  for (int k = 0; k < mc.cat->num_morphisms(); ++k) {
    int x = c.to_em.obj[mc.cat->src(k)], y = c.to_em.obj[mc.cat->dst(k)];
    int r = -1;
    for (int e : em.cat->hom(x, y))
      if (em.forget.mor[e] == mc.forget.mor[k]) r = e;
    if (r < 0) c.report.add("functor", "model homomorphism " + mc.cat->morphism_name(k) + " is not an algebra map");
    c.to_em.mor.push_back(r);
  }
  for (int e = 0; e < em.cat->num_morphisms(); ++e) {
    int r = mc.morphism(c.from_em.obj[em.cat->src(e)], c.from_em.obj[em.cat->dst(e)], em.forget.mor[e]);
    if (r < 0) c.report.add("functor", "algebra map " + em.cat->morphism_name(e) + " is not a model homomorphism");
    c.from_em.mor.push_back(r);
  }
  if (!c.report.ok()) return;
  c.report.merge(validate_functor(c.to_em), "to_em: ");
  c.report.merge(validate_functor(c.from_em), "from_em: ");
  if (!(compose(c.from_em, c.to_em) == identity_functor(mc.cat))) c.report.add("inverse", "from_em o to_em");
  if (!(compose(c.to_em, c.from_em) == identity_functor(em.cat))) c.report.add("inverse", "to_em o from_em");
  if (!(compose(em.forget, c.to_em) == mc.forget)) c.report.add("over base", "to_em");
  if (!(compose(mc.forget, c.from_em) == em.forget)) c.report.add("over base", "from_em");
}

}  // namespace

KleisliComparison compare_kleisli_models(const SetMonad& t, const FinSetCategory& base) {
  return compare_kleisli_models(t, base, eilenberg_moore(t, base));
}

KleisliComparison compare_kleisli_models(const SetMonad& t, const FinSetCategory& base, EilenbergMoore algebras) {
  return compare_kleisli_models(kleisli(t, base), t, base, std::move(algebras));
}

KleisliComparison compare_kleisli_models(const KleisliTheory& kt, const SetMonad& t, const FinSetCategory& base,
                                         EilenbergMoore algebras) {
  if (base.bound < 1) throw PreconditionError("comparison needs the one-element set in the base");
  auto sem = std::make_shared<Semantics>(kt.theory, canonical_aritation(base.cat));
  KleisliComparison c;
  c.mod = model_category(sem);
  c.em = std::move(algebras);
  c.to_em = FinFunctor{c.mod.cat, c.em.cat, {}, {}};
  c.from_em = FinFunctor{c.em.cat, c.mod.cat, {}, {}};
  std::map<std::pair<int, Table>, int> alg_index;
  for (std::size_t i = 0; i < c.em.carrier.size(); ++i) alg_index[{c.em.carrier[i], c.em.action_table[i]}] = static_cast<int>(i);
  for (const Model& x : c.mod.models) {
    int d = x.carrier;
    Table s(t.size(d));
    for (int e = 0; e < t.size(d); ++e) s[e] = base.under.map[sem->alpha(x, kt.find(d, 1, {e}))][0];
    auto it = alg_index.find({d, s});
    if (it == alg_index.end()) {
      c.report.add("object", "model has no matching algebra");
      return c;
    }
    c.to_em.obj.push_back(it->second);
  }
  for (std::size_t i = 0; i < c.em.carrier.size(); ++i) {
    int d = c.em.carrier[i];
    const Table& s = c.em.action_table[i];
    Model x = sem->from_gamma(d, [&](int l, int) {
      int b = kt.target[l];
      return base.cat->hom_pos(base.morphism(b, d, after(s, kt.table[l])));
    });
    auto idx = c.mod.find(x);
    if (!idx) {
      c.report.add("object", "algebra has no matching model");
      return c;
    }
    c.from_em.obj.push_back(*idx);
  }
  finish_comparison(c);
  return c;
}

KleisliComparison compare_kleisli_models(const FinMonad& m) {
  const auto& B = *m.base;
  KleisliTheory kt = kleisli(m);
  auto sem = std::make_shared<Semantics>(kt.theory, canonical_aritation(m.base));
  KleisliComparison c;
  c.mod = model_category(sem);
  c.em = eilenberg_moore(m);
  c.to_em = FinFunctor{c.mod.cat, c.em.cat, {}, {}};
  c.from_em = FinFunctor{c.em.cat, c.mod.cat, {}, {}};
  std::map<std::pair<int, int>, int> alg_index;
  for (std::size_t i = 0; i < c.em.carrier.size(); ++i) alg_index[{c.em.carrier[i], c.em.action[i]}] = static_cast<int>(i);
  for (const Model& x : c.mod.models) {
    int d = x.carrier;
    int td = m.t.obj[d];
    int s = sem->alpha(x, kt.find_base(d, B.identity(td)));
    auto it = alg_index.find({d, s});
    if (it == alg_index.end()) {
      c.report.add("object", "model has no matching algebra");
      return c;
    }
    c.to_em.obj.push_back(it->second);
  }
  for (std::size_t i = 0; i < c.em.carrier.size(); ++i) {
    int d = c.em.carrier[i];
    int s = c.em.action[i];
    Model x = sem->from_gamma(d, [&](int l, int) { return B.hom_pos(B.compose(s, kt.base_map[l])); });
    auto idx = c.mod.find(x);
    if (!idx) {
      c.report.add("object", "algebra has no matching model");
      return c;
    }
    c.from_em.obj.push_back(*idx);
  }
  finish_comparison(c);
  return c;
}

// ---------------------------------------------------------------------------
// Structure of a right adjoint

namespace {

// Checks that `comparison` (identity on objects) is a functor over L, bijective on each hom-set.
void check_hom_bijection(const Structure& s, const KleisliTheory& kt, const FinFunctor& cmp, Report& r) {
  const auto& T = *s.theory.theory;
  const auto& K = *kt.theory.theory;
  for (int l = 0; l < T.num_morphisms(); ++l)
    if (cmp.mor[l] < 0) {
      r.add("comparison", "undefined on " + T.morphism_name(l));
      return;
    }
  r.merge(validate_functor(cmp), "comparison: ");
  if (!r.ok()) return;
  for (int a = 0; a < T.num_objects(); ++a)
    for (int a2 = 0; a2 < T.num_objects(); ++a2) {
      const auto& h = T.hom(a, a2);
      std::vector<char> hit(K.num_morphisms(), 0);
      bool inj = true;
      for (int l : h) {
        if (hit[cmp.mor[l]]) inj = false;
        hit[cmp.mor[l]] = 1;
      }
      if (!inj || h.size() != K.hom(a, a2).size())
        r.add("hom bijection", T.object_name(a) + " -> " + T.object_name(a2) + ": " + std::to_string(h.size()) +
                                   " vs " + std::to_string(K.hom(a, a2).size()));
    }
  if (!(compose(cmp, s.theory.L) == kt.theory.L)) r.add("over arities", "comparison o str(U).L differs from kle(T).L");
}

// power-set tuple of `t` (first coordinate most significant) in base `s`
int tuple_code(const Table& t, int s) { return FinSetCategory::code(s, t); }

Table tuple_decode(int code, int len, int s) {
  Table t(len);
  for (int i = len - 1; i >= 0; --i) {
    t[i] = code % s;
    code /= s;
  }
  return t;
}

}  // namespace

FreeForgetful free_forgetful_structure(const SetMonad& t, const FinSetCategory& base) {
  const int k = base.bound;
  FreeForgetful out;
  std::vector<int> carrier;
  std::vector<Table> action;
  std::vector<std::string> names;
  std::vector<int> free_of;  // -1 for plain algebras, a for F a
  for (int d = 0; d <= k; ++d)
    for_each_function(t.size(d), d, [&](const Table& s) {
      if (is_set_algebra(t, d, s)) {
        carrier.push_back(d);
        action.push_back(s);
        free_of.push_back(-1);
      }
    });
  const int plain = static_cast<int>(carrier.size());
  for (int a = 0; a <= k; ++a) {
    carrier.push_back(t.size(a));
    action.push_back(t.mult(a));
    free_of.push_back(a);
  }
  const int n = static_cast<int>(carrier.size());
  const int w = decimal_width(n - 1);
  int widest = 1;
  for (int d : carrier) widest = std::max(widest, d);
  const int wv = decimal_width(widest - 1);
  FinCategory::Builder bld;
  for (int i = 0; i < n; ++i) {
    names.push_back(i < plain ? "a" + zpad(i, w) : "F" + zpad(free_of[i], w));
    bld.add_object(names.back());
  }
  std::vector<Table> tables;
  std::map<std::pair<int, int>, std::map<Table, int>> local;
  auto add = [&](int i, int j, const Table& f) {
    int id = bld.add_morphism("h" + names[i] + "." + names[j] + ":" + digits(f, wv), i, j);
    tables.push_back(f);
    local[{i, j}][f] = id;
    if (i == j && f == identity_table(carrier[i])) bld.set_identity(i, id);
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (free_of[i] >= 0) {
        int a = free_of[i];
        std::vector<Table> homs;
        for_each_function(a, carrier[j], [&](const Table& h0) { homs.push_back(after(action[j], t.fmap(a, carrier[j], h0))); });
        std::sort(homs.begin(), homs.end());
        for (const auto& h : homs) add(i, j, h);
      } else {
        for_each_function(carrier[i], carrier[j], [&](const Table& f) {
          if (is_set_algebra_hom(t, carrier[i], action[i], carrier[j], action[j], f)) add(i, j, f);
        });
      }
    }
  std::vector<int> perm;
  auto cat = bld.build(
      [&](int g, int f) {
        const auto& m = local[{bld.src(f), bld.dst(g)}];
        auto it = m.find(after(tables[g], tables[f]));
        return it == m.end() ? -1 : it->second;
      },
      &perm);
  out.algebras = cat;
  out.under.dom = cat;
  out.under.size.resize(n);
  out.under.map.resize(tables.size());
  std::vector<int> onew(n);
  for (int i = 0; i < n; ++i) {
    onew[i] = cat->object(names[i]);
    out.under.size[onew[i]] = carrier[i];
  }
  for (std::size_t i = 0; i < tables.size(); ++i) out.under.map[perm[i]] = tables[i];
  for (int a = 0; a <= k; ++a) out.free_object.push_back(onew[plain + a]);

  out.kle = kleisli(t, base);
  PresheafFamily fam = power_family(out.under, base, out.kle.theory.arities);
  out.str = structure(fam);
  const auto& T = *out.str.theory.theory;
  const int na = k + 1;
  FinFunctor cmp{out.str.theory.theory, out.kle.theory.theory, identity_table(na), {}};
  for (int l = 0; l < T.num_morphisms(); ++l) {
    int a = T.src(l), a2 = T.dst(l);
    int fa = out.free_object[a];
    int ta = t.size(a);
    const auto& ns = out.str.homs[a * na + a2];
    int eta_code = tuple_code(t.unit(a), ta);
    int y = out.str.components(l)[ns.offset[fa] + eta_code];
    cmp.mor.push_back(out.kle.find(a, a2, tuple_decode(y, a2, ta)));
  }
  out.comparison = cmp;
  check_hom_bijection(out.str, out.kle, cmp, out.report);
  return out;
}

Report check_adjunction(const FinFunctor& u, const FinFunctor& f, const std::vector<int>& eta,
                        const std::vector<int>& eps) {
  Report r;
  r.merge(validate_functor(u), "U: ");
  r.merge(validate_functor(f), "F: ");
  if (!r.ok()) return r;
  const auto& M = *u.src;
  const auto& B = *u.dst;
  if (static_cast<int>(eta.size()) != B.num_objects() || static_cast<int>(eps.size()) != M.num_objects()) {
    r.add("shape", "unit or counit");
    return r;
  }
  for (int b = 0; b < B.num_objects(); ++b)
    if (B.src(eta[b]) != b || B.dst(eta[b]) != u.obj[f.obj[b]]) r.add("unit type", B.object_name(b));
  for (int m = 0; m < M.num_objects(); ++m)
    if (M.src(eps[m]) != f.obj[u.obj[m]] || M.dst(eps[m]) != m) r.add("counit type", M.object_name(m));
  if (!r.ok()) return r;
  for (int g = 0; g < B.num_morphisms(); ++g)
    if (B.compose(u.mor[f.mor[g]], eta[B.src(g)]) != B.compose(eta[B.dst(g)], g)) r.add("unit naturality", B.morphism_name(g));
  for (int g = 0; g < M.num_morphisms(); ++g)
    if (M.compose(g, eps[M.src(g)]) != M.compose(eps[M.dst(g)], f.mor[u.mor[g]])) r.add("counit naturality", M.morphism_name(g));
  for (int m = 0; m < M.num_objects(); ++m)
    if (B.compose(u.mor[eps[m]], eta[u.obj[m]]) != B.identity(u.obj[m])) r.add("triangle", "U eps o eta U at " + M.object_name(m));
  for (int b = 0; b < B.num_objects(); ++b)
    if (M.compose(eps[f.obj[b]], f.mor[eta[b]]) != M.identity(f.obj[b])) r.add("triangle", "eps F o F eta at " + B.object_name(b));
  return r;
}

AdjunctionStructure structure_of_right_adjoint(const FinFunctor& u, const FinFunctor& f, const std::vector<int>& eta,
                                               const std::vector<int>& eps) {
  Report adj = check_adjunction(u, f, eta, eps);
  if (!adj.ok()) throw PreconditionError("triangle identities fail: " + adj.violations.front().law + " " +
                                         adj.violations.front().detail);
  const auto& B = *u.dst;
  AdjunctionStructure out;
  out.monad = FinMonad{u.dst, compose(u, f), eta, {}};
  for (int b = 0; b < B.num_objects(); ++b) out.monad.mult.push_back(u.mor[eps[f.obj[b]]]);
  out.report.merge(validate_fin_monad(out.monad), "monad: ");
  out.kle = kleisli(out.monad);
  out.str = structure(u, canonical_aritation(u.dst));
  const auto& T = *out.str.theory.theory;
  const int na = B.num_objects();
  FinFunctor cmp{out.str.theory.theory, out.kle.theory.theory, identity_table(na), {}};
  for (int l = 0; l < T.num_morphisms(); ++l) {
    int a = T.src(l), a2 = T.dst(l);
    int fa = f.obj[a];
    const auto& ns = out.str.homs[a * na + a2];
    int y = out.str.components(l)[ns.offset[fa] + B.hom_pos(eta[a])];
    cmp.mor.push_back(out.kle.find_base(a, B.hom(a2, u.obj[fa])[y]));
  }
  out.comparison = cmp;
  check_hom_bijection(out.str, out.kle, cmp, out.report);
  return out;
}

// ---------------------------------------------------------------------------
// Recognition

std::optional<FinMonad> recognize_monadic(const ProtoTheory& th) {
  const auto& A = *th.arities;
  const auto& T = *th.theory;
  const auto& L = th.L;
  auto base = th.arities->opposite();
  const auto& B = *base;
  const int n = A.num_objects();
  // B-morphism g: c → r is the arity morphism r → c with the same index
  std::vector<int> rep(n, -1), univ(n, -1);
  // inverse[b][l] = g with L(g)∘u_b = l
  std::vector<std::vector<int>> inverse(n, std::vector<int>(T.num_morphisms(), -1));
  for (int b = 0; b < n; ++b) {
    int Lb = L.obj[b];
    for (int r = 0; r < n && rep[b] < 0; ++r)
      for (int u : T.hom(Lb, L.obj[r])) {
        bool ok = true;
        std::vector<int> inv(T.num_morphisms(), -1);
        for (int c = 0; c < n && ok; ++c) {
          if (B.hom(c, r).size() != T.hom(Lb, L.obj[c]).size()) {
            ok = false;
            break;
          }
          for (int g : B.hom(c, r)) {
            int l = T.compose(L.mor[g], u);
            if (inv[l] >= 0) {
              ok = false;
              break;
            }
            inv[l] = g;
          }
        }
        if (ok) {
          rep[b] = r;
          univ[b] = u;
          inverse[b] = std::move(inv);
          break;
        }
      }
    if (rep[b] < 0) return std::nullopt;
  }
  FinMonad m;
  m.base = base;
  m.t = FinFunctor{base, base, rep, std::vector<int>(B.num_morphisms())};
  for (int b = 0; b < n; ++b) {
    m.unit.push_back(inverse[b][T.identity(L.obj[b])]);
    m.mult.push_back(inverse[b][T.compose(univ[rep[b]], univ[b])]);
  }
  for (int f = 0; f < B.num_morphisms(); ++f) {
    int b = B.src(f), b2 = B.dst(f);
    m.t.mor[f] = inverse[b2][T.compose(univ[b], L.mor[f])];
  }
  if (!validate_fin_monad(m).ok()) return std::nullopt;
  return m;
}

std::optional<std::vector<int>> monad_isomorphism(const FinMonad& t, const FinMonad& t2) {
  const auto& B = *t.base;
  if (!same_category(t.base, t2.base)) return std::nullopt;
  const int n = B.num_objects();
  auto is_iso = [&](int f) {
    for (int g : B.hom(B.dst(f), B.src(f)))
      if (B.is_identity(B.compose(g, f)) && B.is_identity(B.compose(f, g))) return true;
    return false;
  };
  std::vector<std::vector<int>> cand(n);
  for (int b = 0; b < n; ++b)
    for (int f : B.hom(t.t.obj[b], t2.t.obj[b]))
      if (is_iso(f) && B.compose(f, t.unit[b]) == t2.unit[b]) cand[b].push_back(f);
  std::vector<int> phi(n, -1);
  std::optional<std::vector<int>> found;
  std::function<void(int)> dfs = [&](int b) {
    if (found) return;
    if (b == n) {
      if (validate_monad_morphism(t, t2, phi).ok()) found = phi;
      return;
    }
    for (int f : cand[b]) {
      phi[b] = f;
      bool ok = true;
      for (int g : B.in(b)) {
        int a = B.src(g);
        if (a <= b && B.compose(t2.t.mor[g], phi[a]) != B.compose(f, t.t.mor[g])) ok = false;
      }
      for (int g : B.out(b)) {
        int c = B.dst(g);
        if (c < b && B.compose(t2.t.mor[g], f) != B.compose(phi[c], t.t.mor[g])) ok = false;
      }
      if (ok) dfs(b + 1);
    }
    phi[b] = -1;
  };
  dfs(0);
  return found;
}

// ---------------------------------------------------------------------------
// Limits and codensity

std::optional<Cone> limit_in(const FinFunctor& d) {
  const auto& B = *d.dst;
  const int n = B.num_objects();
  std::vector<std::vector<NatTransformation>> cones(n);
  for (int c = 0; c < n; ++c) cones[c] = enumerate_nat_transformations(constant_functor(d.src, d.dst, c), d);
  for (int c = 0; c < n; ++c)
    for (const auto& cone : cones[c]) {
      bool universal = true;
      for (int c2 = 0; c2 < n && universal; ++c2) {
        if (B.hom(c2, c).size() != cones[c2].size()) {
          universal = false;
          break;
        }
        std::set<std::vector<int>> seen;
        for (int g : B.hom(c2, c)) {
          std::vector<int> legs;
          for (int p : cone.comp) legs.push_back(B.compose(p, g));
          if (!seen.insert(legs).second) {
            universal = false;
            break;
          }
        }
      }
      if (universal) return Cone{c, cone.comp};
    }
  return std::nullopt;
}

int factor_through(const FinFunctor& d, const Cone& limit, int c, const std::vector<int>& legs) {
  const auto& B = *d.dst;
  for (int g : B.hom(c, limit.apex)) {
    bool ok = true;
    for (std::size_t j = 0; j < legs.size() && ok; ++j) ok = B.compose(limit.leg[j], g) == legs[j];
    if (ok) return g;
  }
  return -1;
}

CodensityMonad codensity_monad(const FinFunctor& u) {
  const auto& B = *u.dst;
  const int n = B.num_objects();
  CodensityMonad cm;
  std::vector<FinFunctor> diagram;
  std::vector<Cone> lim;
  std::vector<std::map<std::pair<int, int>, int>> where(n);
  for (int b = 0; b < n; ++b) {
    cm.comma.push_back(comma_category(u, b));
    const auto& cc = cm.comma.back();
    diagram.push_back(compose(u, cc.proj));
    auto l = limit_in(diagram.back());
    if (!l) throw PreconditionError("required limit absent: (" + B.object_name(b) + " | U) has no limit in the base");
    lim.push_back(*l);
    cm.projection.push_back(l->leg);
    for (std::size_t j = 0; j < cc.objects.size(); ++j) where[b][cc.objects[j]] = static_cast<int>(j);
  }
  FinMonad& m = cm.monad;
  m.base = u.dst;
  m.t = FinFunctor{u.dst, u.dst, std::vector<int>(n), std::vector<int>(B.num_morphisms())};
  for (int b = 0; b < n; ++b) m.t.obj[b] = lim[b].apex;
  for (int f = 0; f < B.num_morphisms(); ++f) {
    int b = B.src(f), b2 = B.dst(f);
    std::vector<int> legs;
    for (auto [mm, phi] : cm.comma[b2].objects) legs.push_back(lim[b].leg[where[b].at({mm, B.compose(phi, f)})]);
    m.t.mor[f] = factor_through(diagram[b2], lim[b2], lim[b].apex, legs);
  }
  for (int b = 0; b < n; ++b) {
    std::vector<int> legs;
    for (auto [mm, phi] : cm.comma[b].objects) legs.push_back(phi);
    m.unit.push_back(factor_through(diagram[b], lim[b], b, legs));
    int tb = lim[b].apex;
    legs.clear();
    for (std::size_t j = 0; j < cm.comma[b].objects.size(); ++j) {
      int mm = cm.comma[b].objects[j].first;
      legs.push_back(lim[tb].leg[where[tb].at({mm, lim[b].leg[j]})]);
    }
    m.mult.push_back(factor_through(diagram[b], lim[b], lim[tb].apex, legs));
  }
  return cm;
}

CodensityStructure codensity_structure(const FinFunctor& u) {
  CodensityStructure out;
  out.codensity = codensity_monad(u);
  const auto& B = *u.dst;
  const auto& m = out.codensity.monad;
  out.report.merge(validate_fin_monad(m), "codensity monad: ");
  if (!out.report.ok()) return out;
  out.kle = kleisli(m);
  out.str = structure(u, canonical_aritation(u.dst));
  const auto& T = *out.str.theory.theory;
  const int na = B.num_objects();
  FinFunctor cmp{out.str.theory.theory, out.kle.theory.theory, identity_table(na), {}};
  for (int l = 0; l < T.num_morphisms(); ++l) {
    int a = T.src(l), a2 = T.dst(l);
    const auto& ns = out.str.homs[a * na + a2];
    const auto& comp = out.str.components(l);
    const auto& cc = out.codensity.comma[a];
    std::vector<int> legs;
    for (auto [mm, phi] : cc.objects) legs.push_back(B.hom(a2, u.obj[mm])[comp[ns.offset[mm] + B.hom_pos(phi)]]);
    Cone lim{m.t.obj[a], out.codensity.projection[a]};
    int k = factor_through(compose(u, cc.proj), lim, a2, legs);
    cmp.mor.push_back(k < 0 ? -1 : out.kle.find_base(a, k));
  }
  out.comparison = cmp;
  check_hom_bijection(out.str, out.kle, cmp, out.report);
  return out;
}

std::size_t const_codensity_size(const FinSetCategory& base, int b, int c) {
  FinFunctor u = constant_functor(terminal_category(), base.cat, b);
  CommaCategory cc = comma_category(u, c);
  SetFunctor d{cc.cat, {}, {}};
  for (std::size_t j = 0; j < cc.objects.size(); ++j) d.size.push_back(base.under.size[b]);
  for (int k = 0; k < cc.cat->num_morphisms(); ++k) d.map.push_back(base.under.map[u.mor[cc.proj.mor[k]]]);
  return limit_of_finset_diagram(d).apex();
}

// ---------------------------------------------------------------------------
// Monad morphisms

Report validate_monad_morphism(const FinMonad& t, const FinMonad& t2, const std::vector<int>& phi) {
  Report r;
  const auto& B = *t.base;
  for (int b = 0; b < B.num_objects(); ++b)
    if (B.src(phi[b]) != t.t.obj[b] || B.dst(phi[b]) != t2.t.obj[b]) r.add("type", B.object_name(b));
  if (!r.ok()) return r;
  for (int f = 0; f < B.num_morphisms(); ++f)
    if (B.compose(t2.t.mor[f], phi[B.src(f)]) != B.compose(phi[B.dst(f)], t.t.mor[f])) r.add("naturality", B.morphism_name(f));
  for (int b = 0; b < B.num_objects(); ++b) {
    if (B.compose(phi[b], t.unit[b]) != t2.unit[b]) r.add("unit", B.object_name(b));
    int lhs = B.compose(phi[b], t.mult[b]);
    int rhs = B.compose(t2.mult[b], B.compose(t2.t.mor[phi[b]], phi[t.t.obj[b]]));
    if (lhs != rhs) r.add("multiplication", B.object_name(b));
  }
  return r;
}

std::vector<std::vector<int>> enumerate_monad_morphisms(const FinMonad& t, const FinMonad& t2) {
  const auto& B = *t.base;
  const int n = B.num_objects();
  std::vector<std::vector<int>> cand(n), out;
  for (int b = 0; b < n; ++b)
    for (int f : B.hom(t.t.obj[b], t2.t.obj[b]))
      if (B.compose(f, t.unit[b]) == t2.unit[b]) cand[b].push_back(f);
  std::vector<int> phi(n, -1);
  std::function<void(int)> dfs = [&](int b) {
    if (b == n) {
      if (validate_monad_morphism(t, t2, phi).ok()) out.push_back(phi);
      return;
    }
    for (int f : cand[b]) {
      phi[b] = f;
      bool ok = true;
      for (int g : B.in(b))
        if (B.src(g) <= b && B.compose(t2.t.mor[g], phi[B.src(g)]) != B.compose(f, t.t.mor[g])) ok = false;
      for (int g : B.out(b))
        if (B.dst(g) < b && B.compose(t2.t.mor[g], f) != B.compose(phi[B.dst(g)], t.t.mor[g])) ok = false;
      if (ok) dfs(b + 1);
    }
    phi[b] = -1;
  };
  dfs(0);
  return out;
}

TheoryMorphism kle_on_morphism(const KleisliTheory& kt, const KleisliTheory& kt2, const FinMonad& t,
                               const FinMonad& t2, const std::vector<int>& phi) {
  Report r = validate_monad_morphism(t, t2, phi);
  if (!r.ok()) throw PreconditionError("not a monad morphism: " + r.violations.front().law);
  const auto& B = *t.base;
  const auto& K = *kt.theory.theory;
  FinFunctor P{kt.theory.theory, kt2.theory.theory, identity_table(K.num_objects()), {}};
  for (int l = 0; l < K.num_morphisms(); ++l)
    P.mor.push_back(kt2.find_base(kt.source[l], B.compose(phi[kt.source[l]], kt.base_map[l])));
  return TheoryMorphism{kt.theory, kt2.theory, P};
}

TheoryMorphism kle_on_morphism(const KleisliTheory& kt, const KleisliTheory& kt2, const SetMonad& t,
                               const SetMonad& t2, const std::function<Table(int)>& phi) {
  const auto& K = *kt.theory.theory;
  const int n = K.num_objects();
  for (int b = 0; b < n; ++b) {
    Table p = phi(b);
    if (static_cast<int>(p.size()) != t.size(b)) throw PreconditionError("not a monad morphism: component size");
    if (after(p, t.unit(b)) != t2.unit(b)) throw PreconditionError("not a monad morphism: unit");
    Table lhs = after(p, t.mult(b));
    Table rhs = after(t2.mult(b), after(t2.fmap(t.size(b), t2.size(b), p), phi(t.size(b))));
    if (lhs != rhs) throw PreconditionError("not a monad morphism: multiplication");
    for (int c = 0; c < n; ++c)
      for_each_function(b, c, [&](const Table& f) {
        if (after(t2.fmap(b, c, f), p) != after(phi(c), t.fmap(b, c, f)))
          throw PreconditionError("not a monad morphism: naturality");
      });
  }
  FinFunctor P{kt.theory.theory, kt2.theory.theory, identity_table(n), {}};
  for (int l = 0; l < K.num_morphisms(); ++l)
    P.mor.push_back(kt2.find(kt.source[l], kt.target[l], after(phi(kt.source[l]), kt.table[l])));
  return TheoryMorphism{kt.theory, kt2.theory, P};
}

}  // namespace protocat
