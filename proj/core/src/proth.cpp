#include "protocat/proth.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace protocat {

// ---------------------------------------------------------------------------
// Aritations

Aritation canonical_aritation(const CatPtr& base) {
  const auto& B = *base;
  Aritation ar;
  ar.base = base;
  ar.arities = base->opposite();
  ar.canonical = true;
  for (int a = 0; a < B.num_objects(); ++a) ar.pair.push_back(hom_functor(base, a));
  ar.act.resize(B.num_morphisms());
  for (int f = 0; f < B.num_morphisms(); ++f) {
    // f: a′ → a in B is a: a → a′ in the arities
    int a = B.dst(f), a2 = B.src(f);
    for (int x = 0; x < B.num_objects(); ++x) {
      Table t;
      for (int g : B.hom(a, x)) t.push_back(B.hom_pos(B.compose(g, f)));
      (void)a2;
      ar.act[f].push_back(std::move(t));
    }
  }
  return ar;
}

Aritation restrict_arities(const Aritation& ar, const std::vector<int>& objs) {
  Aritation r;
  r.base = ar.base;
  r.arities = full_subcategory(*ar.arities, objs);
  const auto& S = *r.arities;
  for (int a = 0; a < S.num_objects(); ++a) r.pair.push_back(ar.pair[ar.arities->object(S.object_name(a))]);
  for (int f = 0; f < S.num_morphisms(); ++f) r.act.push_back(ar.act[ar.arities->morphism(S.morphism_name(f))]);
  return r;
}

Aritation projection_aritation(const ConcreteCategory& base) {
  Aritation r;
  r.base = base.cat;
  r.arities = terminal_category();
  r.pair.push_back(base.under);
  std::vector<Table> ids;
  for (int x = 0; x < base.cat->num_objects(); ++x) {
    Table t(base.under.size[x]);
    std::iota(t.begin(), t.end(), 0);
    ids.push_back(std::move(t));
  }
  r.act.push_back(std::move(ids));
  return r;
}

Report validate_aritation(const Aritation& ar) {
  Report r;
  const auto& A = *ar.arities;
  const auto& B = *ar.base;
  if (static_cast<int>(ar.pair.size()) != A.num_objects() || static_cast<int>(ar.act.size()) != A.num_morphisms()) {
    r.add("shape", "pairing tables do not match the arities");
    return r;
  }
  for (int a = 0; a < A.num_objects(); ++a) r.merge(validate_set_functor(ar.pair[a]), "<" + A.object_name(a) + ",->: ");
  if (!r.ok()) return r;
  for (int f = 0; f < A.num_morphisms(); ++f) {
    SetNat t{ar.act[f]};
    if (!is_natural(ar.pair[A.src(f)], ar.pair[A.dst(f)], t)) r.add("naturality", "<" + A.morphism_name(f) + ",->");
  }
  if (!r.ok()) return r;
  for (int a = 0; a < A.num_objects(); ++a)
    for (int x = 0; x < B.num_objects(); ++x) {
      const auto& t = ar.act[A.identity(a)][x];
      for (int e = 0; e < static_cast<int>(t.size()); ++e)
        if (t[e] != e) {
          r.add("identity", A.object_name(a));
          break;
        }
    }
  for (int f = 0; f < A.num_morphisms(); ++f)
    for (int g : A.out(A.dst(f)))
      for (int x = 0; x < B.num_objects(); ++x) {
        const auto& gf = ar.act[A.compose(g, f)][x];
        for (int e = 0; e < static_cast<int>(gf.size()); ++e)
          if (gf[e] != ar.act[g][x][ar.act[f][x][e]]) {
            r.add("composition", A.morphism_name(g) + " o " + A.morphism_name(f));
            break;
          }
      }
  return r;
}

// ---------------------------------------------------------------------------
// Proto-theories and their morphisms

ProtoTheory make_proto_theory(const FinFunctor& L) {
  if (!is_bijective_on_objects(L)) throw PreconditionError("L is not bijective on objects");
  ProtoTheory t{L.src, L.dst, L, std::vector<int>(L.dst->num_objects())};
  for (std::size_t a = 0; a < L.obj.size(); ++a) t.arity[L.obj[a]] = static_cast<int>(a);
  return t;
}

ProtoTheory identity_theory(const CatPtr& arities) { return make_proto_theory(identity_functor(arities)); }

Report validate_proto_theory(const ProtoTheory& t) {
  Report r = validate_category(*t.theory);
  r.merge(validate_functor(t.L), "L: ");
  if (!is_bijective_on_objects(t.L)) r.add("bijective on objects", "L");
  return r;
}

Report validate_theory_morphism(const TheoryMorphism& p) {
  Report r = validate_functor(p.P);
  if (!r.ok()) return r;
  if (!(compose(p.P, p.from.L) == p.to.L)) r.add("over arities", "P o L differs from L'");
  return r;
}

TheoryMorphism compose(const TheoryMorphism& q, const TheoryMorphism& p) { return {p.from, q.to, compose(q.P, p.P)}; }

TheoryMorphism identity_morphism(const ProtoTheory& t) { return {t, t, identity_functor(t.theory)}; }

bool is_theory_isomorphism(const TheoryMorphism& p) {
  if (!is_bijective_on_objects(p.P)) return false;
  if (p.P.src->num_morphisms() != p.P.dst->num_morphisms()) return false;
  std::vector<char> seen(p.P.dst->num_morphisms(), 0);
  for (int k : p.P.mor) {
    if (seen[k]) return false;
    seen[k] = 1;
  }
  return true;
}

std::vector<int> relative_generators(const FinCategory& c, const std::vector<char>& fixed) {
  const int m = c.num_morphisms();
  std::vector<char> in(fixed);
  std::vector<int> members, gens, work;
  for (int f = 0; f < m; ++f)
    if (in[f]) members.push_back(f);
  auto close = [&](std::vector<int> fresh) {
    while (!fresh.empty()) {
      int y = fresh.back();
      fresh.pop_back();
      auto add = [&](int z) {
        if (z >= 0 && !in[z]) {
          in[z] = 1;
          members.push_back(z);
          fresh.push_back(z);
        }
      };
      for (int z : c.out(c.dst(y)))
        if (in[z]) add(c.compose(z, y));
      for (int z : c.in(c.src(y)))
        if (in[z]) add(c.compose(y, z));
    }
  };
  close(members);
  for (int f = 0; f < m; ++f) {
    if (in[f]) continue;
    gens.push_back(f);
    in[f] = 1;
    members.push_back(f);
    close({f});
  }
  return gens;
}

std::vector<FinFunctor> enumerate_theory_morphisms(const ProtoTheory& from, const ProtoTheory& to, std::size_t limit) {
  const auto& T1 = *from.theory;
  const auto& T2 = *to.theory;
  const int m = T1.num_morphisms();
  std::vector<FinFunctor> out;
  FinFunctor P{from.theory, to.theory, std::vector<int>(T1.num_objects()), std::vector<int>(m, -1)};
  for (int o = 0; o < T1.num_objects(); ++o) P.obj[o] = to.L.obj[from.arity[o]];
  std::vector<int> trail, queue;
  auto assign = [&](int l, int k) {
    if (P.mor[l] < 0) {
      P.mor[l] = k;
      trail.push_back(l);
      queue.push_back(l);
      return true;
    }
    return P.mor[l] == k;
  };
  auto propagate = [&] {
    while (!queue.empty()) {
      int l = queue.back();
      queue.pop_back();
      for (int j : T1.out(T1.dst(l)))
        if (P.mor[j] >= 0 && !assign(T1.compose(j, l), T2.compose(P.mor[j], P.mor[l]))) {
          queue.clear();
          return false;
        }
      for (int j : T1.in(T1.src(l)))
        if (P.mor[j] >= 0 && !assign(T1.compose(l, j), T2.compose(P.mor[l], P.mor[j]))) {
          queue.clear();
          return false;
        }
    }
    return true;
  };
  auto undo = [&](std::size_t mark) {
    while (trail.size() > mark) {
      P.mor[trail.back()] = -1;
      trail.pop_back();
    }
  };
  std::vector<char> fixed(m, 0);
  bool ok = true;
  for (int f = 0; f < from.arities->num_morphisms(); ++f) {
    fixed[from.L.mor[f]] = 1;
    ok = ok && assign(from.L.mor[f], to.L.mor[f]);
  }
  if (!ok || !propagate()) return out;
  std::vector<int> gens = relative_generators(T1, fixed);
  std::function<void(std::size_t)> dfs = [&](std::size_t i) {
    if (out.size() >= limit) return;
    while (i < gens.size() && P.mor[gens[i]] >= 0) ++i;
    if (i == gens.size()) {
      out.push_back(P);
      return;
    }
    int l = gens[i];
    for (int k : T2.hom(P.obj[T1.src(l)], P.obj[T1.dst(l)])) {
      std::size_t mark = trail.size();
      if (assign(l, k) && propagate()) dfs(i + 1);
      undo(mark);
      if (out.size() >= limit) return;
    }
  };
  dfs(0);
  std::sort(out.begin(), out.end(), [](const FinFunctor& a, const FinFunctor& b) { return a.mor < b.mor; });
  return out;
}

// ---------------------------------------------------------------------------
// Semantics

bool Model::operator<(const Model& o) const {
  if (carrier != o.carrier) return carrier < o.carrier;
  if (alpha != o.alpha) return alpha < o.alpha;
  return gamma < o.gamma;
}

Semantics::Semantics(ProtoTheory theory, Aritation aritation) : th_(std::move(theory)), ar_(std::move(aritation)) {
  if (!same_category(th_.arities, ar_.arities)) throw PreconditionError("theory and aritation have different arities");
  const auto& T = *th_.theory;
  const auto& B = *ar_.base;
  const int nb = B.num_objects();
  if (ar_.canonical) {
    alpha_off_.assign(nb, std::vector<int>(nb + 1, 0));
    for (int d = 0; d < nb; ++d)
      for (int b = 0; b < nb; ++b)
        alpha_off_[d][b + 1] = alpha_off_[d][b] + static_cast<int>(T.hom(th_.L.obj[d], th_.L.obj[b]).size());
  }
  gamma_off_.assign(nb, std::vector<int>(T.num_morphisms() + 1, 0));
  for (int d = 0; d < nb; ++d)
    for (int l = 0; l < T.num_morphisms(); ++l)
      gamma_off_[d][l + 1] = gamma_off_[d][l] + ar_.size(th_.arity[T.src(l)], d);
  std::vector<char> fixed(T.num_morphisms(), 0);
  for (int f : th_.L.mor) fixed[f] = 1;
  gens_ = relative_generators(T, fixed);
  decomp_.resize(T.num_morphisms());
  for (int j = 0; j < T.num_morphisms(); ++j)
    for (int k : T.out(T.dst(j))) {
      if (T.is_identity(j) || T.is_identity(k)) continue;
      decomp_[T.compose(k, j)].emplace_back(k, j);
    }
}

std::vector<Model> Semantics::enumerate_models(int carrier, std::size_t limit) const {
  return ar_.canonical ? solve_alpha(carrier, limit) : solve_gamma(carrier, limit);
}

std::vector<Model> Semantics::enumerate_models() const {
  std::vector<Model> all;
  for (int d = 0; d < ar_.base->num_objects(); ++d) {
    auto ms = enumerate_models(d);
    all.insert(all.end(), ms.begin(), ms.end());
  }
  return all;
}

std::vector<Model> Semantics::solve_alpha(int d, std::size_t limit) const {
  const auto& T = *th_.theory;
  const auto& B = *ar_.base;
  const auto& L = th_.L;
  const int nb = B.num_objects();
  const auto& off = alpha_off_[d];
  const int V = off[nb];
  const int Ld = L.obj[d];
  std::vector<Model> out;
  std::vector<int> var_b(V), var_l(V);
  for (int b = 0; b < nb; ++b) {
    const auto& h = T.hom(Ld, L.obj[b]);
    if (!h.empty() && B.hom(b, d).empty()) return out;
    for (std::size_t p = 0; p < h.size(); ++p) {
      var_b[off[b] + p] = b;
      var_l[off[b] + p] = h[p];
    }
  }
  auto var_of = [&](int l) { return off[th_.arity[T.dst(l)]] + T.hom_pos(l); };

  std::vector<int> val(V, -1), trail, queue;
  std::vector<std::vector<int>> adj(V);
  std::vector<std::pair<int, int>> edges;
  auto assign = [&](int v, int y) {
    if (val[v] < 0) {
      val[v] = y;
      trail.push_back(v);
      queue.push_back(v);
      return true;
    }
    return val[v] == y;
  };
  auto process = [&](int v) {
    int b = var_b[v], l = var_l[v], y = val[v];
    int f = B.hom(b, d)[y];
    for (int g : B.in(b)) {
      if (B.is_identity(g)) continue;
      int l2 = T.compose(L.mor[g], l);
      if (!assign(var_of(l2), B.hom_pos(B.compose(f, g)))) return false;
    }
    int Lf = L.mor[f];
    for (int k : T.out(L.obj[b])) {
      if (T.is_identity(k)) continue;
      int p = var_of(T.compose(k, l)), q = var_of(T.compose(k, Lf));
      if (p == q) continue;
      if (val[p] >= 0 && val[q] >= 0) {
        if (val[p] != val[q]) return false;
      } else if (val[p] >= 0) {
        assign(q, val[p]);
      } else if (val[q] >= 0) {
        assign(p, val[q]);
      } else {
        adj[p].push_back(q);
        adj[q].push_back(p);
        edges.emplace_back(p, q);
      }
    }
    for (std::size_t i = 0; i < adj[v].size(); ++i)
      if (!assign(adj[v][i], y)) return false;
    return true;
  };
  auto propagate = [&] {
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      if (!process(v)) {
        queue.clear();
        return false;
      }
    }
    return true;
  };
  auto undo = [&](std::size_t mark, std::size_t emark) {
    while (trail.size() > mark) {
      val[trail.back()] = -1;
      trail.pop_back();
    }
    while (edges.size() > emark) {
      auto [p, q] = edges.back();
      adj[p].pop_back();
      adj[q].pop_back();
      edges.pop_back();
    }
  };
  // unit law α_d(id_{Ld}) = id_d
  if (!assign(var_of(T.identity(Ld)), B.hom_pos(B.identity(d))) || !propagate()) return out;
  std::function<void(int)> search = [&](int pos) {
    if (out.size() >= limit) return;
    while (pos < V && val[pos] >= 0) ++pos;
    if (pos == V) {
      out.push_back(Model{d, val, {}});
      return;
    }
    int dom = static_cast<int>(B.hom(var_b[pos], d).size());
    for (int y = 0; y < dom; ++y) {
      std::size_t mark = trail.size(), emark = edges.size();
      if (assign(pos, y) && propagate()) search(pos + 1);
      undo(mark, emark);
      if (out.size() >= limit) return;
    }
  };
  search(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Model> Semantics::solve_gamma(int d, std::size_t limit) const {
  const auto& T = *th_.theory;
  const auto& A = *th_.arities;
  const auto& L = th_.L;
  const auto& off = gamma_off_[d];
  const int m = T.num_morphisms();
  const int V = off[m];
  std::vector<Model> out;
  std::vector<int> var_l(V), dom(m);
  for (int l = 0; l < m; ++l) {
    dom[l] = ar_.size(th_.arity[T.dst(l)], d);
    if (off[l + 1] > off[l] && dom[l] == 0) return out;
    for (int v = off[l]; v < off[l + 1]; ++v) var_l[v] = l;
  }
  std::vector<int> val(V, -1), trail, queue;
  auto assign = [&](int l, int e, int y) {
    int v = off[l] + e;
    if (val[v] < 0) {
      val[v] = y;
      trail.push_back(v);
      queue.push_back(v);
      return true;
    }
    return val[v] == y;
  };
  auto process = [&](int v) {
    int l = var_l[v], e = v - off[l], y = val[v];
    for (int k : T.out(T.dst(l))) {
      if (T.is_identity(k)) continue;
      int kv = val[off[k] + y];
      int kl = T.compose(k, l);
      int klv = val[off[kl] + e];
      if (kv >= 0) {
        if (!assign(kl, e, kv)) return false;
      } else if (klv >= 0) {
        if (!assign(k, y, klv)) return false;
      }
    }
    for (int j : T.in(T.src(l))) {
      if (T.is_identity(j)) continue;
      int lj = T.compose(l, j);
      for (int e2 = 0; e2 < off[j + 1] - off[j]; ++e2)
        if (val[off[j] + e2] == e && !assign(lj, e2, y)) return false;
    }
    for (auto [k, j] : decomp_[l]) {
      int je = val[off[j] + e];
      if (je >= 0 && !assign(k, je, y)) return false;
    }
    return true;
  };
  auto propagate = [&] {
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      if (!process(v)) {
        queue.clear();
        return false;
      }
    }
    return true;
  };
  auto undo = [&](std::size_t mark) {
    while (trail.size() > mark) {
      val[trail.back()] = -1;
      trail.pop_back();
    }
  };
  for (int f = 0; f < A.num_morphisms(); ++f) {
    const auto& t = ar_.act[f][d];
    for (int e = 0; e < static_cast<int>(t.size()); ++e)
      if (!assign(L.mor[f], e, t[e])) return out;
  }
  if (!propagate()) return out;
  std::vector<int> order;
  std::vector<char> placed(V, 0);
  for (int g : gens_)
    for (int v = off[g]; v < off[g + 1]; ++v) {
      order.push_back(v);
      placed[v] = 1;
    }
  for (int v = 0; v < V; ++v)
    if (!placed[v]) order.push_back(v);
  std::function<void(int)> search = [&](int pos) {
    if (out.size() >= limit) return;
    while (pos < V && val[order[pos]] >= 0) ++pos;
    if (pos == V) {
      out.push_back(Model{d, {}, val});
      return;
    }
    int v = order[pos];
    int l = var_l[v];
    for (int y = 0; y < dom[l]; ++y) {
      std::size_t mark = trail.size();
      if (assign(l, v - off[l], y) && propagate()) search(pos + 1);
      undo(mark);
      if (out.size() >= limit) return;
    }
  };
  search(0);
  std::sort(out.begin(), out.end());
  return out;
}

int Semantics::gamma(const Model& x, int l, int e) const {
  if (!ar_.canonical) return x.gamma[gamma_off_[x.carrier][l] + e];
  const auto& T = *th_.theory;
  const auto& B = *ar_.base;
  int d = x.carrier;
  int a = th_.arity[T.src(l)], a2 = th_.arity[T.dst(l)];
  int f = B.hom(a, d)[e];
  int c = T.compose(l, th_.L.mor[f]);
  return x.alpha[alpha_off_[d][a2] + T.hom_pos(c)];
}

int Semantics::alpha(const Model& x, int l) const {
  if (!ar_.canonical) throw PreconditionError("alpha is defined for canonical aritations only");
  const auto& T = *th_.theory;
  int b = th_.arity[T.dst(l)];
  int pos = x.alpha[alpha_off_[x.carrier][b] + T.hom_pos(l)];
  return ar_.base->hom(b, x.carrier)[pos];
}

bool Semantics::is_model_hom(const Model& x, const Model& y, int h) const {
  const auto& T = *th_.theory;
  const auto& B = *ar_.base;
  if (B.src(h) != x.carrier || B.dst(h) != y.carrier) return false;
  if (ar_.canonical) {
    int Lh = th_.L.mor[h];
    for (int b = 0; b < B.num_objects(); ++b)
      for (int l : T.hom(th_.L.obj[x.carrier], th_.L.obj[b]))
        if (B.compose(h, alpha(x, l)) != alpha(y, T.compose(l, Lh))) return false;
    return true;
  }
  for (int l = 0; l < T.num_morphisms(); ++l) {
    int a = th_.arity[T.src(l)], a2 = th_.arity[T.dst(l)];
    const auto& ha = ar_.pair[a].map[h];
    const auto& ha2 = ar_.pair[a2].map[h];
    for (int e = 0; e < static_cast<int>(ha.size()); ++e)
      if (ha2[gamma(x, l, e)] != gamma(y, l, ha[e])) return false;
  }
  return true;
}

std::vector<int> Semantics::model_homs(const Model& x, const Model& y) const {
  std::vector<int> r;
  for (int h : ar_.base->hom(x.carrier, y.carrier))
    if (is_model_hom(x, y, h)) r.push_back(h);
  return r;
}

Model Semantics::from_gamma(int d, const std::function<int(int, int)>& g) const {
  const auto& T = *th_.theory;
  const auto& B = *ar_.base;
  Model x;
  x.carrier = d;
  if (ar_.canonical) {
    int nb = B.num_objects();
    x.alpha.assign(alpha_off_[d][nb], -1);
    int id = B.hom_pos(B.identity(d));
    int Ld = th_.L.obj[d];
    for (int b = 0; b < nb; ++b)
      for (int l : T.hom(Ld, th_.L.obj[b])) x.alpha[alpha_off_[d][b] + T.hom_pos(l)] = g(l, id);
  } else {
    x.gamma.assign(gamma_off_[d][T.num_morphisms()], -1);
    for (int l = 0; l < T.num_morphisms(); ++l)
      for (int e = 0; e < gamma_off_[d][l + 1] - gamma_off_[d][l]; ++e) x.gamma[gamma_off_[d][l] + e] = g(l, e);
  }
  return x;
}

Report Semantics::check_model(const Model& x) const {
  Report r;
  const auto& T = *th_.theory;
  const auto& B = *ar_.base;
  const auto& L = th_.L;
  int d = x.carrier;
  if (ar_.canonical) {
    int Ld = L.obj[d];
    if (alpha(x, T.identity(Ld)) != B.identity(d)) r.add("unit", "alpha_d(id) != id");
    for (int b = 0; b < B.num_objects(); ++b)
      for (int l : T.hom(Ld, L.obj[b])) {
        int f = alpha(x, l);
        for (int g : B.in(b))
          if (alpha(x, T.compose(L.mor[g], l)) != B.compose(f, g)) r.add("naturality", T.morphism_name(l));
        for (int k : T.out(L.obj[b]))
          if (alpha(x, T.compose(k, l)) != alpha(x, T.compose(k, L.mor[f]))) r.add("substitution", T.morphism_name(l));
      }
    for (int b = 0; b < B.num_objects(); ++b)
      for (int f : B.hom(b, d))
        if (alpha(x, L.mor[f]) != f) r.add("alpha(Lf) = f", B.morphism_name(f));
    return r;
  }
  const auto& A = *th_.arities;
  for (int f = 0; f < A.num_morphisms(); ++f) {
    const auto& t = ar_.act[f][d];
    for (int e = 0; e < static_cast<int>(t.size()); ++e)
      if (gamma(x, L.mor[f], e) != t[e]) {
        r.add("gamma o L", A.morphism_name(f));
        break;
      }
  }
  for (int j = 0; j < T.num_morphisms(); ++j)
    for (int k : T.out(T.dst(j))) {
      int kj = T.compose(k, j);
      int a = th_.arity[T.src(j)];
      for (int e = 0; e < ar_.size(a, d); ++e)
        if (gamma(x, kj, e) != gamma(x, k, gamma(x, j, e))) {
          r.add("functoriality", T.morphism_name(k) + " o " + T.morphism_name(j));
          break;
        }
    }
  return r;
}

// ---------------------------------------------------------------------------
// Model categories

std::optional<int> ModelCategory::find(const Model& x) const {
  auto it = index_.find(x);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int ModelCategory::morphism(int x, int y, int h) const {
  auto it = mor_index_.find({x, y, h});
  return it == mor_index_.end() ? -1 : it->second;
}

ModelCategory model_category(const SemPtr& sem) { return model_category(sem, sem->enumerate_models()); }

ModelCategory model_category(const SemPtr& sem, std::vector<Model> models) {
  ModelCategory mc;
  mc.sem = sem;
  mc.models = std::move(models);
  const auto& B = *sem->aritation().base;
  const int n = static_cast<int>(mc.models.size());
  const int w = decimal_width(std::max(n - 1, 0));
  FinCategory::Builder b;
  for (int i = 0; i < n; ++i) b.add_object("m" + zpad(i, w));
  std::vector<std::tuple<int, int, int>> data;
  std::map<std::tuple<int, int, int>, int> local;
  int hw = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) hw = std::max(hw, decimal_width(static_cast<long long>(B.hom(mc.models[i].carrier, mc.models[j].carrier).size())));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int h : sem->model_homs(mc.models[i], mc.models[j])) {
        int id = b.add_morphism("h" + zpad(i, w) + "." + zpad(j, w) + ":" + zpad(B.hom_pos(h), hw), i, j);
        data.emplace_back(i, j, h);
        local[{i, j, h}] = id;
        if (i == j && h == B.identity(mc.models[i].carrier)) b.set_identity(i, id);
      }
  std::vector<int> perm;
  mc.cat = b.build(
      [&](int g, int f) {
        auto [i, j, h1] = data[f];
        auto [j2, k, h2] = data[g];
        (void)j2;
        (void)j;
        auto it = local.find({i, k, B.compose(h2, h1)});
        return it == local.end() ? -1 : it->second;
      },
      &perm);
  mc.forget = FinFunctor{mc.cat, sem->aritation().base, std::vector<int>(n), std::vector<int>(data.size())};
  for (int i = 0; i < n; ++i) {
    mc.forget.obj[i] = mc.models[i].carrier;
    mc.index_[mc.models[i]] = i;
  }
  for (std::size_t k = 0; k < data.size(); ++k) {
    mc.forget.mor[perm[k]] = std::get<2>(data[k]);
    mc.mor_index_[data[k]] = perm[k];
  }
  return mc;
}

FinFunctor sem_on_morphism(const TheoryMorphism& p, const ModelCategory& mod_to, const ModelCategory& mod_from) {
  if (!validate_theory_morphism(p).ok()) throw PreconditionError("not a theory morphism");
  FinFunctor F{mod_to.cat, mod_from.cat, {}, {}};
  for (const auto& x : mod_to.models) {
    Model y = mod_from.sem->from_gamma(x.carrier, [&](int l, int e) { return mod_to.sem->gamma(x, p.P.mor[l], e); });
    auto idx = mod_from.find(y);
    if (!idx) throw PreconditionError("sem(P) produced a non-model");
    F.obj.push_back(*idx);
  }
  for (int k = 0; k < mod_to.cat->num_morphisms(); ++k) {
    int r = mod_from.morphism(F.obj[mod_to.cat->src(k)], F.obj[mod_to.cat->dst(k)], mod_to.forget.mor[k]);
    if (r < 0) throw PreconditionError("sem(P) lost a homomorphism");
    F.mor.push_back(r);
  }
  return F;
}

ProductOfModels product_of_models(const Semantics& sem, const Model& x, const Model& y) {
  if (!sem.algebra_form()) throw PreconditionError("product_of_models needs the canonical aritation");
  const auto& B = *sem.aritation().base;
  const auto& T = *sem.theory().theory;
  const auto& L = sem.theory().L;
  int dx = x.carrier, dy = y.carrier;
  for (int p = 0; p < B.num_objects(); ++p)
    for (int p1 : B.hom(p, dx))
      for (int p2 : B.hom(p, dy)) {
        bool universal = true;
        for (int c = 0; c < B.num_objects() && universal; ++c)
          for (int f1 : B.hom(c, dx))
            for (int f2 : B.hom(c, dy)) {
              int count = 0;
              for (int k : B.hom(c, p))
                if (B.compose(p1, k) == f1 && B.compose(p2, k) == f2) ++count;
              if (count != 1) {
                universal = false;
                break;
              }
            }
        if (!universal) continue;
        ProductOfModels r;
        r.pi1 = p1;
        r.pi2 = p2;
        r.model.carrier = p;
        int nb = B.num_objects();
        r.model.alpha.assign(sem.alpha_offset(p, nb), -1);
        for (int b = 0; b < nb; ++b)
          for (int l : T.hom(L.obj[p], L.obj[b])) {
            int f1 = sem.alpha(x, T.compose(l, L.mor[p1]));
            int f2 = sem.alpha(y, T.compose(l, L.mor[p2]));
            for (int k : B.hom(b, p))
              if (B.compose(p1, k) == f1 && B.compose(p2, k) == f2) r.model.alpha[sem.alpha_offset(p, b) + T.hom_pos(l)] = B.hom_pos(k);
          }
        return r;
      }
  throw PreconditionError("product of carriers absent in the base");
}

// ---------------------------------------------------------------------------
// Structure

PresheafFamily presheaf_family(const FinFunctor& u, const Aritation& ar) {
  PresheafFamily fam;
  fam.arities = ar.arities;
  fam.domain = u.src;
  for (const auto& p : ar.pair) fam.presheaf.push_back(compose(p, u));
  for (const auto& a : ar.act) {
    SetNat t;
    for (int o : u.obj) t.comp.push_back(a[o]);
    fam.action.push_back(std::move(t));
  }
  return fam;
}

PresheafFamily power_family(const SetFunctor& u, const FinSetCategory& fs, const CatPtr& arities) {
  PresheafFamily fam;
  fam.arities = arities;
  fam.domain = u.dom;
  const auto& A = *arities;
  for (int a = 0; a < A.num_objects(); ++a) fam.presheaf.push_back(power(u, a));
  const int nm = u.dom->num_objects();
  for (int f = 0; f < A.num_morphisms(); ++f) {
    const Table& phi = fs.under.map[f];  // a′ → a in FinSet
    int a = A.src(f), a2 = A.dst(f);
    SetNat t;
    for (int m = 0; m < nm; ++m) {
      int s = u.size[m];
      Table tab(fam.presheaf[a].size[m]);
      std::vector<int> digits(a);
      for (int x = 0; x < static_cast<int>(tab.size()); ++x) {
        int v = x;
        for (int i = a - 1; i >= 0; --i) {
          digits[i] = v % s;
          v /= s;
        }
        int y = 0;
        for (int j = 0; j < a2; ++j) y = y * s + digits[phi[j]];
        tab[x] = y;
      }
      t.comp.push_back(std::move(tab));
    }
    fam.action.push_back(std::move(t));
  }
  return fam;
}

namespace {

std::vector<int> flatten(const SetNat& t) {
  std::vector<int> v;
  for (const auto& c : t.comp) v.insert(v.end(), c.begin(), c.end());
  return v;
}

Structure::Index build_index(const NatSpace& ns) {
  Structure::Index ix;
  const std::size_t S = ns.solutions.size();
  if (S > 1) {
    std::vector<int> cls(S, 0);
    std::size_t classes = 1;
    for (int v = 0; v < ns.vars && classes < S; ++v) {
      std::map<std::pair<int, int>, int> ids;
      std::vector<int> next(S);
      for (std::size_t i = 0; i < S; ++i) {
        auto key = std::make_pair(cls[i], ns.solutions[i][v]);
        auto it = ids.try_emplace(key, static_cast<int>(ids.size())).first;
        next[i] = it->second;
      }
      if (ids.size() > classes) {
        classes = ids.size();
        cls = std::move(next);
        ix.probe.push_back(v);
      }
    }
  }
  for (std::size_t i = 0; i < S; ++i) {
    std::vector<int> key;
    for (int v : ix.probe) key.push_back(ns.solutions[i][v]);
    ix.table.emplace(std::move(key), static_cast<int>(i));
  }
  return ix;
}

int probe_lookup(const Structure::Index& ix, const std::vector<int>& flat) {
  std::vector<int> key;
  key.reserve(ix.probe.size());
  for (int v : ix.probe) key.push_back(flat[v]);
  auto it = ix.table.find(key);
  return it == ix.table.end() ? -1 : it->second;
}

}  // namespace

int Structure::lookup(int a, int a2, const std::vector<int>& flat) const {
  int n = theory.arities->num_objects();
  int h = a * n + a2;
  int i = probe_lookup(index_[h], flat);
  if (i < 0 || homs[h].solutions[i] != flat) return -1;
  return first[h] + i;
}

const std::vector<int>& Structure::components(int morphism) const {
  auto [h, i] = where_[morphism];
  return homs[h].solutions[i];
}

int Structure::source_arity(int morphism) const { return theory.arity[theory.theory->src(morphism)]; }

Structure structure(const PresheafFamily& fam) {
  Structure s;
  s.family = fam;
  const auto& A = *fam.arities;
  const int n = A.num_objects();
  s.homs.resize(static_cast<std::size_t>(n) * n);
  s.first.resize(static_cast<std::size_t>(n) * n);
  std::size_t widest = 1, total = 0;
  for (int a = 0; a < n; ++a)
    for (int a2 = 0; a2 < n; ++a2) {
      s.homs[a * n + a2] = enumerate_set_nat_flat(fam.presheaf[a], fam.presheaf[a2], kMaxStructureMorphisms - total + 1);
      total += s.homs[a * n + a2].solutions.size();
      if (total > kMaxStructureMorphisms)
        throw TruncationError("structure category would exceed " + std::to_string(kMaxStructureMorphisms) +
                              " morphisms; restrict the arities");
      widest = std::max(widest, s.homs[a * n + a2].solutions.size());
    }
  for (const auto& ns : s.homs) s.index_.push_back(build_index(ns));
  const int wa = decimal_width(std::max(n - 1, 0));
  const int wi = decimal_width(static_cast<long long>(widest) - 1);
  FinCategory::Builder b;
  for (int a = 0; a < n; ++a) b.add_object(A.object_name(a));
  for (int a = 0; a < n; ++a)
    for (int a2 = 0; a2 < n; ++a2) {
      int h = a * n + a2;
      s.first[h] = b.morphisms();
      for (std::size_t i = 0; i < s.homs[h].solutions.size(); ++i) {
        b.add_morphism("g" + zpad(a, wa) + "_" + zpad(a2, wa) + "_" + zpad(static_cast<long long>(i), wi), a, a2);
        s.where_.emplace_back(h, static_cast<int>(i));
      }
    }
  // arity names sort in arity order, so builder order is the final order
  auto find_local = [&](int a, int a2, const std::vector<int>& flat) {
    int h = a * n + a2;
    int i = probe_lookup(s.index_[h], flat);
    return i < 0 ? -1 : s.first[h] + i;
  };
  for (int a = 0; a < n; ++a) {
    std::vector<int> id;
    for (int m = 0; m < fam.domain->num_objects(); ++m)
      for (int x = 0; x < fam.presheaf[a].size[m]; ++x) id.push_back(x);
    int k = find_local(a, a, id);
    if (k < 0) throw PreconditionError("structure: identity transformation missing");
    b.set_identity(a, k);
  }
  std::vector<int> flat;
  std::vector<int> perm;
  auto theory = b.build(
      [&](int g, int f) {
        auto [hf, i] = s.where_[f];
        auto [hg, j] = s.where_[g];
        int a = hf / n, a1 = hf % n, a2 = hg % n;
        const auto& F = s.homs[hf].solutions[i];
        const auto& G = s.homs[hg].solutions[j];
        const auto& offa = s.homs[hf].offset;
        const auto& offb = s.homs[hg].offset;
        flat.assign(F.size(), 0);
        for (int m = 0; m + 1 < static_cast<int>(offa.size()); ++m)
          for (int v = offa[m]; v < offa[m + 1]; ++v) flat[v] = G[offb[m] + F[v]];
        (void)a1;
        return find_local(a, a2, flat);
      },
      &perm);
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<int>(i)) throw PreconditionError("structure: unexpected morphism order");
  FinFunctor L{fam.arities, theory, std::vector<int>(n), std::vector<int>(A.num_morphisms())};
  for (int a = 0; a < n; ++a) L.obj[a] = a;
  for (int f = 0; f < A.num_morphisms(); ++f) {
    int k = find_local(A.src(f), A.dst(f), flatten(fam.action[f]));
    if (k < 0) throw PreconditionError("structure: arity action is not natural");
    L.mor[f] = k;
  }
  s.theory = make_proto_theory(L);
  return s;
}

Structure structure(const FinFunctor& u, const Aritation& ar) { return structure(presheaf_family(u, ar)); }

FinFunctor structure_on_morphism(const Structure& su, const Structure& suq, const FinFunctor& q) {
  const auto& T = *su.theory.theory;
  const int n = su.theory.arities->num_objects();
  FinFunctor F{su.theory.theory, suq.theory.theory, std::vector<int>(n), {}};
  for (int a = 0; a < n; ++a) F.obj[a] = a;
  for (int k = 0; k < T.num_morphisms(); ++k) {
    auto [h, i] = su.where_[k];
    int a = h / n, a2 = h % n;
    const auto& comp = su.homs[h].solutions[i];
    const auto& off = su.homs[h].offset;
    std::vector<int> flat;
    for (int o : q.obj) flat.insert(flat.end(), comp.begin() + off[o], comp.begin() + off[o + 1]);
    int r = suq.lookup(a, a2, flat);
    if (r < 0) throw PreconditionError("str(Q): whiskered transformation missing");
    F.mor.push_back(r);
  }
  return F;
}

FinFunctor psi(const ModelCategory& mod, const FinFunctor& r, const Structure& s, const FinFunctor& u) {
  if (!(compose(mod.forget, r) == u)) throw PreconditionError("psi: R does not lie over U");
  const auto& sem = *mod.sem;
  const auto& th = sem.theory();
  const auto& T = *th.theory;
  FinFunctor P{th.theory, s.theory.theory, {}, {}};
  for (int o = 0; o < T.num_objects(); ++o) P.obj.push_back(th.arity[o]);
  std::vector<int> flat;
  for (int l = 0; l < T.num_morphisms(); ++l) {
    int a = th.arity[T.src(l)], a2 = th.arity[T.dst(l)];
    flat.clear();
    for (int m = 0; m < static_cast<int>(r.obj.size()); ++m) {
      const Model& x = mod.models[r.obj[m]];
      for (int e = 0; e < s.family.presheaf[a].size[m]; ++e) flat.push_back(sem.gamma(x, l, e));
    }
    int k = s.lookup(a, a2, flat);
    if (k < 0) throw PreconditionError("psi: components are not natural");
    P.mor.push_back(k);
  }
  return P;
}

FinFunctor theta(const ModelCategory& mod, const FinFunctor& sf, const Structure& s, const FinFunctor& u) {
  const auto& sem = *mod.sem;
  const auto& th = sem.theory();
  if (!(compose(sf, th.L) == s.theory.L)) throw PreconditionError("theta: S is not over str(U)");
  const int nm = u.src->num_objects();
  const int n = th.arities->num_objects();
  FinFunctor R{u.src, mod.cat, {}, {}};
  for (int m = 0; m < nm; ++m) {
    Model x = sem.from_gamma(u.obj[m], [&](int l, int e) {
      int k = sf.mor[l];
      auto [h, i] = s.where_[k];
      (void)n;
      return s.homs[h].solutions[i][s.homs[h].offset[m] + e];
    });
    auto idx = mod.find(x);
    if (!idx) throw PreconditionError("theta: component family is not a model");
    R.obj.push_back(*idx);
  }
  for (int k = 0; k < u.src->num_morphisms(); ++k) {
    int h = mod.morphism(R.obj[u.src->src(k)], R.obj[u.src->dst(k)], u.mor[k]);
    if (h < 0) throw PreconditionError("theta: image of a morphism is not a homomorphism");
    R.mor.push_back(h);
  }
  return R;
}

std::vector<FinFunctor> functors_over(const ModelCategory& mod, const FinFunctor& u, std::size_t limit) {
  const auto& M = *u.src;
  const int nm = M.num_objects();
  std::vector<std::vector<int>> cand(nm);
  for (int m = 0; m < nm; ++m)
    for (std::size_t i = 0; i < mod.models.size(); ++i)
      if (mod.models[i].carrier == u.obj[m]) cand[m].push_back(static_cast<int>(i));
  std::vector<std::vector<int>> check(nm);
  for (int k = 0; k < M.num_morphisms(); ++k) check[std::max(M.src(k), M.dst(k))].push_back(k);
  std::vector<FinFunctor> out;
  std::vector<int> obj(nm, -1);
  std::function<void(int)> dfs = [&](int m) {
    if (out.size() >= limit) return;
    if (m == nm) {
      FinFunctor R{u.src, mod.cat, obj, {}};
      for (int k = 0; k < M.num_morphisms(); ++k) R.mor.push_back(mod.morphism(obj[M.src(k)], obj[M.dst(k)], u.mor[k]));
      out.push_back(std::move(R));
      return;
    }
    for (int c : cand[m]) {
      obj[m] = c;
      bool ok = true;
      for (int k : check[m])
        if (mod.morphism(obj[M.src(k)], obj[M.dst(k)], u.mor[k]) < 0) {
          ok = false;
          break;
        }
      if (ok) dfs(m + 1);
    }
    obj[m] = -1;
  };
  dfs(0);
  return out;
}

Counit counit(const SemPtr& sem) {
  Counit c;
  c.mod = model_category(sem);
  c.str = structure(c.mod.forget, sem->aritation());
  FinFunctor P = psi(c.mod, identity_functor(c.mod.cat), c.str, c.mod.forget);
  c.E = TheoryMorphism{sem->theory(), c.str.theory, P};
  return c;
}

ProtoTheory monoid_point_prototheory(int n, const std::vector<int>& mul, int unit, const std::vector<std::string>& names) {
  auto A = terminal_category();
  auto T = monoid_category(n, mul, unit, names);
  FinFunctor L{A, T, {0}, {T->identity(0)}};
  return make_proto_theory(L);
}

}  // namespace protocat
