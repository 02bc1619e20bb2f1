#include "protocat/fincat.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <unordered_map>

namespace protocat {

std::string zpad(long long v, int width) {
  std::string s = std::to_string(v);
  if (static_cast<int>(s.size()) < width) s.insert(0, static_cast<std::size_t>(width) - s.size(), '0');
  return s;
}

int decimal_width(long long v) {
  int w = 1;
  while (v >= 10) {
    v /= 10;
    ++w;
  }
  return w;
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (const auto& v : other.violations) violations.push_back({v.law, prefix + v.detail});
}

// ---------------------------------------------------------------------------
// Builder

int FinCategory::Builder::add_object(std::string name) {
  obj_names_.push_back(std::move(name));
  ident_.push_back(-1);
  return static_cast<int>(obj_names_.size()) - 1;
}

int FinCategory::Builder::add_morphism(std::string name, int src, int dst) {
  mor_names_.push_back(std::move(name));
  src_.push_back(src);
  dst_.push_back(dst);
  return static_cast<int>(mor_names_.size()) - 1;
}

void FinCategory::Builder::set_identity(int obj, int mor) { ident_[obj] = mor; }

void FinCategory::Builder::set_compose(int g, int f, int gf) { explicit_.emplace_back(g, f, gf); }

std::shared_ptr<const FinCategory> FinCategory::Builder::build(const std::function<int(int, int)>& composer,
                                                               std::vector<int>* perm) const {
  const int n = objects(), m = morphisms();
  std::vector<int> oord(n), mord(m);
  std::iota(oord.begin(), oord.end(), 0);
  std::iota(mord.begin(), mord.end(), 0);
  std::sort(oord.begin(), oord.end(), [&](int a, int b) { return obj_names_[a] < obj_names_[b]; });
  std::sort(mord.begin(), mord.end(), [&](int a, int b) { return mor_names_[a] < mor_names_[b]; });
  for (int i = 1; i < n; ++i)
    if (obj_names_[oord[i]] == obj_names_[oord[i - 1]]) throw InputError("duplicate object name '" + obj_names_[oord[i]] + "'");
  for (int i = 1; i < m; ++i)
    if (mor_names_[mord[i]] == mor_names_[mord[i - 1]])
      throw InputError("duplicate morphism name '" + mor_names_[mord[i]] + "'");
  std::vector<int> onew(n), mnew(m);
  for (int i = 0; i < n; ++i) onew[oord[i]] = i;
  for (int i = 0; i < m; ++i) mnew[mord[i]] = i;

  auto c = std::make_shared<FinCategory>();
  c->n_ = n;
  c->m_ = m;
  c->obj_names_.resize(n);
  c->mor_names_.resize(m);
  c->src_.resize(m);
  c->dst_.resize(m);
  c->ident_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    c->obj_names_[i] = obj_names_[oord[i]];
    int id = ident_[oord[i]];
    c->ident_[i] = id < 0 ? -1 : mnew[id];
  }
  for (int i = 0; i < m; ++i) {
    int f = mord[i];
    c->mor_names_[i] = mor_names_[f];
    if (src_[f] < 0 || src_[f] >= n || dst_[f] < 0 || dst_[f] >= n)
      throw InputError("morphism '" + mor_names_[f] + "' has an unknown endpoint");
    c->src_[i] = onew[src_[f]];
    c->dst_[i] = onew[dst_[f]];
  }
  c->comp_.assign(static_cast<std::size_t>(m) * m, -1);
  std::unordered_map<long long, int> given;
  for (auto [g, f, gf] : explicit_) {
    if (dst_[f] != src_[g])
      throw InputError("composite entry for non-composable pair '" + mor_names_[g] + "' after '" + mor_names_[f] + "'");
    given[static_cast<long long>(g) * m + f] = gf;
  }
  std::vector<std::vector<int>> bout(n);
  for (int f = 0; f < m; ++f) bout[src_[f]].push_back(f);
  for (int f = 0; f < m; ++f) {
    for (int g : bout[dst_[f]]) {
      int gf = -1;
      auto it = given.find(static_cast<long long>(g) * m + f);
      if (it != given.end())
        gf = it->second;
      else if (composer)
        gf = composer(g, f);
      if (gf >= 0) c->comp_[static_cast<std::size_t>(mnew[g]) * m + mnew[f]] = mnew[gf];
    }
  }
  c->index();
  if (perm) *perm = mnew;
  return c;
}

void FinCategory::index() {
  homs_.assign(static_cast<std::size_t>(n_) * n_, {});
  out_.assign(n_, {});
  in_.assign(n_, {});
  hom_pos_.assign(m_, 0);
  for (int f = 0; f < m_; ++f) {
    auto& h = homs_[static_cast<std::size_t>(src_[f]) * n_ + dst_[f]];
    hom_pos_[f] = static_cast<int>(h.size());
    h.push_back(f);
    out_[src_[f]].push_back(f);
    in_[dst_[f]].push_back(f);
  }
}

std::optional<int> FinCategory::find_object(std::string_view name) const {
  auto it = std::lower_bound(obj_names_.begin(), obj_names_.end(), name,
                             [](const std::string& a, std::string_view b) { return std::string_view(a) < b; });
  if (it == obj_names_.end() || *it != name) return std::nullopt;
  return static_cast<int>(it - obj_names_.begin());
}

std::optional<int> FinCategory::find_morphism(std::string_view name) const {
  auto it = std::lower_bound(mor_names_.begin(), mor_names_.end(), name,
                             [](const std::string& a, std::string_view b) { return std::string_view(a) < b; });
  if (it == mor_names_.end() || *it != name) return std::nullopt;
  return static_cast<int>(it - mor_names_.begin());
}

int FinCategory::object(std::string_view name) const {
  auto r = find_object(name);
  if (!r) throw InputError("unknown object '" + std::string(name) + "'");
  return *r;
}

int FinCategory::morphism(std::string_view name) const {
  auto r = find_morphism(name);
  if (!r) throw InputError("unknown morphism '" + std::string(name) + "'");
  return *r;
}

std::shared_ptr<const FinCategory> FinCategory::opposite() const {
  auto c = std::make_shared<FinCategory>(*this);
  std::swap(c->src_, c->dst_);
  for (int g = 0; g < m_; ++g)
    for (int f = 0; f < m_; ++f) c->comp_[static_cast<std::size_t>(g) * m_ + f] = comp_[static_cast<std::size_t>(f) * m_ + g];
  c->index();
  return c;
}

bool FinCategory::operator==(const FinCategory& o) const {
  return n_ == o.n_ && m_ == o.m_ && obj_names_ == o.obj_names_ && mor_names_ == o.mor_names_ && src_ == o.src_ &&
         dst_ == o.dst_ && ident_ == o.ident_ && comp_ == o.comp_;
}

bool same_category(const CatPtr& a, const CatPtr& b) { return a == b || (a && b && *a == *b); }

Report validate_category(const FinCategory& c) {
  Report r;
  constexpr std::size_t cap = 100;
  auto full = [&] { return r.violations.size() >= cap; };
  const int n = c.num_objects(), m = c.num_morphisms();
  for (int a = 0; a < n; ++a) {
    int id = c.identity(a);
    if (id < 0 || id >= m || c.src(id) != a || c.dst(id) != a) r.add("identity", "object " + c.object_name(a) + " has no valid identity");
  }
  for (int f = 0; f < m && !full(); ++f)
    for (int g : c.out(c.dst(f))) {
      int gf = c.compose(g, f);
      if (gf < 0)
        r.add("closure", c.morphism_name(g) + " o " + c.morphism_name(f) + " undefined");
      else if (c.src(gf) != c.src(f) || c.dst(gf) != c.dst(g))
        r.add("typing", c.morphism_name(g) + " o " + c.morphism_name(f) + " = " + c.morphism_name(gf) + " has wrong endpoints");
    }
  if (!r.ok()) return r;
  for (int f = 0; f < m; ++f) {
    if (c.compose(c.identity(c.dst(f)), f) != f) r.add("left unit", c.morphism_name(f));
    if (c.compose(f, c.identity(c.src(f))) != f) r.add("right unit", c.morphism_name(f));
  }
  for (int f = 0; f < m && !full(); ++f)
    for (int g : c.out(c.dst(f))) {
      int gf = c.compose(g, f);
      for (int h : c.out(c.dst(g))) {
        if (c.compose(h, gf) != c.compose(c.compose(h, g), f)) {
          r.add("associativity", "(" + c.morphism_name(h) + ", " + c.morphism_name(g) + ", " + c.morphism_name(f) + ")");
          if (full()) return r;
        }
      }
    }
  return r;
}

// ---------------------------------------------------------------------------
// Stock categories

CatPtr empty_category() { return FinCategory::Builder().build(); }

CatPtr terminal_category() { return discrete_category(1); }

CatPtr discrete_category(int n) {
  FinCategory::Builder b;
  int w = decimal_width(std::max(n - 1, 0));
  for (int i = 0; i < n; ++i) {
    int o = b.add_object(n == 1 ? "*" : zpad(i, w));
    b.set_identity(o, b.add_morphism("id_" + (n == 1 ? std::string("*") : zpad(i, w)), o, o));
  }
  return b.build([](int g, int) { return g; });
}

CatPtr poset_category(int n, const std::function<bool(int, int)>& leq, const std::vector<std::string>& names) {
  FinCategory::Builder b;
  int w = decimal_width(std::max(n - 1, 0));
  std::vector<std::string> nm(n);
  for (int i = 0; i < n; ++i) nm[i] = names.empty() ? zpad(i, w) : names[i];
  for (int i = 0; i < n; ++i) b.add_object(nm[i]);
  std::vector<int> arrow(static_cast<std::size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i == j || leq(i, j)) arrow[i * n + j] = b.add_morphism(nm[i] + "_" + nm[j], i, j);
  for (int i = 0; i < n; ++i) b.set_identity(i, arrow[i * n + i]);
  return b.build([&](int g, int f) { return arrow[b.src(f) * n + b.dst(g)]; });
}

CatPtr chain_category(int n) {
  return poset_category(n, [](int i, int j) { return i <= j; });
}

CatPtr monoid_category(int n, const std::vector<int>& mul, int unit, const std::vector<std::string>& names) {
  FinCategory::Builder b;
  int o = b.add_object("*");
  int w = decimal_width(std::max(n - 1, 0));
  for (int i = 0; i < n; ++i) b.add_morphism(names.empty() ? "m" + zpad(i, w) : names[i], o, o);
  b.set_identity(o, unit);
  return b.build([&](int g, int f) { return mul[g * n + f]; });
}

CatPtr full_subcategory(const FinCategory& c, const std::vector<int>& objects) {
  FinCategory::Builder b;
  std::vector<int> onew(c.num_objects(), -1), mnew(c.num_morphisms(), -1), mold;
  for (int a : objects) onew[a] = b.add_object(c.object_name(a));
  for (int f = 0; f < c.num_morphisms(); ++f)
    if (onew[c.src(f)] >= 0 && onew[c.dst(f)] >= 0) {
      mnew[f] = b.add_morphism(c.morphism_name(f), onew[c.src(f)], onew[c.dst(f)]);
      mold.push_back(f);
    }
  for (int a : objects) b.set_identity(onew[a], mnew[c.identity(a)]);
  return b.build([&](int g, int f) {
    int gf = c.compose(mold[g], mold[f]);
    return gf < 0 ? -1 : mnew[gf];
  });
}

// ---------------------------------------------------------------------------
// Functors

Report validate_functor(const FinFunctor& F) {
  Report r;
  const auto& A = *F.src;
  const auto& B = *F.dst;
  if (static_cast<int>(F.obj.size()) != A.num_objects() || static_cast<int>(F.mor.size()) != A.num_morphisms()) {
    r.add("shape", "functor tables do not match the source category");
    return r;
  }
  for (int a = 0; a < A.num_objects(); ++a)
    if (F.obj[a] < 0 || F.obj[a] >= B.num_objects()) r.add("objects", "image of " + A.object_name(a) + " out of range");
  if (!r.ok()) return r;
  for (int f = 0; f < A.num_morphisms(); ++f) {
    int k = F.mor[f];
    if (k < 0 || k >= B.num_morphisms() || B.src(k) != F.obj[A.src(f)] || B.dst(k) != F.obj[A.dst(f)])
      r.add("typing", "image of " + A.morphism_name(f) + " has wrong endpoints");
  }
  if (!r.ok()) return r;
  for (int a = 0; a < A.num_objects(); ++a)
    if (F.mor[A.identity(a)] != B.identity(F.obj[a])) r.add("identity", A.object_name(a));
  for (int f = 0; f < A.num_morphisms(); ++f)
    for (int g : A.out(A.dst(f)))
      if (F.mor[A.compose(g, f)] != B.compose(F.mor[g], F.mor[f]))
        r.add("composition", A.morphism_name(g) + " o " + A.morphism_name(f));
  return r;
}

FinFunctor identity_functor(const CatPtr& c) {
  FinFunctor F{c, c, {}, {}};
  F.obj.resize(c->num_objects());
  F.mor.resize(c->num_morphisms());
  std::iota(F.obj.begin(), F.obj.end(), 0);
  std::iota(F.mor.begin(), F.mor.end(), 0);
  return F;
}

FinFunctor compose(const FinFunctor& g, const FinFunctor& f) {
  FinFunctor h{f.src, g.dst, {}, {}};
  h.obj.resize(f.obj.size());
  h.mor.resize(f.mor.size());
  for (std::size_t i = 0; i < f.obj.size(); ++i) h.obj[i] = g.obj[f.obj[i]];
  for (std::size_t i = 0; i < f.mor.size(); ++i) h.mor[i] = g.mor[f.mor[i]];
  return h;
}

FinFunctor opposite_functor(const FinFunctor& f, const CatPtr& src_op, const CatPtr& dst_op) {
  return FinFunctor{src_op, dst_op, f.obj, f.mor};
}

FinFunctor constant_functor(const CatPtr& src, const CatPtr& dst, int object) {
  FinFunctor F{src, dst, std::vector<int>(src->num_objects(), object), {}};
  F.mor.assign(src->num_morphisms(), dst->identity(object));
  return F;
}

FinFunctor inclusion_functor(const CatPtr& sub, const CatPtr& whole) {
  FinFunctor F{sub, whole, {}, {}};
  for (int a = 0; a < sub->num_objects(); ++a) F.obj.push_back(whole->object(sub->object_name(a)));
  for (int f = 0; f < sub->num_morphisms(); ++f) F.mor.push_back(whole->morphism(sub->morphism_name(f)));
  return F;
}

bool is_bijective_on_objects(const FinFunctor& f) {
  if (f.src->num_objects() != f.dst->num_objects()) return false;
  std::vector<char> seen(f.dst->num_objects(), 0);
  for (int o : f.obj) {
    if (seen[o]) return false;
    seen[o] = 1;
  }
  return true;
}

bool is_full_and_faithful(const FinFunctor& f) {
  const auto& A = *f.src;
  const auto& B = *f.dst;
  for (int a = 0; a < A.num_objects(); ++a)
    for (int b = 0; b < A.num_objects(); ++b) {
      const auto& h = A.hom(a, b);
      const auto& k = B.hom(f.obj[a], f.obj[b]);
      if (h.size() != k.size()) return false;
      std::vector<char> hit(k.size(), 0);
      for (int g : h) {
        int p = B.hom_pos(f.mor[g]);
        if (hit[p]) return false;
        hit[p] = 1;
      }
    }
  return true;
}

std::vector<FinFunctor> enumerate_functors(const CatPtr& a, const CatPtr& b, std::size_t limit) {
  const auto& A = *a;
  const auto& B = *b;
  const int n = A.num_objects(), m = A.num_morphisms();
  std::vector<FinFunctor> out;
  std::vector<int> obj(n, -1), mor(m, -1);
  // composition triples touching each morphism
  std::vector<std::vector<std::array<int, 3>>> touch(m);
  for (int f = 0; f < m; ++f)
    for (int g : A.out(A.dst(f))) {
      int gf = A.compose(g, f);
      std::array<int, 3> t{g, f, gf};
      touch[f].push_back(t);
      if (g != f) touch[g].push_back(t);
      if (gf != f && gf != g) touch[gf].push_back(t);
    }
  std::function<void(int)> mor_dfs = [&](int f) {
    if (out.size() >= limit) return;
    if (f == m) {
      out.push_back(FinFunctor{a, b, obj, mor});
      return;
    }
    const auto& cand = B.hom(obj[A.src(f)], obj[A.dst(f)]);
    bool ident = A.is_identity(f);
    for (int k : cand) {
      if (ident && k != B.identity(obj[A.src(f)])) continue;
      mor[f] = k;
      bool ok = true;
      for (const auto& t : touch[f]) {
        if (mor[t[0]] < 0 || mor[t[1]] < 0 || mor[t[2]] < 0) continue;
        if (B.compose(mor[t[0]], mor[t[1]]) != mor[t[2]]) {
          ok = false;
          break;
        }
      }
      if (ok) mor_dfs(f + 1);
      mor[f] = -1;
      if (out.size() >= limit) return;
    }
  };
  std::function<void(int)> obj_dfs = [&](int i) {
    if (out.size() >= limit) return;
    if (i == n) {
      mor_dfs(0);
      return;
    }
    for (int o = 0; o < B.num_objects(); ++o) {
      obj[i] = o;
      bool ok = true;
      for (int j = 0; j <= i && ok; ++j) {
        if (!A.hom(i, j).empty() && B.hom(o, obj[j]).empty()) ok = false;
        if (!A.hom(j, i).empty() && B.hom(obj[j], o).empty()) ok = false;
      }
      if (ok) obj_dfs(i + 1);
    }
    obj[i] = -1;
  };
  obj_dfs(0);
  return out;
}

// ---------------------------------------------------------------------------
// Natural transformations between FinFunctors

Report validate_nat(const NatTransformation& t) {
  Report r;
  const auto& A = *t.src.src;
  const auto& B = *t.src.dst;
  for (int a = 0; a < A.num_objects(); ++a) {
    int c = t.comp[a];
    if (c < 0 || c >= B.num_morphisms() || B.src(c) != t.src.obj[a] || B.dst(c) != t.dst.obj[a])
      r.add("typing", "component at " + A.object_name(a));
  }
  if (!r.ok()) return r;
  for (int f = 0; f < A.num_morphisms(); ++f)
    if (B.compose(t.dst.mor[f], t.comp[A.src(f)]) != B.compose(t.comp[A.dst(f)], t.src.mor[f]))
      r.add("naturality", A.morphism_name(f));
  return r;
}

std::vector<NatTransformation> enumerate_nat_transformations(const FinFunctor& F, const FinFunctor& G) {
  const auto& A = *F.src;
  const auto& B = *F.dst;
  const int n = A.num_objects();
  std::vector<std::vector<int>> check(n);
  for (int f = 0; f < A.num_morphisms(); ++f) check[std::max(A.src(f), A.dst(f))].push_back(f);
  std::vector<NatTransformation> out;
  std::vector<int> comp(n, -1);
  std::function<void(int)> dfs = [&](int a) {
    if (a == n) {
      out.push_back(NatTransformation{F, G, comp});
      return;
    }
    for (int k : B.hom(F.obj[a], G.obj[a])) {
      comp[a] = k;
      bool ok = true;
      for (int f : check[a])
        if (B.compose(G.mor[f], comp[A.src(f)]) != B.compose(comp[A.dst(f)], F.mor[f])) {
          ok = false;
          break;
        }
      if (ok) dfs(a + 1);
    }
    comp[a] = -1;
  };
  dfs(0);
  return out;
}

// ---------------------------------------------------------------------------
// Set-valued functors

Report validate_set_functor(const SetFunctor& F) {
  Report r;
  const auto& C = *F.dom;
  if (static_cast<int>(F.size.size()) != C.num_objects() || static_cast<int>(F.map.size()) != C.num_morphisms()) {
    r.add("shape", "set functor tables do not match its domain");
    return r;
  }
  for (int f = 0; f < C.num_morphisms(); ++f) {
    const auto& t = F.map[f];
    bool bad = static_cast<int>(t.size()) != F.size[C.src(f)];
    for (int v : t)
      if (v < 0 || v >= F.size[C.dst(f)]) bad = true;
    if (bad) r.add("typing", "function table of " + C.morphism_name(f));
  }
  if (!r.ok()) return r;
  for (int a = 0; a < C.num_objects(); ++a) {
    const auto& t = F.map[C.identity(a)];
    for (int x = 0; x < F.size[a]; ++x)
      if (t[x] != x) {
        r.add("identity", C.object_name(a));
        break;
      }
  }
  for (int f = 0; f < C.num_morphisms(); ++f)
    for (int g : C.out(C.dst(f))) {
      const auto& gf = F.map[C.compose(g, f)];
      for (int x = 0; x < F.size[C.src(f)]; ++x)
        if (gf[x] != F.map[g][F.map[f][x]]) {
          r.add("composition", C.morphism_name(g) + " o " + C.morphism_name(f));
          break;
        }
    }
  return r;
}

SetFunctor compose(const SetFunctor& u, const FinFunctor& q) {
  SetFunctor r{q.src, {}, {}};
  for (int o : q.obj) r.size.push_back(u.size[o]);
  for (int k : q.mor) r.map.push_back(u.map[k]);
  return r;
}

SetFunctor power(const SetFunctor& u, int n) {
  SetFunctor r{u.dom, {}, {}};
  const auto& C = *u.dom;
  for (int a = 0; a < C.num_objects(); ++a) {
    long long s = 1;
    for (int i = 0; i < n; ++i) s *= u.size[a];
    if (s > 50'000'000) throw PreconditionError("power functor too large");
    r.size.push_back(static_cast<int>(s));
  }
  std::vector<int> digits(n);
  for (int f = 0; f < C.num_morphisms(); ++f) {
    int sa = u.size[C.src(f)], sb = u.size[C.dst(f)];
    Table t(r.size[C.src(f)]);
    for (int x = 0; x < static_cast<int>(t.size()); ++x) {
      int v = x;
      for (int i = n - 1; i >= 0; --i) {
        digits[i] = v % sa;
        v /= sa;
      }
      int y = 0;
      for (int i = 0; i < n; ++i) y = y * sb + u.map[f][digits[i]];
      t[x] = y;
    }
    r.map.push_back(std::move(t));
  }
  return r;
}

SetFunctor hom_functor(const CatPtr& c, int a) {
  SetFunctor r{c, {}, {}};
  const auto& C = *c;
  for (int x = 0; x < C.num_objects(); ++x) r.size.push_back(static_cast<int>(C.hom(a, x).size()));
  for (int f = 0; f < C.num_morphisms(); ++f) {
    Table t;
    for (int g : C.hom(a, C.src(f))) t.push_back(C.hom_pos(C.compose(f, g)));
    r.map.push_back(std::move(t));
  }
  return r;
}

SetFunctor terminal_set_functor(const CatPtr& c) {
  SetFunctor r{c, std::vector<int>(c->num_objects(), 1), {}};
  r.map.assign(c->num_morphisms(), Table{0});
  return r;
}

bool is_natural(const SetFunctor& F, const SetFunctor& G, const SetNat& t) {
  const auto& C = *F.dom;
  if (static_cast<int>(t.comp.size()) != C.num_objects()) return false;
  for (int a = 0; a < C.num_objects(); ++a) {
    if (static_cast<int>(t.comp[a].size()) != F.size[a]) return false;
    for (int v : t.comp[a])
      if (v < 0 || v >= G.size[a]) return false;
  }
  for (int f = 0; f < C.num_morphisms(); ++f) {
    int a = C.src(f), b = C.dst(f);
    for (int x = 0; x < F.size[a]; ++x)
      if (t.comp[b][F.map[f][x]] != G.map[f][t.comp[a][x]]) return false;
  }
  return true;
}

SetNat NatSpace::unflatten(std::size_t i) const {
  SetNat t;
  const auto& s = solutions[i];
  for (std::size_t a = 0; a + 1 < offset.size(); ++a) t.comp.emplace_back(s.begin() + offset[a], s.begin() + offset[a + 1]);
  return t;
}

NatSpace enumerate_set_nat_flat(const SetFunctor& F, const SetFunctor& G, std::size_t limit) {
  const auto& C = *F.dom;
  const int n = C.num_objects();
  NatSpace ns;
  ns.offset.assign(n + 1, 0);
  for (int a = 0; a < n; ++a) ns.offset[a + 1] = ns.offset[a] + F.size[a];
  const int V = ns.offset[n];
  ns.vars = V;
  for (int a = 0; a < n; ++a)
    if (F.size[a] > 0 && G.size[a] == 0) return ns;
  std::vector<int> var_obj(V);
  for (int a = 0; a < n; ++a)
    for (int x = 0; x < F.size[a]; ++x) var_obj[ns.offset[a] + x] = a;
  std::vector<std::vector<int>> arrows(n);
  for (int f = 0; f < C.num_morphisms(); ++f)
    if (!C.is_identity(f)) arrows[C.src(f)].push_back(f);

  // static order: variables whose assignment forces the most others go first
  std::vector<int> reach(V, 0), stamp(V, -1), order(V);
  for (int v = 0; v < V; ++v) {
    int a = var_obj[v], x = v - ns.offset[a];
    for (int f : arrows[a]) {
      int w = ns.offset[C.dst(f)] + F.map[f][x];
      if (stamp[w] != v) {
        stamp[w] = v;
        ++reach[v];
      }
    }
  }
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int p, int q) { return reach[p] > reach[q]; });

  std::vector<int> val(V, -1), trail, queue;
  trail.reserve(V);
  auto assign = [&](int v, int y) {
    if (val[v] < 0) {
      val[v] = y;
      trail.push_back(v);
      queue.push_back(v);
      return true;
    }
    return val[v] == y;
  };
  auto propagate = [&] {
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      int a = var_obj[v], x = v - ns.offset[a], y = val[v];
      for (int f : arrows[a]) {
        int b = C.dst(f);
        if (!assign(ns.offset[b] + F.map[f][x], G.map[f][y])) {
          queue.clear();
          return false;
        }
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
  std::function<void(int)> search = [&](int pos) {
    if (ns.solutions.size() >= limit) return;
    while (pos < V && val[order[pos]] >= 0) ++pos;
    if (pos == V) {
      ns.solutions.push_back(val);
      return;
    }
    int v = order[pos];
    int dom = G.size[var_obj[v]];
    for (int y = 0; y < dom; ++y) {
      std::size_t mark = trail.size();
      if (assign(v, y) && propagate()) search(pos + 1);
      undo(mark);
      if (ns.solutions.size() >= limit) return;
    }
  };
  search(0);
  std::sort(ns.solutions.begin(), ns.solutions.end());
  return ns;
}

std::vector<SetNat> enumerate_set_nat(const SetFunctor& F, const SetFunctor& G, std::size_t limit) {
  NatSpace ns = enumerate_set_nat_flat(F, G, limit);
  std::vector<SetNat> out;
  out.reserve(ns.solutions.size());
  for (std::size_t i = 0; i < ns.solutions.size(); ++i) out.push_back(ns.unflatten(i));
  return out;
}

SetLimit limit_of_finset_diagram(const SetFunctor& D) {
  const auto& J = *D.dom;
  const int n = J.num_objects();
  SetLimit lim;
  std::vector<int> val(n, -1), trail, queue;
  auto assign = [&](int a, int x) {
    if (val[a] < 0) {
      val[a] = x;
      trail.push_back(a);
      queue.push_back(a);
      return true;
    }
    return val[a] == x;
  };
  auto propagate = [&] {
    while (!queue.empty()) {
      int a = queue.back();
      queue.pop_back();
      for (int f : J.out(a))
        if (!assign(J.dst(f), D.map[f][val[a]])) {
          queue.clear();
          return false;
        }
    }
    return true;
  };
  std::function<void(int)> dfs = [&](int a) {
    while (a < n && val[a] >= 0) ++a;
    if (a == n) {
      lim.families.push_back(val);
      return;
    }
    for (int x = 0; x < D.size[a]; ++x) {
      std::size_t mark = trail.size();
      if (assign(a, x) && propagate()) dfs(a + 1);
      while (trail.size() > mark) {
        val[trail.back()] = -1;
        trail.pop_back();
      }
    }
  };
  dfs(0);
  return lim;
}

// ---------------------------------------------------------------------------
// FinSet truncations

int FinSetCategory::code(int y, const Table& t) {
  int c = 0;
  for (int v : t) c = c * y + v;
  return c;
}

int FinSetCategory::morphism(int x, int y, const Table& t) const { return cat->hom(x, y)[code(y, t)]; }

std::string finset_morphism_name(int x, int y, const Table& t, int bound) {
  int w = decimal_width(bound);
  int wv = decimal_width(std::max(bound - 1, 0));
  std::string s = "f" + zpad(x, w) + zpad(y, w) + ":";
  for (int v : t) s += zpad(v, wv);
  return s;
}

FinSetCategory finset_category(int bound) {
  FinCategory::Builder b;
  int w = decimal_width(bound);
  for (int x = 0; x <= bound; ++x) b.add_object(zpad(x, w));
  std::vector<Table> tables;
  std::vector<std::vector<int>> first(bound + 1, std::vector<int>(bound + 1, 0));
  for (int x = 0; x <= bound; ++x)
    for (int y = 0; y <= bound; ++y) {
      long long count = 1;
      for (int i = 0; i < x; ++i) count *= y;
      first[x][y] = static_cast<int>(tables.size());
      for (long long c = 0; c < count; ++c) {
        Table t(x);
        long long v = c;
        for (int i = x - 1; i >= 0; --i) {
          t[i] = static_cast<int>(v % y);
          v /= y;
        }
        int id = b.add_morphism(finset_morphism_name(x, y, t, bound), x, y);
        tables.push_back(t);
        bool ident = x == y;
        for (int i = 0; ident && i < x; ++i) ident = t[i] == i;
        if (ident) b.set_identity(x, id);
      }
    }
  std::vector<int> perm;
  auto cat = b.build(
      [&](int g, int f) {
        const Table& tf = tables[f];
        const Table& tg = tables[g];
        Table h(tf.size());
        for (std::size_t i = 0; i < tf.size(); ++i) h[i] = tg[tf[i]];
        int y = b.dst(g);
        return first[b.src(f)][y] + FinSetCategory::code(y, h);
      },
      &perm);
  FinSetCategory fs;
  fs.bound = bound;
  fs.cat = cat;
  fs.under.dom = cat;
  for (int x = 0; x <= bound; ++x) fs.under.size.push_back(x);
  fs.under.map.resize(cat->num_morphisms());
  for (std::size_t i = 0; i < tables.size(); ++i) fs.under.map[perm[i]] = tables[i];
  return fs;
}

// ---------------------------------------------------------------------------
// Comma categories, factorization, fill-in, transport

CommaCategory comma_category(const FinFunctor& F, int c) {
  const auto& A = *F.src;
  const auto& C = *F.dst;
  FinCategory::Builder b;
  std::vector<std::pair<int, int>> objs;
  std::vector<std::string> names;
  std::vector<std::vector<int>> index_of(A.num_objects());
  for (int a = 0; a < A.num_objects(); ++a)
    for (int phi : C.hom(c, F.obj[a])) {
      names.push_back("(" + A.object_name(a) + "," + C.morphism_name(phi) + ")");
      index_of[a].push_back(b.add_object(names.back()));
      objs.emplace_back(a, phi);
    }
  auto obj_of = [&](int a, int phi) { return index_of[a][C.hom_pos(phi)]; };
  std::vector<int> mor_a;  // A-morphism behind each comma morphism
  std::vector<std::vector<int>> by_src(objs.size(), std::vector<int>(A.num_morphisms(), -1));
  for (std::size_t o = 0; o < objs.size(); ++o) {
    auto [a, phi] = objs[o];
    for (int g : A.out(a)) {
      int t = obj_of(A.dst(g), C.compose(F.mor[g], phi));
      int id = b.add_morphism(A.morphism_name(g) + "@" + names[o], static_cast<int>(o), t);
      by_src[o][g] = id;
      mor_a.push_back(g);
      if (g == A.identity(a)) b.set_identity(static_cast<int>(o), id);
    }
  }
  std::vector<int> perm;
  auto cat = b.build([&](int g, int f) { return by_src[b.src(f)][A.compose(mor_a[g], mor_a[f])]; }, &perm);
  CommaCategory cc;
  cc.cat = cat;
  cc.objects.resize(objs.size());
  std::vector<int> onew(objs.size());
  for (std::size_t o = 0; o < objs.size(); ++o) {
    onew[o] = cat->object(names[o]);
    cc.objects[onew[o]] = objs[o];
  }
  cc.proj = FinFunctor{cat, F.src, std::vector<int>(objs.size()), std::vector<int>(mor_a.size())};
  for (std::size_t o = 0; o < objs.size(); ++o) cc.proj.obj[onew[o]] = objs[o].first;
  for (std::size_t i = 0; i < mor_a.size(); ++i) cc.proj.mor[perm[i]] = mor_a[i];
  return cc;
}

Factorization bo_ff_factorize(const FinFunctor& F) {
  const auto& A = *F.src;
  const auto& B = *F.dst;
  const int n = A.num_objects();
  FinCategory::Builder b;
  for (int a = 0; a < n; ++a) b.add_object(A.object_name(a));
  std::vector<int> under;  // B-morphism of each intermediate morphism
  std::vector<int> first(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int a2 = 0; a2 < n; ++a2) {
      first[a * n + a2] = static_cast<int>(under.size());
      for (int k : B.hom(F.obj[a], F.obj[a2])) {
        int id = b.add_morphism(B.morphism_name(k) + "@" + A.object_name(a) + "," + A.object_name(a2), a, a2);
        under.push_back(k);
        if (a == a2 && k == B.identity(F.obj[a])) b.set_identity(a, id);
      }
    }
  std::vector<int> perm;
  auto mid = b.build(
      [&](int g, int f) {
        int k = B.compose(under[g], under[f]);
        return first[b.src(f) * n + b.dst(g)] + B.hom_pos(k);
      },
      &perm);
  Factorization r;
  r.mid = mid;
  r.e = FinFunctor{F.src, mid, {}, {}};
  r.n = FinFunctor{mid, F.dst, {}, std::vector<int>(under.size())};
  for (int a = 0; a < n; ++a) r.e.obj.push_back(mid->object(A.object_name(a)));
  for (int a = 0; a < n; ++a) r.n.obj.push_back(F.obj[A.object(mid->object_name(a))]);
  for (std::size_t i = 0; i < under.size(); ++i) r.n.mor[perm[i]] = under[i];
  for (int f = 0; f < A.num_morphisms(); ++f) {
    int a = A.src(f), a2 = A.dst(f);
    r.e.mor.push_back(perm[first[a * n + a2] + B.hom_pos(F.mor[f])]);
  }
  return r;
}

FinFunctor fill_in(const FinFunctor& e, const FinFunctor& n, const FinFunctor& top, const FinFunctor& bottom) {
  if (!is_bijective_on_objects(e)) throw PreconditionError("no fill-in: left map is not bijective on objects");
  if (!is_full_and_faithful(n)) throw PreconditionError("no fill-in: right map is not full and faithful");
  if (!(compose(n, top) == compose(bottom, e))) throw PreconditionError("no fill-in: square does not commute");
  const auto& C = *e.dst;
  const auto& B = *n.src;
  const auto& D = *n.dst;
  FinFunctor h{e.dst, n.src, std::vector<int>(C.num_objects()), std::vector<int>(C.num_morphisms())};
  for (std::size_t a = 0; a < e.obj.size(); ++a) h.obj[e.obj[a]] = top.obj[a];
  for (int g = 0; g < C.num_morphisms(); ++g) {
    int target = bottom.mor[g];
    const auto& cand = B.hom(h.obj[C.src(g)], h.obj[C.dst(g)]);
    int found = -1;
    for (int k : cand)
      if (n.mor[k] == target) found = k;
    if (found < 0) throw PreconditionError("no fill-in: no lift for " + C.morphism_name(g) + " over " + D.morphism_name(target));
    h.mor[g] = found;
  }
  return h;
}

SetFunctor transport_along_iso(const SetFunctor& g, const FinFunctor& l, const SetNat& phi, const SetFunctor& target) {
  if (!is_bijective_on_objects(l)) throw PreconditionError("transport: L is not bijective on objects");
  const auto& A = *l.src;
  const auto& T = *l.dst;
  SetFunctor gl = compose(g, l);
  std::vector<Table> inv(A.num_objects());
  for (int a = 0; a < A.num_objects(); ++a) {
    if (static_cast<int>(phi.comp[a].size()) != gl.size[a] || gl.size[a] != target.size[a])
      throw PreconditionError("transport: phi is not invertible at " + A.object_name(a));
    inv[a].assign(target.size[a], -1);
    for (int x = 0; x < gl.size[a]; ++x) {
      int y = phi.comp[a][x];
      if (y < 0 || y >= target.size[a] || inv[a][y] >= 0) throw PreconditionError("transport: phi is not invertible at " + A.object_name(a));
      inv[a][y] = x;
    }
  }
  if (!is_natural(gl, target, phi)) throw PreconditionError("transport: phi is not natural");
  std::vector<int> arity(T.num_objects());
  for (int a = 0; a < A.num_objects(); ++a) arity[l.obj[a]] = a;
  SetFunctor r{l.dst, std::vector<int>(T.num_objects()), std::vector<Table>(T.num_morphisms())};
  for (int o = 0; o < T.num_objects(); ++o) r.size[o] = target.size[arity[o]];
  for (int k = 0; k < T.num_morphisms(); ++k) {
    int a = arity[T.src(k)], a2 = arity[T.dst(k)];
    Table t(target.size[a]);
    for (int y = 0; y < target.size[a]; ++y) t[y] = phi.comp[a2][g.map[k][inv[a][y]]];
    r.map[k] = std::move(t);
  }
  return r;
}

}  // namespace protocat
