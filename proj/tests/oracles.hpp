#pragma once

// Brute-force counts used to cross-check the library. Nothing here calls library algorithms;
// inputs are plain tables or the formula-level monad interface.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "protocat/fincat.hpp"
#include "protocat/monads.hpp"

namespace oracle {

inline long long ipow(long long b, long long e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Odometer over {0..base-1}^len; returns false after the last tuple.
inline bool next_tuple(std::vector<int>& v, int base) {
  for (std::size_t i = v.size(); i-- > 0;) {
    if (++v[i] < base) return true;
    v[i] = 0;
  }
  return false;
}

// Monoids of order n up to isomorphism. Every monoid is isomorphic to one with unit 0.
inline int monoids_up_to_iso(int n) {
  if (n == 1) return 1;
  std::set<std::vector<int>> seen;
  std::vector<int> perm(n);
  auto table = [&](const std::vector<int>& f) {
    std::vector<int> t(n * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        t[a * n + b] = a == 0 ? b : b == 0 ? a : f[(a - 1) * (n - 1) + (b - 1)];
    return t;
  };
  std::vector<int> f((n - 1) * (n - 1), 0);
  do {
    auto t = table(f);
    bool assoc = true;
    for (int a = 0; a < n && assoc; ++a)
      for (int b = 0; b < n && assoc; ++b)
        for (int c = 0; c < n && assoc; ++c)
          assoc = t[t[a * n + b] * n + c] == t[a * n + t[b * n + c]];
    if (!assoc) continue;
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best;
    do {
      std::vector<int> u(n * n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) u[perm[a] * n + perm[b]] = perm[t[a * n + b]];
      if (best.empty() || u < best) best = u;
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    seen.insert(best);
  } while (next_tuple(f, n));
  return static_cast<int>(seen.size());
}

// Group structures (e, inverse, multiplication) on {0..n-1}.
inline int labelled_groups(int n) {
  if (n == 0) return 0;
  int count = 0;
  std::vector<int> m(n * n, 0);
  do {
    bool assoc = true;
    for (int a = 0; a < n && assoc; ++a)
      for (int b = 0; b < n && assoc; ++b)
        for (int c = 0; c < n && assoc; ++c) assoc = m[m[a * n + b] * n + c] == m[a * n + m[b * n + c]];
    if (!assoc) continue;
    for (int e = 0; e < n; ++e) {
      bool unit = true;
      for (int a = 0; a < n && unit; ++a) unit = m[e * n + a] == a && m[a * n + e] == a;
      if (!unit) continue;
      // inverses are unique when they exist, so count the invertible tables once
      bool inv = true;
      for (int a = 0; a < n && inv; ++a) {
        bool found = false;
        for (int b = 0; b < n && !found; ++b) found = m[a * n + b] == e;
        inv = found;
      }
      count += inv;
    }
  } while (next_tuple(m, n));
  return count;
}

// Functors C → D by trying every object map and every morphism assignment.
inline long long functors(const protocat::FinCategory& c, const protocat::FinCategory& d) {
  const int n = c.num_objects(), m = c.num_morphisms();
  long long count = 0;
  std::vector<int> obj(n, 0);
  if (n == 0) return 1;
  if (d.num_objects() == 0) return 0;
  do {
    std::vector<int> mor(m, -1);
    std::function<void(int)> go = [&](int f) {
      if (f == m) {
        for (int g = 0; g < m; ++g)
          for (int h = 0; h < m; ++h) {
            int gh = c.compose(g, h);
            if (gh >= 0 && d.compose(mor[g], mor[h]) != mor[gh]) return;
          }
        ++count;
        return;
      }
      int a = obj[c.src(f)], b = obj[c.dst(f)];
      for (int k = 0; k < d.num_morphisms(); ++k) {
        if (d.src(k) != a || d.dst(k) != b) continue;
        if (c.is_identity(f) && k != d.identity(a)) continue;
        mor[f] = k;
        go(f + 1);
      }
    };
    go(0);
  } while (next_tuple(obj, d.num_objects()));
  return count;
}

// Eilenberg-Moore algebras of a set monad on carriers 0..bound, and their homomorphisms.
struct AlgebraCount {
  long long algebras = 0, homs = 0;
};

inline AlgebraCount em_algebras(const protocat::SetMonad& t, int bound) {
  std::vector<std::pair<int, std::vector<int>>> algs;
  for (int n = 0; n <= bound; ++n) {
    const int tn = t.size(n);
    auto eta = t.unit(n);
    auto mu = t.mult(n);
    std::vector<int> a(tn, 0);
    if (n == 0 && tn > 0) continue;
    do {
      bool ok = true;
      for (int x = 0; x < n && ok; ++x) ok = a[eta[x]] == x;
      if (ok) {
        auto ta = t.fmap(tn, n, a);
        for (int z = 0; z < t.size(tn) && ok; ++z) ok = a[mu[z]] == a[ta[z]];
      }
      if (ok) algs.emplace_back(n, a);
    } while (tn > 0 && next_tuple(a, n));
  }
  AlgebraCount out;
  out.algebras = static_cast<long long>(algs.size());
  for (const auto& [x, ax] : algs)
    for (const auto& [y, ay] : algs) {
      if (x > 0 && y == 0) continue;
      std::vector<int> h(x, 0);
      do {
        auto th = t.fmap(x, y, h);
        bool ok = true;
        for (int z = 0; z < t.size(x) && ok; ++z) ok = h[ax[z]] == ay[th[z]];
        out.homs += ok;
      } while (x > 0 && next_tuple(h, y));
    }
  return out;
}

// Reflexive, antisymmetric, transitive relations on {0..n-1}.
inline std::vector<std::vector<char>> posets(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y) pairs.emplace_back(x, y);
  std::vector<std::vector<char>> out;
  for (long long mask = 0; mask < (1LL << pairs.size()); ++mask) {
    std::vector<char> r(n * n, 0);
    for (int x = 0; x < n; ++x) r[x * n + x] = 1;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1) r[pairs[i].first * n + pairs[i].second] = 1;
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      for (int y = 0; y < n && ok; ++y) {
        if (x != y && r[x * n + y] && r[y * n + x]) ok = false;
        for (int z = 0; z < n && ok; ++z)
          if (r[x * n + y] && r[y * n + z] && !r[x * n + z]) ok = false;
      }
    if (ok) out.push_back(r);
  }
  return out;
}

// Subsets of a group table closed under multiplication and conjugation, identity 0 included.
inline int normal_subgroups(int n, const std::vector<int>& mul, int unit) {
  int count = 0;
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (!(mask >> unit & 1)) continue;
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b)
        if ((mask >> a & 1) && (mask >> b & 1)) ok = mask >> mul[a * n + b] & 1;
    for (int g = 0; g < n && ok; ++g) {
      int gi = 0;
      while (mul[g * n + gi] != unit) ++gi;
      for (int a = 0; a < n && ok; ++a)
        if (mask >> a & 1) ok = mask >> mul[mul[g * n + a] * n + gi] & 1;
    }
    count += ok;
  }
  return count;
}

}  // namespace oracle
