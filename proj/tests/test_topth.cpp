#include <doctest.h>

#include "oracles.hpp"
#include "protocat/groupsem.hpp"
#include "protocat/topth.hpp"

using namespace protocat;

namespace {

bool joins_exist(int n, const std::vector<char>& leq) {
  for (int mask = 0; mask < (1 << n); ++mask) {
    int least = 0;
    for (int u = 0; u < n; ++u) {
      bool upper = true;
      for (int x = 0; x < n && upper; ++x)
        if (mask >> x & 1) upper = leq[x * n + u];
      if (!upper) continue;
      bool below_all = true;
      for (int v = 0; v < n && below_all; ++v) {
        bool vu = true;
        for (int x = 0; x < n && vu; ++x)
          if (mask >> x & 1) vu = leq[x * n + v];
        if (vu) below_all = leq[u * n + v];
      }
      least += below_all;
    }
    if (least != 1) return false;
  }
  return true;
}

CatPtr poset_of(int n, const std::vector<char>& leq) {
  return poset_category(n, [&](int x, int y) { return leq[x * n + y] != 0; });
}

}  // namespace

TEST_CASE("finite topologies") {
  auto d = FinTopology::discrete(3);
  auto i = FinTopology::indiscrete(3);
  CHECK(d.is_discrete());
  CHECK(i.is_indiscrete());
  CHECK(d.opens().size() == 8);
  CHECK(i.opens().size() == 2);
  CHECK(validate_opens(3, d.opens()).ok());
  auto s = FinTopology::from_opens(2, {{}, {0}, {0, 1}});
  CHECK(s.opens().size() == 3);
  CHECK(product(s, s).opens().size() == 6);
  CHECK(validate_opens(2, {{}, {0}, {1}}).ok() == false);
  CHECK(is_dense(s, {0}));
  CHECK(!is_dense(s, {1}));
}

TEST_CASE("initial topologies make their maps continuous") {
  auto s = FinTopology::from_opens(2, {{}, {0}, {0, 1}});
  std::vector<std::pair<Table, FinTopology>> maps{{{0, 0, 1}, s}, {{1, 0, 0}, s}};
  auto t = initial_topology(3, maps);
  for (const auto& [f, y] : maps) CHECK(is_continuous(f, t, y));
  CHECK(initial_topology(3, {}).is_indiscrete());
  CHECK(set_t_topology(2, 2).is_discrete());
}

TEST_CASE("poset enumeration") {
  const int frozen[] = {1, 1, 3, 19, 219};
  for (int n = 0; n <= 4; ++n) {
    auto ps = enumerate_posets(n);
    CHECK(ps.size() == oracle::posets(n).size());
    CHECK(static_cast<int>(ps.size()) == frozen[n]);
    for (const auto& p : ps) CHECK(has_all_joins(n, p) == joins_exist(n, p));
  }
}

TEST_CASE("enough subobjects on join-semilattices") {
  int lattices = 0;
  for (int n = 1; n <= 4; ++n)
    for (const auto& p : enumerate_posets(n)) {
      auto e = check_enough_subobjects(poset_of(n, p));
      if (has_all_joins(n, p)) {
        ++lattices;
        CHECK(e.holds);
      }
      if (!e.holds) {
        CHECK(e.object >= 0);
        CHECK(e.witness.size() == static_cast<std::size_t>(n));
      }
    }
  // labelled lattices on 1..4 points: 1 + 2 + 6 + 36
  CHECK(lattices == 45);
}

TEST_CASE("discrete hom-topologies are complete") {
  auto fs = finset_category(2);
  auto ar = canonical_aritation(fs.cat);
  for (const auto& t : {identity_set_monad(), maybe_monad()}) {
    // keep the arities whose free algebra fits in the truncation
    std::vector<int> arities;
    for (int a = 0; a <= 2 && t.size(a) <= 2; ++a) arities.push_back(ar.arities->object(fs.cat->object_name(a)));
    auto l = restrict_top_theory(disc(kleisli(t, fs).theory, ar), arities);
    CHECK(validate_top_theory(l).ok());
    auto c = check_complete(l);
    CHECK(c.report.ok());
    CHECK(c.complete);
  }
}

TEST_CASE("completion is idempotent") {
  auto base = chain_category(2);
  auto ar = canonical_aritation(base);
  auto l = disc(identity_theory(ar.arities), ar);
  auto c1 = completion(l);
  auto c2 = completion(c1.cplt.theory);
  CHECK(c2.complete);
  CHECK(c1.cplt.theory.theory.theory->num_morphisms() == c2.cplt.theory.theory.theory->num_morphisms());
}
