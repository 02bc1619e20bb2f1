#include <doctest.h>

#include "oracles.hpp"
#include "protocat/groupsem.hpp"

using namespace protocat;

namespace {

FinMonoid klein() { return product_monoid(cyclic_group(2), cyclic_group(2)); }

std::vector<std::pair<const char*, FinMonoid>> small_groups() {
  return {{"trivial", trivial_monoid()}, {"z2", cyclic_group(2)}, {"z3", cyclic_group(3)},
          {"z4", cyclic_group(4)},       {"v4", klein()},          {"z6", cyclic_group(6)}};
}

}  // namespace

TEST_CASE("monoid enumeration") {
  const int frozen[] = {0, 1, 2, 7, 35};
  for (int n = 1; n <= 4; ++n) {
    auto ms = enumerate_monoids(n);
    CHECK(static_cast<int>(ms.size()) == oracle::monoids_up_to_iso(n));
    CHECK(static_cast<int>(ms.size()) == frozen[n]);
    for (const auto& m : ms) CHECK(validate_monoid(m).ok());
    for (std::size_t i = 0; i < ms.size(); ++i)
      for (std::size_t j = i + 1; j < ms.size(); ++j) CHECK(!monoid_isomorphism(ms[i], ms[j]).has_value());
  }
}

TEST_CASE("monoid isomorphisms are homomorphisms") {
  auto a = klein();
  auto b = enumerate_monoids(4);
  int hits = 0;
  for (const auto& m : b)
    if (auto iso = monoid_isomorphism(a, m)) {
      CHECK(is_monoid_hom(a, m, *iso));
      ++hits;
    }
  CHECK(hits == 1);
}

TEST_CASE("E(M) recognition recovers small monoids") {
  auto fs = finset_category(2);
  for (int n = 1; n <= 3; ++n)
    for (const auto& m : enumerate_monoids(n)) {
      auto r = recognize_monoid_theory(e_of_monoid(m, fs).theory, fs);
      REQUIRE(r.monoidal);
      CHECK(monoid_isomorphism(r.monoid, m).has_value());
    }
}

TEST_CASE("the maybe Kleisli theory is not monoidal") {
  auto fs = finset_category(2);
  auto r = recognize_monoid_theory(kleisli(maybe_monad(), fs).theory, fs);
  CHECK(!r.monoidal);
  CHECK(!r.reason.empty());
}

TEST_CASE("models of E(M) are M-sets") {
  auto fs = finset_category(3);
  for (int n = 1; n <= 2; ++n)
    for (const auto& m : enumerate_monoids(n)) {
      auto k = models_equal_msets(m, fs);
      CHECK(k.report.ok());
      CHECK(k.mod.cat->num_objects() == k.em.cat->num_objects());
      CHECK(k.mod.cat->num_morphisms() == k.em.cat->num_morphisms());
    }
}

TEST_CASE("normal subgroups and the full quotient family") {
  for (const auto& [name, g] : small_groups()) {
    INFO(name);
    REQUIRE(g.is_group());
    const int normal = oracle::normal_subgroups(g.n, g.mul, g.unit);
    CHECK(static_cast<int>(normal_subgroups(g).size()) == normal);
    auto fam = full_quotient_family(g);
    CHECK(static_cast<int>(fam.size()) == normal);
    for (const auto& q : fam) CHECK(is_monoid_hom(g, q.target, q.map));
  }
  CHECK(full_quotient_family(klein()).size() == 5);
}

TEST_CASE("profinite completion of a finite group is the group") {
  for (const auto& [name, g] : small_groups()) {
    INFO(name);
    auto pc = profinite_completion(g, full_quotient_family(g));
    CHECK(pc.group.n == g.n);
    CHECK(monoid_isomorphism(pc.group, g).has_value());
    CHECK(is_monoid_hom(g, pc.group, pc.eta));
  }
}

TEST_CASE("natural endomorphisms of the forgetful functor") {
  for (const auto& [name, g] : small_groups()) {
    if (g.n > 4) continue;
    INFO(name);
    const int bound = std::max(g.n, 6);
    auto nat = nat_endomorphism_monoid(g, bound);
    CHECK(nat.bound_ok);
    CHECK(nat.monoid.n == g.n);
    auto pc = profinite_completion(g, full_quotient_family(g));
    CHECK(phi_check(g, pc, nat).report.ok());
  }
}

TEST_CASE("G-set skeleton counts") {
  // sums of orbits of size 1 and 2: {1}, {1+1, 2}, {1+1+1, 1+2}
  auto sk = gset_skeleton(cyclic_group(2), 3);
  std::vector<int> by_size(4, 0);
  for (const auto& x : sk) ++by_size[x.size];
  CHECK(by_size[1] == 1);
  CHECK(by_size[2] == 2);
  CHECK(by_size[3] == 2);
  for (const auto& x : sk)
    for (const auto& y : sk)
      for (const auto& f : equivariant_maps(cyclic_group(2), x, y))
        for (int g = 0; g < 2; ++g)
          for (int p = 0; p < x.size; ++p) CHECK(f[x(g, p)] == y(g, f[p]));
}
