#include <doctest.h>

#include "oracles.hpp"
#include "protocat/groupsem.hpp"
#include "protocat/monads.hpp"
#include "protocat/proth.hpp"

using namespace protocat;

namespace {

// maps f: n → n with f∘f = f (idempotent) or f∘f = id (involution)
long long self_maps(int n, bool involution) {
  long long count = 0;
  std::vector<int> f(n, 0);
  do {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = f[f[x]] == (involution ? x : f[x]);
    count += ok;
  } while (n > 0 && oracle::next_tuple(f, n));
  return count;
}

}  // namespace

TEST_CASE("identity theory has one model per object") {
  for (const auto& base : {chain_category(2), chain_category(3), discrete_category(2), finset_category(1).cat}) {
    auto ar = canonical_aritation(base);
    REQUIRE(validate_aritation(ar).ok());
    Semantics sem(identity_theory(ar.arities), ar);
    for (int d = 0; d < base->num_objects(); ++d) CHECK(sem.enumerate_models(d).size() == 1);
  }
}

TEST_CASE("point theories of a monoid are its actions") {
  auto fs = finset_category(3);
  auto ar = projection_aritation(fs);
  REQUIRE(validate_aritation(ar).ok());
  Semantics z2(monoid_point_prototheory(2, {0, 1, 1, 0}, 0), ar);
  Semantics idem(monoid_point_prototheory(2, {0, 1, 1, 1}, 0), ar);
  for (int d = 0; d <= 3; ++d) {
    CHECK(static_cast<long long>(z2.enumerate_models(d).size()) == self_maps(d, true));
    CHECK(static_cast<long long>(idem.enumerate_models(d).size()) == self_maps(d, false));
  }
}

TEST_CASE("every enumerated model satisfies the model laws") {
  auto fs = finset_category(2);
  auto ar = canonical_aritation(fs.cat);
  auto u = identity_functor(fs.cat);
  Structure s = structure(u, ar);
  Semantics sem(s.theory, ar);
  for (int d = 0; d < fs.cat->num_objects(); ++d)
    for (const Model& x : sem.enumerate_models(d)) {
      CHECK(sem.check_model(x).ok());
      for (int b = 0; b < fs.cat->num_objects(); ++b)
        for (int f : fs.cat->hom(b, d)) CHECK(sem.alpha(x, s.theory.L.mor[f]) == f);
    }
}

TEST_CASE("psi and theta are inverse on the canonical lift") {
  auto base = chain_category(3);
  auto ar = canonical_aritation(base);
  auto sem = std::make_shared<Semantics>(identity_theory(ar.arities), ar);
  ModelCategory mod = model_category(sem);
  REQUIRE(validate_functor(mod.forget).ok());
  const FinFunctor& u = mod.forget;
  Structure s = structure(u, ar);
  auto lifts = functors_over(mod, u);
  auto morphisms = enumerate_theory_morphisms(sem->theory(), s.theory);
  CHECK(lifts.size() == morphisms.size());
  CHECK(!lifts.empty());
  for (const auto& r : lifts) CHECK(theta(mod, psi(mod, r, s, u), s, u) == r);
  for (const auto& m : morphisms) CHECK(psi(mod, theta(mod, m, s, u), s, u) == m);
}

TEST_CASE("counit of the semantics adjunction is a theory morphism") {
  auto base = chain_category(2);
  auto ar = canonical_aritation(base);
  auto sem = std::make_shared<Semantics>(identity_theory(ar.arities), ar);
  Counit e = counit(sem);
  CHECK(validate_theory_morphism(e.E).ok());
}

TEST_CASE("model products have both projections as homs") {
  auto fs = finset_category(2);
  auto ar = canonical_aritation(fs.cat);
  Semantics maybe(kleisli(maybe_monad(), fs).theory, ar);
  auto ones = maybe.enumerate_models(1);
  REQUIRE(ones.size() == 1);
  auto p = product_of_models(maybe, ones[0], ones[0]);
  CHECK(p.model.carrier == 1);
  CHECK(maybe.check_model(p.model).ok());
  CHECK(maybe.is_model_hom(p.model, ones[0], p.pi1));
  CHECK(maybe.is_model_hom(p.model, ones[0], p.pi2));
}

TEST_CASE("structure refuses oversized categories") {
  // |X^3|^|X^3| components already exceed the cap for X = 3
  auto fs = finset_category(3);
  auto ar = canonical_aritation(fs.cat);
  auto u = constant_functor(terminal_category(), fs.cat, fs.cat->object("3"));
  CHECK_THROWS_AS(structure(u, ar), TruncationError);
}
