#include <doctest.h>

#include "oracles.hpp"
#include "protocat/groupsem.hpp"
#include "protocat/monads.hpp"

using namespace protocat;

namespace {

struct Case {
  const char* name;
  SetMonad t;
  long long algebras, homs;  // frozen from oracle::em_algebras at bound 3
};

std::vector<Case> cases() {
  return {{"identity", identity_set_monad(), 4, 60},
          {"maybe", maybe_monad(), 6, 142},
          {"z2-writer", monoid_writer(cyclic_group(2)), 8, 159},
          {"z3-writer", monoid_writer(cyclic_group(3)), 6, 86}};
}

}  // namespace

TEST_CASE("set monads satisfy the monad laws") {
  for (const auto& c : cases()) {
    INFO(c.name);
    CHECK(validate_set_monad(c.t, 3).ok());
  }
  CHECK(validate_set_monad(monoid_writer(enumerate_monoids(3)[4]), 3).ok());
}

TEST_CASE("algebra counts match the brute-force oracle") {
  for (const auto& c : cases()) {
    INFO(c.name);
    auto o = oracle::em_algebras(c.t, 3);
    CHECK(o.algebras == c.algebras);
    CHECK(o.homs == c.homs);
    auto em = eilenberg_moore(c.t, finset_category(3));
    CHECK(em.cat->num_objects() == c.algebras);
    CHECK(em.cat->num_morphisms() == c.homs);
  }
}

TEST_CASE("models of the Kleisli theory are the algebras") {
  auto fs = finset_category(3);
  for (const auto& c : cases()) {
    INFO(c.name);
    auto k = compare_kleisli_models(c.t, fs);
    CHECK(k.report.ok());
    CHECK(k.mod.cat->num_objects() == c.algebras);
    CHECK(k.mod.cat->num_morphisms() == c.homs);
  }
}

TEST_CASE("Kleisli hom-sets are base(b, T b')") {
  auto fs = finset_category(2);
  for (const auto& c : cases()) {
    auto kt = kleisli(c.t, fs);
    CHECK(validate_proto_theory(kt.theory).ok());
    for (int b2 = 0; b2 <= 2; ++b2)
      for (int b = 0; b <= 2; ++b)
        CHECK(static_cast<long long>(kt.theory.theory->hom(b2, b).size()) == oracle::ipow(c.t.size(b2), b));
  }
}

TEST_CASE("free/forgetful structure is the Kleisli theory") {
  auto fs = finset_category(2);
  for (const auto& c : cases()) {
    INFO(c.name);
    auto ff = free_forgetful_structure(c.t, fs);
    CHECK(ff.report.ok());
    const auto& thr = *ff.str.theory.theory;
    for (int a = 0; a < thr.num_objects(); ++a)
      for (int a2 = 0; a2 < thr.num_objects(); ++a2)
        CHECK(static_cast<long long>(thr.hom(a, a2).size()) == oracle::ipow(c.t.size(a), a2));
  }
}

TEST_CASE("codensity of constant functors") {
  auto fs = finset_category(2);
  for (int b = 0; b <= 2; ++b)
    for (int c = 0; c <= 2; ++c)
      CHECK(static_cast<long long>(const_codensity_size(fs, b, c)) == oracle::ipow(b, oracle::ipow(b, c)));
}

TEST_CASE("codensity of the identity is the identity monad") {
  for (const auto& base : {chain_category(2), chain_category(3), discrete_category(2)}) {
    auto cm = codensity_monad(identity_functor(base));
    CHECK(validate_fin_monad(cm.monad).ok());
    CHECK(monad_isomorphism(cm.monad, identity_monad(base)).has_value());
  }
}

TEST_CASE("codensity structure over chains") {
  auto b = chain_category(3);
  for (const auto& m : {terminal_category(), chain_category(2), discrete_category(2)})
    for (const auto& u : enumerate_functors(m, b)) {
      auto cs = codensity_structure(u);
      CHECK(cs.report.ok());
      CHECK(validate_fin_monad(cs.codensity.monad).ok());
    }
}

TEST_CASE("abstract Kleisli theory is recognized as monadic") {
  auto base = chain_category(3);
  auto u = constant_functor(terminal_category(), base, 2);
  auto cm = codensity_monad(u);
  auto kt = kleisli(cm.monad);
  auto back = recognize_monadic(kt.theory);
  REQUIRE(back.has_value());
  CHECK(monad_isomorphism(*back, cm.monad).has_value());
  auto em = compare_kleisli_models(cm.monad);
  CHECK(em.report.ok());
}

TEST_CASE("monad morphisms of the identity monad") {
  auto base = chain_category(2);
  auto id = identity_monad(base);
  auto ms = enumerate_monad_morphisms(id, id);
  REQUIRE(ms.size() == 1);
  CHECK(validate_monad_morphism(id, id, ms[0]).ok());
}
