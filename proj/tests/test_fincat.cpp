#include <doctest.h>

#include "oracles.hpp"
#include "protocat/fincat.hpp"
#include "protocat/groupsem.hpp"

using namespace protocat;

namespace {

std::vector<CatPtr> small_categories() {
  auto z2 = cyclic_group(2);
  return {terminal_category(),  discrete_category(2), chain_category(2), chain_category(3),
          monoid_category(z2.n, z2.mul, z2.unit), finset_category(1).cat};
}

}  // namespace

TEST_CASE("stock categories are valid") {
  for (const auto& c : small_categories()) CHECK(validate_category(*c).ok());
  CHECK(validate_category(*finset_category(3).cat).ok());
  CHECK(validate_category(*chain_category(4)->opposite()).ok());
}

TEST_CASE("finset hom counts are y^x") {
  auto fs = finset_category(3);
  for (int x = 0; x <= 3; ++x)
    for (int y = 0; y <= 3; ++y)
      CHECK(static_cast<long long>(fs.cat->hom(x, y).size()) == oracle::ipow(y, x));
  CHECK(fs.cat->num_morphisms() == 60);
}

TEST_CASE("opposite keeps names and reverses arrows") {
  auto c = chain_category(3);
  auto op = c->opposite();
  REQUIRE(op->num_morphisms() == c->num_morphisms());
  for (int f = 0; f < c->num_morphisms(); ++f) {
    CHECK(op->morphism_name(f) == c->morphism_name(f));
    CHECK(op->src(f) == c->dst(f));
  }
  CHECK(*op->opposite() == *c);
}

TEST_CASE("functor enumeration agrees with brute force") {
  auto cats = small_categories();
  for (const auto& a : cats)
    for (const auto& b : cats) {
      auto fs = enumerate_functors(a, b);
      CHECK(static_cast<long long>(fs.size()) == oracle::functors(*a, *b));
      for (const auto& f : fs) CHECK(validate_functor(f).ok());
    }
  // monotone maps 3 → 3
  CHECK(enumerate_functors(chain_category(3), chain_category(3)).size() == 10);
}

TEST_CASE("bo/ff factorization") {
  auto cats = small_categories();
  for (const auto& a : cats)
    for (const auto& b : cats) {
      for (const auto& f : enumerate_functors(a, b, 8)) {
        auto fact = bo_ff_factorize(f);
        CHECK(is_bijective_on_objects(fact.e));
        CHECK(is_full_and_faithful(fact.n));
        CHECK(compose(fact.n, fact.e) == f);
        // the square e, n over itself fills with the identity
        auto h = fill_in(fact.e, fact.n, fact.e, fact.n);
        CHECK(h == identity_functor(fact.mid));
      }
    }
}

TEST_CASE("limits of finite-set diagrams") {
  auto d = discrete_category(2);
  SetFunctor s{d, {2, 3}, {Table{0, 1}, Table{0, 1, 2}}};
  CHECK(limit_of_finset_diagram(s).apex() == 6);

  // equalizer of the two maps 2 → 2 given by id and swap on the parallel pair category
  FinCategory::Builder b;
  int x = b.add_object("x"), y = b.add_object("y");
  b.add_morphism("f", x, y);
  b.add_morphism("g", x, y);
  b.add_morphism("ix", x, x);
  b.add_morphism("iy", y, y);
  b.set_identity(x, 2);
  b.set_identity(y, 3);
  auto par = b.build([](int g, int f) { return g == 3 ? f : g; });
  REQUIRE(validate_category(*par).ok());
  SetFunctor e{par, {2, 2}, {}};
  e.map.resize(4);
  e.map[par->morphism("f")] = {0, 1};
  e.map[par->morphism("g")] = {1, 0};
  e.map[par->morphism("ix")] = {0, 1};
  e.map[par->morphism("iy")] = {0, 1};
  REQUIRE(validate_set_functor(e).ok());
  CHECK(limit_of_finset_diagram(e).apex() == 0);
  e.map[par->morphism("g")] = {0, 0};
  CHECK(limit_of_finset_diagram(e).apex() == 1);
}

TEST_CASE("natural transformations between hom functors") {
  // Yoneda: Nat(C(a,-), C(b,-)) ≅ C(b, a)
  for (const auto& c : small_categories())
    for (int a = 0; a < c->num_objects(); ++a)
      for (int b = 0; b < c->num_objects(); ++b)
        CHECK(enumerate_set_nat(hom_functor(c, a), hom_functor(c, b)).size() == c->hom(b, a).size());
}

TEST_CASE("comma categories") {
  auto c = chain_category(3);
  auto id = identity_functor(c);
  // (1 ↓ id) is the up-set of 1
  CHECK(comma_category(id, 1).cat->num_objects() == 2);
  CHECK(comma_category(id, 0).cat->num_objects() == 3);
}
