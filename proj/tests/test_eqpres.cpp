#include <doctest.h>

#include "oracles.hpp"
#include "protocat/eqpres.hpp"

using namespace protocat;

TEST_CASE("terms are hash-consed") {
  auto p = group_presentation();
  TermBank& b = *p.terms;
  int t1 = parse_term(b, p.domain, "m(x1,i(x2))");
  int t2 = parse_term(b, p.domain, "m( x1 , i(x2) )");
  CHECK(t1 == t2);
  CHECK(b.print(t1, p.domain) == "m(x1,i(x2))");
  CHECK(b.variables(t1) == 2);
  int s = b.substitute(t1, {parse_term(b, p.domain, "e"), parse_term(b, p.domain, "x1")});
  CHECK(b.print(s, p.domain) == "m(e,i(x1))");
}

TEST_CASE("term parse errors carry the column") {
  auto p = group_presentation();
  try {
    parse_term(*p.terms, p.domain, "m(x1,q(x2))");
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("6") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_term(*p.terms, p.domain, "m(x1)"), InputError);
  CHECK_THROWS_AS(parse_term(*p.terms, p.domain, "x0"), InputError);
}

TEST_CASE("presentations print and parse back") {
  auto p = group_presentation();
  CHECK(validate_presentation(p).ok());
  auto q = parse_presentation(print_presentation(p));
  CHECK(print_presentation(q) == print_presentation(p));
  CHECK(q.equations.size() == 4);
}

TEST_CASE("term generation sizes") {
  // one binary symbol: T(d) = n + T(d-1)^2
  auto p = parse_presentation("op m 2\n");
  for (int n = 1; n <= 2; ++n) {
    long long t = n;
    for (int d = 0; d <= 2; ++d) {
      CHECK(static_cast<long long>(generate_terms(*p.terms, p.domain, n, d).size()) == t);
      t = n + t * t;
    }
  }
}

TEST_CASE("group models on small carriers") {
  auto p = group_presentation();
  const int frozen[] = {0, 1, 2, 3};
  for (int n = 0; n <= 3; ++n) {
    auto ms = enumerate_omega_models(p, n);
    CHECK(static_cast<int>(ms.size()) == oracle::labelled_groups(n));
    CHECK(static_cast<int>(ms.size()) == frozen[n]);
    for (const auto& m : ms) {
      CHECK(validate_omega_model(p.domain, m).ok());
      for (const auto& eq : p.equations) CHECK(satisfies(*p.terms, m, eq));
    }
  }
}

TEST_CASE("homomorphisms between group models") {
  auto p = group_presentation();
  auto two = enumerate_omega_models(p, 2);
  REQUIRE(two.size() == 2);
  // an isomorphism swaps the two labellings of Z2
  CHECK(model_homomorphisms(p.domain, two[0], two[1]).size() == 2);
  CHECK(model_homomorphisms(p.domain, two[0], two[0]).size() == 2);
}

TEST_CASE("free magma closure has one class per term") {
  auto p = parse_presentation("op m 2\n");
  auto c = congruence_closure(p, 2, 2);
  CHECK(c.classes == static_cast<int>(c.terms.size()));
}

TEST_CASE("soundness of the group and semigroup presentations") {
  for (const char* text : {"op e 0\nop i 1\nop m 2\neq 3 m(m(x1,x2),x3) = m(x1,m(x2,x3))\neq 1 m(e,x1) = x1\n"
                           "eq 1 m(x1,e) = x1\neq 1 m(x1,i(x1)) = e\n",
                           "op m 2\neq 3 m(m(x1,x2),x3) = m(x1,m(x2,x3))\n"}) {
    auto p = parse_presentation(text);
    auto r = soundness_check(p, 2, 2, 3);
    CHECK(r.violations.ok());
    CHECK(r.provable_classes >= r.semantic_classes);
  }
}

TEST_CASE("idempotence is visible in the closure") {
  auto p = parse_presentation("op m 2\neq 1 m(x1,x1) = x1\n");
  auto c = congruence_closure(p, 1, 2);
  // every term in one variable collapses to x1
  CHECK(c.classes == 1);
}
