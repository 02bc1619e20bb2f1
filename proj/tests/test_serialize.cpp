#include <doctest.h>

#include <string>

#include "protocat/serialize.hpp"

using namespace protocat;

namespace {

const char* kArrow = R"(# a -> b
CATEGORY arrow
OBJECTS
  a b
HOMS
  ida : a -> a id
  idb : b -> b id
  f : a -> b
COMPOSE
  ida . ida = ida
  idb . idb = idb
  f . ida = f
  idb . f = f
END

FUNCTOR pick : arrow -> chain3
OBJECTS
  a -> 0
  b -> 2
MORPHISMS
  ida -> 0_0
  idb -> 2_2
  f -> 0_2
END

MONOID z3
ELEMENTS 0 1 2
UNIT 0
TABLE
  0 1 2
  1 2 0
  2 0 1
END

PRESENTATION semigroup
op m 2
eq 3 m(m(x1,x2),x3) = m(x1,m(x2,x3))
END
)";

std::string error_of(const std::string& text) {
  Workspace ws;
  try {
    load_text(ws, text, "t");
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("text workspace loads and validates") {
  Workspace ws;
  load_text(ws, kArrow, "t");
  CHECK(ws.categories.size() == 1);
  CHECK(ws.functors.size() == 1);
  CHECK(ws.monoids.at("z3").n == 3);
  CHECK(ws.presentations.at("semigroup").equations.size() == 1);
  CHECK(validate_workspace(ws).ok());
  CHECK(ws.category("arrow^op")->num_morphisms() == 3);
}

TEST_CASE("text and JSON round trips") {
  Workspace ws;
  load_text(ws, kArrow, "t");
  const std::string text = write_text(ws);
  const std::string json = write_json(ws);
  Workspace a, b;
  load_text(a, text, "a");
  load_json(b, json, "b");
  CHECK(write_text(a) == text);
  CHECK(write_text(b) == text);
  CHECK(write_json(a) == json);
}

TEST_CASE("stock references resolve") {
  Workspace ws;
  CHECK(ws.category("finset2")->num_morphisms() == 11);
  CHECK(ws.category("chain3^op")->num_objects() == 3);
  CHECK(ws.monoid("klein").n == 4);
  CHECK(ws.monoid("monoid3_0").n == 3);
  CHECK(ws.presentation("group").equations.size() == 4);
  CHECK(monad_by_name(ws, "writer:cyclic2").size(3) == 6);
  CHECK_THROWS_AS(ws.category("nothing"), InputError);
  CHECK_THROWS_AS(ws.monoid("monoid4_99"), InputError);
}

TEST_CASE("parse errors carry line and column") {
  CHECK(error_of("CATEGORY c\nOBJECTS\n  a\nHOMS\n  ida : a -> b id\nEND\n").rfind("t:5:", 0) == 0);
  CHECK(error_of("MONOID m\nELEMENTS 0 1\nUNIT 0\nTABLE\n  0 1\n  1 7\nEND\n").rfind("t:6:", 0) == 0);
  CHECK(error_of("BOGUS x\n").rfind("t:1:1:", 0) == 0);
  CHECK(!error_of("CATEGORY c\nOBJECTS\n  a\n").empty());
}

TEST_CASE("duplicate names are rejected") {
  Workspace ws;
  load_text(ws, kArrow, "t");
  CHECK_THROWS_AS(load_text(ws, kArrow, "t"), InputError);
}
