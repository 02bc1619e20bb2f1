#include <doctest.h>

#include <string>

#include "protocat/commands.hpp"

using namespace protocat;

namespace {

std::string data(const char* name) { return std::string(PROTOCAT_DATA_DIR) + "/" + name; }

CommandOutput run(CommandArgs a) { return run_command(a); }

CommandArgs args(const char* command) {
  CommandArgs a;
  a.command = command;
  return a;
}

}  // namespace

TEST_CASE("every command is dispatched") {
  CHECK(command_names().size() == 18);
  CHECK_THROWS_AS(run(args("no-such-command")), InputError);
}

TEST_CASE("validate the shipped data") {
  auto a = args("validate");
  for (const char* f : {"walking_arrow.cat", "z2.theory", "z2sets.fun", "group.eqs", "z3.monoid", "arrow_into_chain.fun"})
    a.files.push_back(data(f));
  CHECK(run(a).report.ok());
}

TEST_CASE("group models on two points") {
  auto a = args("models");
  a.presentation = "group";
  a.carrier = 2;
  auto out = run(a);
  REQUIRE(out.report.ok());
  CHECK(render(out, false).find("models: 2") != std::string::npos);
}

TEST_CASE("adjunction check on the swap action") {
  auto a = args("check-adjunction");
  a.files = {data("z2.theory"), data("z2sets.fun")};
  a.theory = "z2_points";
  a.functor = "swap_on_2";
  CHECK(run(a).report.ok());
}

TEST_CASE("factorize returns a loadable artifact") {
  auto a = args("factorize");
  a.files = {data("walking_arrow.cat"), data("arrow_into_chain.fun")};
  a.functor = "arrow_02";
  auto out = run(a);
  REQUIRE(out.report.ok());
  CHECK(!out.artifact.order.empty());
  Workspace ws;
  load_text(ws, render_artifact(out.artifact, false), "artifact");
  CHECK(validate_workspace(ws).ok());
}

TEST_CASE("kleisli correspondence and recognition") {
  auto a = args("kleisli");
  a.monad = "maybe";
  a.bound = 2;
  CHECK(run(a).report.ok());
  auto r = args("recognize-monad");
  r.theory = "kle:identity";
  r.bound = 2;
  CHECK(run(r).report.ok());
}

TEST_CASE("profinite and phi-check on the Klein group") {
  auto a = args("profinite");
  a.monoid = "klein";
  auto out = run(a);
  CHECK(out.report.ok());
  CHECK(render(out, false).find("quotients: 5") != std::string::npos);
  auto p = args("phi-check");
  p.monoid = "cyclic4";
  CHECK(run(p).report.ok());
}

TEST_CASE("enough subobjects reports a witness") {
  auto a = args("enough-subobjects");
  a.category = "discrete2";
  auto out = run(a);
  CHECK(!out.report.ok());
  CHECK(render(out, false).find("counterexample: object 0, sieve {}") != std::string::npos);
}

TEST_CASE("oversized theories are refused") {
  auto a = args("complete?");
  a.theory = "kle:writer:cyclic2";
  a.bound = 3;
  CHECK_THROWS_AS(run(a), TruncationError);
  a.arities = 1;
  CHECK(run(a).report.ok());
}

TEST_CASE("bad references are input errors") {
  auto a = args("kleisli");
  a.monad = "state";
  CHECK_THROWS_AS(run(a), InputError);
  auto b = args("profinite");
  b.monoid = "cyclic9x";
  CHECK_THROWS_AS(run(b), InputError);
  auto c = args("semantics");
  c.theory = "kle:maybe";
  c.bound = 9;
  CHECK_THROWS_AS(run(c), InputError);
}

TEST_CASE("structured output is JSON") {
  auto a = args("closure");
  a.presentation = "group";
  a.arity = 1;
  a.depth = 2;
  auto out = run(a);
  const std::string j = render(out, true);
  CHECK(j.front() == '{');
  CHECK(j.find("\"checks\"") != std::string::npos);
}
