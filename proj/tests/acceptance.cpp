// Acceptance run: one line per criterion, exit status 1 if any line fails.

#include <cstdio>
#include <string>

#include "protocat/verify.hpp"

using namespace protocat;

int main() {
  VerifyOptions o;
  for (int id = 1; id <= 11; ++id) o.only.push_back(id);
  const VerificationReport first = verify_thesis(o);
  const VerificationReport second = verify_thesis(o);

  int failed = 0;
  for (const CheckResult& c : first.checks) {
    const bool pass = c.status == CheckStatus::pass;
    failed += !pass;
    std::printf("[%s] %2d %s\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str());
    if (!pass) {
      for (const auto& line : c.counterexamples) std::printf("       %s\n", line.c_str());
      if (!c.note.empty()) std::printf("       %s\n", c.note.c_str());
    }
  }
  const bool same = render_text(first) == render_text(second) && render_json(first) == render_json(second);
  std::printf("[%s] 12 determinism\n", same ? "PASS" : "FAIL");
  failed += !same;
  if (first.checks.size() != 11) {
    std::printf("expected 11 checks before determinism, got %zu\n", first.checks.size());
    return 1;
  }
  return failed == 0 ? 0 : 1;
}
