#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace protocat {

enum class CheckStatus { pass, fail, skipped };

const char* status_name(CheckStatus s);

struct CheckResult {
  int id = 0;
  std::string name;
  CheckStatus status = CheckStatus::skipped;
  std::vector<std::pair<std::string, std::string>> stats;  // measured quantities, in insertion order
  std::vector<std::string> counterexamples;                // first few offending instances
  std::string note;                                        // why skipped, if it was

  void stat(std::string key, long long value) { stats.emplace_back(std::move(key), std::to_string(value)); }
  void stat(std::string key, std::string value) { stats.emplace_back(std::move(key), std::move(value)); }
  // Records a failure; payloads past the first eight are only counted.
  void fail(std::string what);
  std::size_t failures = 0;
};

struct VerifyOptions {
  int bound = 3;         // carrier and object sizes
  int monoid_bound = 4;  // monoid orders for recognition
  int depth = 3;         // term depth
  std::uint32_t seed = 7;
  int triples = 80;           // generated adjunction instances
  int top_instances = 24;     // generated topological theories
  std::vector<int> only;      // restrict to these check ids, all when empty
  bool parallel = true;
  bool rerun = true;          // check 12 reruns checks 1..11 and compares the rendered reports
};

struct VerificationReport {
  std::string suite;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<CheckResult> checks;
  bool ok() const;  // no check failed
};

CheckResult check_adjunction_laws(const VerifyOptions& o);
CheckResult check_model_laws(const VerifyOptions& o);
CheckResult check_monad_correspondence(const VerifyOptions& o);
CheckResult check_free_forgetful(const VerifyOptions& o);
CheckResult check_codensity(const VerifyOptions& o);
CheckResult check_monoid_semantics(const VerifyOptions& o);
CheckResult check_monoid_recognition(const VerifyOptions& o);
CheckResult check_profinite(const VerifyOptions& o);
CheckResult check_topological(const VerifyOptions& o);
CheckResult check_classical(const VerifyOptions& o);
CheckResult check_subobjects(const VerifyOptions& o);

VerificationReport verify_thesis(const VerifyOptions& o);

std::string render_text(const VerificationReport& r);
std::string render_json(const VerificationReport& r);

}  // namespace protocat
