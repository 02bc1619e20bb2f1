#pragma once

#include <optional>
#include <string>
#include <vector>

#include "protocat/serialize.hpp"
#include "protocat/verify.hpp"

namespace protocat {

// Item arguments accept a file (its single item of the kind), file:name, a name declared by the
// positional files, or a stock name.
struct CommandArgs {
  std::string command;
  std::vector<std::string> files;
  std::string theory, functor, category, monad, monoid, presentation;
  std::string aritation = "canonical";  // for structure
  std::optional<int> bound, arity, depth, carrier, arities, monoid_bound;
  std::uint32_t seed = 7;
  bool parallel = true;
};

struct CommandOutput {
  VerificationReport report;
  Workspace artifact;  // empty unless the command produces one
};

const std::vector<std::string>& command_names();

// Throws InputError on unparsable or unresolved input.
CommandOutput run_command(const CommandArgs& args);

// Report followed by the artifact, if any and if requested.
std::string render(const CommandOutput& out, bool structured, bool with_artifact = true);
std::string render_artifact(const Workspace& artifact, bool structured);

}  // namespace protocat
