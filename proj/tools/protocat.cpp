#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include <CLI11.hpp>

#include "protocat/commands.hpp"

namespace {

struct CommandInfo {
  const char* help;
  std::set<std::string> options;
};

const std::map<std::string, CommandInfo>& command_table() {
  static const std::map<std::string, CommandInfo> s{
      {"validate", {"check every item of the given files", {}}},
      {"factorize", {"bijective-on-objects / full-and-faithful factorization", {"functor"}}},
      {"semantics", {"models of a theory and their category", {"theory"}}},
      {"structure", {"theory of a set-valued functor", {"functor", "aritation"}}},
      {"check-adjunction", {"psi/theta roundtrip for a theory and a functor", {"theory", "functor"}}},
      {"kleisli", {"Kleisli theory of a monad on finite sets", {"monad"}}},
      {"recognize-monad", {"monad presented by a theory, if any", {"theory"}}},
      {"codensity", {"pointwise codensity monad of a functor", {"functor"}}},
      {"models", {"models of a presentation on a fixed carrier", {"presentation", "carrier"}}},
      {"closure", {"bounded congruence closure of a presentation", {"presentation", "arity", "depth"}}},
      {"soundness", {"bounded soundness of a presentation", {"presentation", "arity", "depth"}}},
      {"monoid-theory", {"theory of a monoid and its recognition", {"monoid"}}},
      {"profinite", {"completion over the full quotient family", {"monoid"}}},
      {"phi-check", {"natural endomorphisms of the G-set forgetful functor", {"monoid"}}},
      {"complete?", {"completeness of a topological theory", {"theory", "arities"}}},
      {"completion", {"completion of a topological theory", {"theory", "arities"}}},
      {"enough-subobjects", {"sieve criterion on a finite category", {"category"}}},
      {"verify-thesis", {"full acceptance suite", {"depth", "monoid-bound", "serial"}}},
  };
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"protocat: finite proto-theories, their semantics and structure"};
  app.require_subcommand(1);
  protocat::CommandArgs args;
  std::string format = "text", out_path;
  int bound = -1, arity = -1, depth = -1, carrier = -1, arities = -1, monoid_bound = -1;
  bool serial = false;

  for (const auto& name : protocat::command_names()) {
    const CommandInfo& info = command_table().at(name);
    CLI::App* sub = app.add_subcommand(name, info.help);
    sub->add_option("files", args.files, "workspace files to load")->check(CLI::ExistingFile);
    sub->add_option("--bound", bound, "truncation bound");
    sub->add_option("--seed", args.seed, "seed for generated instances");
    sub->add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
    sub->add_option("--out", out_path, "write the artifact, or the report when there is none, to this file");
    auto has = [&](const char* o) { return info.options.count(o) > 0; };
    if (has("functor")) sub->add_option("--functor", args.functor, "file, file:name, or name");
    if (has("theory")) sub->add_option("--theory", args.theory, "file, name, kle:<monad>, e:<monoid>, point:<monoid>");
    if (has("monad")) sub->add_option("--monad", args.monad, "identity, maybe, writer:<monoid>");
    if (has("monoid")) sub->add_option("--monoid", args.monoid, "file, name, trivial, cyclic<n>, klein, monoid<n>_<i>");
    if (has("presentation")) sub->add_option("--presentation", args.presentation, "file, name, or group");
    if (has("category")) sub->add_option("--category", args.category, "file, name, or a stock category");
    if (has("aritation"))
      sub->add_option("--aritation", args.aritation, "canonical or projection")
          ->check(CLI::IsMember({"canonical", "projection"}));
    if (has("carrier")) sub->add_option("--carrier", carrier, "carrier size");
    if (has("arity")) sub->add_option("--arity", arity, "number of variables");
    if (has("depth")) sub->add_option("--depth", depth, "term depth bound");
    if (has("arities")) sub->add_option("--arities", arities, "keep arity objects 0..k");
    if (has("monoid-bound")) sub->add_option("--monoid-bound", monoid_bound, "largest monoid order");
    if (has("serial")) sub->add_flag("--serial", serial, "run the checks on one thread");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  args.command = app.get_subcommands().front()->get_name();
  auto opt = [](int v) { return v < 0 ? std::optional<int>() : std::optional<int>(v); };
  args.bound = opt(bound);
  args.arity = opt(arity);
  args.depth = opt(depth);
  args.carrier = opt(carrier);
  args.arities = opt(arities);
  args.monoid_bound = opt(monoid_bound);
  args.parallel = !serial;

  try {
    protocat::CommandOutput out = protocat::run_command(args);
    const bool structured = format == "structured";
    const bool artifact_to_file = !out_path.empty() && !out.artifact.order.empty();
    const std::string text = protocat::render(out, structured, out_path.empty());
    if (out_path.empty() || artifact_to_file) std::cout << text;
    if (!out_path.empty()) {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) {
        std::cerr << "protocat: cannot write " << out_path << "\n";
        return 2;
      }
      f << (artifact_to_file ? protocat::render_artifact(out.artifact, structured) : text);
    }
    return out.report.ok() ? 0 : 1;
  } catch (const protocat::InputError& e) {
    std::cerr << "protocat: " << e.what() << "\n";
    return 2;
  }
}
