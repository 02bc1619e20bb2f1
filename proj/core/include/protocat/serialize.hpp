#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "protocat/eqpres.hpp"
#include "protocat/groupsem.hpp"
#include "protocat/topth.hpp"

namespace protocat {

// A theory as stored in a workspace: L: A → 𝓛 with its aritation and optional hom-topology.
struct TheoryEntry {
  ProtoTheory theory;
  Aritation aritation;
  std::string aritation_kind;  // "canonical" or "projection"
  std::string base;            // reference of the base category
  std::string category, functor;
  std::vector<std::pair<int, int>> identify;  // parallel pairs merged in the hom-topology
  TopProtoTheory topological() const;
};

enum class ItemKind { category, functor, theory, monoid, presentation };

const char* kind_name(ItemKind k);

struct Workspace {
  std::map<std::string, CatPtr> categories;
  std::map<std::string, FinFunctor> functors;
  std::map<std::string, TheoryEntry> theories;
  std::map<std::string, FinMonoid> monoids;
  std::map<std::string, Presentation> presentations;
  // declaration order, (kind, name)
  std::vector<std::pair<ItemKind, std::string>> order;
  // reference of every category and functor endpoint, for writing
  std::map<std::string, std::pair<std::string, std::string>> functor_refs;

  bool contains(std::string_view name) const;
  // User items first, then stock ones: terminal, chain<n>, discrete<n>, finset<n>, cyclic<n>; a
  // trailing ^op takes the opposite. Throws InputError when unresolved.
  CatPtr category(std::string_view ref) const;
  const FinFunctor& functor(std::string_view name) const;
  const TheoryEntry& theory(std::string_view name) const;
  // Stock: trivial, cyclic<n>, klein, monoid<n>_<i> (i-th monoid of order n).
  FinMonoid monoid(std::string_view ref) const;
  // Stock: group.
  Presentation presentation(std::string_view ref) const;

  void add_category(const std::string& name, CatPtr c);
  void add_functor(const std::string& name, FinFunctor f, std::string src_ref, std::string dst_ref);
  void add_theory(const std::string& name, TheoryEntry t);
  void add_monoid(const std::string& name, FinMonoid m);
  void add_presentation(const std::string& name, Presentation p);
};

// Text blocks (CATEGORY, FUNCTOR, THEORY, MONOID, PRESENTATION ... END) or the JSON mirror.
// Errors are InputError with "origin:line:column: message".
void load_text(Workspace& ws, std::string_view text, const std::string& origin = "<input>");
void load_json(Workspace& ws, std::string_view text, const std::string& origin = "<input>");
// Detects the format from the first non-blank character; returns the names declared by the file.
std::vector<std::pair<ItemKind, std::string>> load_file(Workspace& ws, const std::string& path);
Workspace load(const std::string& path);

std::string write_text(const Workspace& ws);
std::string write_json(const Workspace& ws);

// Violations of every item, prefixed by its name.
Report validate_workspace(const Workspace& ws);

SetMonad monad_by_name(const Workspace& ws, std::string_view ref);  // identity, maybe, writer:<monoid>

}  // namespace protocat
