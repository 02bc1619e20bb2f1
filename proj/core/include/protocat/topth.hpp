#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "protocat/proth.hpp"

namespace protocat {

// Finite topology kept in minimal-open form: U_x is the smallest open set containing x.
class FinTopology {
 public:
  FinTopology() = default;
  static FinTopology discrete(int n);
  static FinTopology indiscrete(int n);
  // Blocks of a partition, block[x] = label of x.
  static FinTopology partition(const std::vector<int>& block);
  // Minimal opens from a family of open sets; the family is not checked (see validate_opens).
  static FinTopology from_opens(int n, const std::vector<std::vector<int>>& opens);
  // Throws PreconditionError unless x ∈ U_x and y ∈ U_x implies U_y ⊆ U_x.
  static FinTopology from_minimal(std::vector<std::vector<int>> minimal);

  int size() const { return static_cast<int>(min_.size()); }
  const std::vector<int>& minimal_open(int x) const { return min_[x]; }
  bool is_open(const std::vector<int>& subset) const;
  std::vector<std::vector<int>> opens() const;  // every open set, sorted
  bool is_discrete() const;
  bool is_indiscrete() const;
  bool operator==(const FinTopology& o) const { return min_ == o.min_; }

 private:
  std::vector<std::vector<int>> min_;
};

// Closure under finite union and intersection, ∅ and the carrier present.
Report validate_opens(int n, const std::vector<std::vector<int>>& opens);

FinTopology product(const FinTopology& a, const FinTopology& b);  // (x, y) ↦ x * |b| + y
FinTopology subspace(const FinTopology& t, const std::vector<int>& subset);
// Coarsest topology on {0..n-1} making every map continuous. Empty family: indiscrete.
FinTopology initial_topology(int n, const std::vector<std::pair<Table, FinTopology>>& maps);
bool is_continuous(const Table& f, const FinTopology& x, const FinTopology& y);
bool is_dense(const FinTopology& t, const std::vector<int>& subset);

// Pointwise topology on the functions x → y (tables in lexicographic order).
FinTopology set_t_topology(int x, int y);

struct TopProtoTheory {
  ProtoTheory theory;
  Aritation aritation;
  std::vector<FinTopology> hom;  // per (a, a′) of theory objects, index a * n + a′, points = hom positions
  const FinTopology& top(int a, int a2) const { return hom[a * theory.theory->num_objects() + a2]; }
};

TopProtoTheory disc(const ProtoTheory& l, const Aritation& ar);
// Hom-spaces with the minimal opens given by a congruence: the smallest one identifying each
// listed pair of parallel morphisms. Composition is continuous by construction.
TopProtoTheory quotient_topology(const ProtoTheory& l, const Aritation& ar,
                                 const std::vector<std::pair<int, int>>& identify);
// Composition continuity on every composable pair of hom-spaces.
Report validate_top_theory(const TopProtoTheory& l);

// Full subtheory on the given arity objects, with the restricted aritation.
TopProtoTheory restrict_top_theory(const TopProtoTheory& l, const std::vector<int>& arity_objects);

bool is_continuous_model(const Semantics& sem, const Model& x, const TopProtoTheory& l);
// Continuous models and all homs between them.
ModelCategory top_model_category(const TopProtoTheory& l);

struct TopStructure {
  Structure str;
  TopProtoTheory theory;  // hom topology initial for the evaluations γ ↦ γ_m(f)
};

TopStructure structure_topological(const FinFunctor& u, const Aritation& ar);
TopStructure structure_topological(const FinFunctor& u);

bool is_topologically_dense(const TheoryMorphism& p, const TopProtoTheory& to);

struct Completeness {
  ModelCategory mod;    // sem_t(L)
  TopStructure cplt;    // str_t(sem_t(L))
  TheoryMorphism E;     // L → cplt
  bool continuous = false;
  bool bijective = false;
  bool complete = false;  // E is a homeomorphism on every hom-space
  bool dense = false;
  bool sem_checked = false;
  bool sem_split_epic = false;  // sem_t(E) surjective on objects and morphisms
  bool sem_iso = false;
  Report report;  // broken invariants only; incompleteness is not a violation
};

// With check_semantics, sem_t(E_L) is built and compared as well.
Completeness check_complete(const TopProtoTheory& l, bool check_semantics = true);
// str_t ∘ sem_t with the counit.
Completeness completion(const TopProtoTheory& l);

struct EnoughSubobjects {
  bool holds = true;
  std::size_t sieves = 0, product_preserving = 0;
  // failing case: object q and the sieve, per object c the hom positions in B(c, q)
  int object = -1;
  std::vector<std::vector<int>> witness;
};

// Coproducts of families with 0, 2 and 3 members are tested for preservation.
EnoughSubobjects check_enough_subobjects(const CatPtr& b);

// Coproduct object and coprojections of the family, if one exists.
std::optional<std::pair<int, std::vector<int>>> find_coproduct(const FinCategory& b, const std::vector<int>& family);

// Posets on {0..n-1} given by order relation matrices leq[x * n + y], all labelled ones.
std::vector<std::vector<char>> enumerate_posets(int n);
// Every subset has a join, the empty one included.
bool has_all_joins(int n, const std::vector<char>& leq);

}  // namespace protocat
