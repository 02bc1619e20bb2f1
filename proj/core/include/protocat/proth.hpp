#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "protocat/fincat.hpp"

namespace protocat {

// Set-valued interpretation of arities: a ↦ <a, −> as a functor on the base, covariant in A.
struct Aritation {
  CatPtr arities, base;
  bool canonical = false;              // arities = base^op and <a,x> = base(a,x) by hom position
  std::vector<SetFunctor> pair;        // pair[a]: base → Set
  std::vector<std::vector<Table>> act; // act[f][x]: <src f, x> → <dst f, x>
  int size(int a, int x) const { return pair[a].size[x]; }
};

Aritation canonical_aritation(const CatPtr& base);
// Full subcategory of the arities on the given objects, same pairing.
Aritation restrict_arities(const Aritation& ar, const std::vector<int>& arity_objects);
// Terminal arity category, <1, d> = underlying set of d.
Aritation projection_aritation(const ConcreteCategory& base);
Report validate_aritation(const Aritation& ar);

struct ProtoTheory {
  CatPtr arities, theory;
  FinFunctor L;
  std::vector<int> arity;  // theory object -> arity object
};

ProtoTheory make_proto_theory(const FinFunctor& L);
ProtoTheory identity_theory(const CatPtr& arities);
Report validate_proto_theory(const ProtoTheory& t);

// P: 𝓛 → 𝓛′ with P∘L = L′.
struct TheoryMorphism {
  ProtoTheory from, to;
  FinFunctor P;
};

Report validate_theory_morphism(const TheoryMorphism& p);
TheoryMorphism compose(const TheoryMorphism& q, const TheoryMorphism& p);  // q∘p
TheoryMorphism identity_morphism(const ProtoTheory& t);
std::vector<FinFunctor> enumerate_theory_morphisms(const ProtoTheory& from, const ProtoTheory& to,
                                                   std::size_t limit = kNoLimit);
bool is_theory_isomorphism(const TheoryMorphism& p);

// Algebra form (alpha) for canonical aritations, functor form (gamma) otherwise.
// alpha: flattened over b and l ∈ 𝓛(Ld, Lb), value = hom position in base(b, d).
// gamma: flattened over l and e ∈ <a, d>, value ∈ <a′, d>.
struct Model {
  int carrier = -1;
  std::vector<int> alpha;
  std::vector<int> gamma;
  bool operator==(const Model& o) const { return carrier == o.carrier && alpha == o.alpha && gamma == o.gamma; }
  bool operator<(const Model& o) const;
};

class Semantics {
 public:
  Semantics(ProtoTheory theory, Aritation aritation);

  const ProtoTheory& theory() const { return th_; }
  const Aritation& aritation() const { return ar_; }
  bool algebra_form() const { return ar_.canonical; }

  std::vector<Model> enumerate_models(int carrier, std::size_t limit = kNoLimit) const;
  std::vector<Model> enumerate_models() const;

  // Γ^x(l)(e) for l: La → La′, e ∈ <a, d>
  int gamma(const Model& x, int l, int e) const;
  // α^x_b(l) as a base morphism, l: Ld → Lb (canonical aritations only)
  int alpha(const Model& x, int l) const;
  bool is_model_hom(const Model& x, const Model& y, int h) const;
  std::vector<int> model_homs(const Model& x, const Model& y) const;
  // Stored form of the model with carrier d whose functor form is g(l, e).
  Model from_gamma(int carrier, const std::function<int(int, int)>& g) const;
  Report check_model(const Model& x) const;

  // Layout helpers
  int alpha_offset(int carrier, int b) const { return alpha_off_[carrier][b]; }
  int gamma_offset(int carrier, int l) const { return gamma_off_[carrier][l]; }

 private:
  ProtoTheory th_;
  Aritation ar_;
  std::vector<std::vector<int>> alpha_off_, gamma_off_;
  std::vector<int> gens_;  // generating theory morphisms relative to L
  std::vector<std::vector<std::pair<int, int>>> decomp_;  // l ↦ (k, j) with k∘j = l
  std::vector<Model> solve_alpha(int d, std::size_t limit) const;
  std::vector<Model> solve_gamma(int d, std::size_t limit) const;
};

using SemPtr = std::shared_ptr<const Semantics>;

struct ModelCategory {
  SemPtr sem;
  CatPtr cat;
  FinFunctor forget;
  std::vector<Model> models;
  std::optional<int> find(const Model& x) const;
  int morphism(int x, int y, int h) const;  // model-category morphism over base h, or -1
  int base_morphism(int k) const { return forget.mor[k]; }

  std::map<Model, int> index_;
  std::map<std::tuple<int, int, int>, int> mor_index_;
};

ModelCategory model_category(const SemPtr& sem);
// Full subcategory on the given models, kept in the given order.
ModelCategory model_category(const SemPtr& sem, std::vector<Model> models);

// Γ ↦ Γ∘P, from mod(to) to mod(from).
FinFunctor sem_on_morphism(const TheoryMorphism& p, const ModelCategory& mod_to, const ModelCategory& mod_from);

struct ProductOfModels {
  Model model;
  int pi1 = -1, pi2 = -1;  // base projections
};

ProductOfModels product_of_models(const Semantics& sem, const Model& x, const Model& y);

// Family a ↦ <a, U−> of presheaves on M together with the action of arity morphisms.
struct PresheafFamily {
  CatPtr arities;
  CatPtr domain;  // M
  std::vector<SetFunctor> presheaf;
  std::vector<SetNat> action;  // per arity morphism
};

PresheafFamily presheaf_family(const FinFunctor& u, const Aritation& ar);
// <a, X> = X^a for arities FinSet_{<=k}^op, U an arbitrary Set-valued functor.
PresheafFamily power_family(const SetFunctor& u, const FinSetCategory& arity_sets, const CatPtr& arities);

struct Structure {
  ProtoTheory theory;  // str(U): A → thr(U)
  PresheafFamily family;
  std::vector<NatSpace> homs;  // per (a, a′), index a * n + a′
  std::vector<int> first;      // theory morphism id of the first element of each hom
  // theory morphism whose components equal `flat`, or -1
  int lookup(int a, int a2, const std::vector<int>& flat) const;
  const std::vector<int>& components(int morphism) const;
  int source_arity(int morphism) const;

  struct Index {
    std::vector<int> probe;
    std::map<std::vector<int>, int> table;
  };
  std::vector<Index> index_;
  std::vector<std::pair<int, int>> where_;  // theory morphism -> (hom index, solution index)
};

// Throws TruncationError past kMaxStructureMorphisms morphisms in total.
inline constexpr std::size_t kMaxStructureMorphisms = 4096;
Structure structure(const PresheafFamily& family);
Structure structure(const FinFunctor& u, const Aritation& ar);
// str(Q): thr(U) → thr(U∘Q), γ ↦ γQ
FinFunctor structure_on_morphism(const Structure& su, const Structure& suq, const FinFunctor& q);

// R: M → mod(L) with forget∘R = U. Returns Ψ(R): 𝓛 → thr(U).
FinFunctor psi(const ModelCategory& mod, const FinFunctor& r, const Structure& s, const FinFunctor& u);
// S: 𝓛 → thr(U) with S∘L = str(U). Returns Θ(S): M → mod(L).
FinFunctor theta(const ModelCategory& mod, const FinFunctor& s_fun, const Structure& s, const FinFunctor& u);
// All R: M → mod(L) with forget∘R = U.
std::vector<FinFunctor> functors_over(const ModelCategory& mod, const FinFunctor& u, std::size_t limit = kNoLimit);

struct Counit {
  ModelCategory mod;
  Structure str;
  TheoryMorphism E;  // L → str(sem(L))
};

Counit counit(const SemPtr& sem);

// One-object theory with endomorphisms M over the terminal arity category.
ProtoTheory monoid_point_prototheory(int n, const std::vector<int>& mul, int unit,
                                     const std::vector<std::string>& names = {});

// Morphisms not reachable by composition from `fixed` and earlier picks, in index order.
std::vector<int> relative_generators(const FinCategory& c, const std::vector<char>& fixed);

}  // namespace protocat
