#pragma once

#include <optional>
#include <string>

#include "protocat/proth.hpp"

namespace protocat {

// Monad on finite sets given by formulas, so Tn may exceed any truncation bound.
struct SetMonad {
  std::string name;
  std::function<int(int)> size;                                 // |Tn|
  std::function<Table(int n, int m, const Table& f)> fmap;      // Tf for f: n → m
  std::function<Table(int n)> unit;                             // n → Tn
  std::function<Table(int n)> mult;                             // TTn → Tn
};

SetMonad identity_set_monad();
SetMonad maybe_monad();  // X + 1, the new point is the last element
// G × X for a monoid G, element (g, x) encoded g * |X| + x
SetMonad writer_monad(int order, const std::vector<int>& mul, int unit, const std::string& name = "writer");

// Unit, associativity and functoriality on carriers up to `bound`.
Report validate_set_monad(const SetMonad& t, int bound);

// Abstract monad on a finite category.
struct FinMonad {
  CatPtr base;
  FinFunctor t;
  std::vector<int> unit;  // η_b: b → Tb
  std::vector<int> mult;  // μ_b: TTb → Tb
};

Report validate_fin_monad(const FinMonad& t);
FinMonad identity_monad(const CatPtr& base);

struct KleisliTheory {
  ProtoTheory theory;           // arities = base^op
  std::vector<int> source;      // theory morphism b′ → b ...
  std::vector<int> target;      // ... represents a map b → T b′
  std::vector<Table> table;     // concrete form (SetMonad)
  std::vector<int> base_map;    // abstract form (FinMonad): the base morphism b → T b′
  int find(int b2, int b, const Table& t) const;  // concrete, -1 if absent
  int find_base(int b2, int f) const;             // abstract, -1 if absent

  std::map<std::tuple<int, int, Table>, int> index_;
  std::map<std::pair<int, int>, int> base_index_;
};

KleisliTheory kleisli(const SetMonad& t, const FinSetCategory& base);
KleisliTheory kleisli(const FinMonad& t);

struct EilenbergMoore {
  CatPtr cat;
  FinFunctor forget;
  std::vector<int> carrier;
  std::vector<Table> action_table;  // concrete: Td → d
  std::vector<int> action;          // abstract: base morphism Td → d
};

EilenbergMoore eilenberg_moore(const SetMonad& t, const FinSetCategory& base);
// Category on the given algebras whose morphisms are the base morphisms accepted by is_hom(i, j, f).
EilenbergMoore algebra_category(std::vector<int> carrier, std::vector<Table> action_table, std::vector<int> action,
                                const CatPtr& base, const std::function<bool(int, int, int)>& is_hom);
EilenbergMoore eilenberg_moore(const FinMonad& t);

struct KleisliComparison {
  ModelCategory mod;
  EilenbergMoore em;
  FinFunctor to_em, from_em;
  Report report;  // inverse laws and compatibility with the forgetful functors
};

KleisliComparison compare_kleisli_models(const SetMonad& t, const FinSetCategory& base);
// Same, against a supplied algebra category (action tables in the encoding of t).
KleisliComparison compare_kleisli_models(const SetMonad& t, const FinSetCategory& base, EilenbergMoore algebras);
// Same, with the theory supplied in Kleisli form (concrete tables).
KleisliComparison compare_kleisli_models(const KleisliTheory& kt, const SetMonad& t, const FinSetCategory& base,
                                         EilenbergMoore algebras);
KleisliComparison compare_kleisli_models(const FinMonad& t);

// Free/forgetful adjunction of a set monad truncated at `bound`: algebras with carrier <= bound
// plus the free algebras on 0..bound. thr(U)(a, a′) is compared with base(a′, Ta) through
// γ ↦ γ_{Fa}(η_a).
struct FreeForgetful {
  CatPtr algebras;
  SetFunctor under;
  std::vector<int> free_object;  // a ↦ object F a
  Structure str;
  KleisliTheory kle;
  FinFunctor comparison;  // thr(U) → kle(T)
  Report report;
};

FreeForgetful free_forgetful_structure(const SetMonad& t, const FinSetCategory& base);

// U: M → B with left adjoint F, unit η (B-morphisms b → UFb) and counit ε (M-morphisms FUm → m).
struct AdjunctionStructure {
  FinMonad monad;  // (UF, η, UεF)
  Structure str;
  KleisliTheory kle;
  FinFunctor comparison;  // thr(U) → kle(UF), γ ↦ γ_{Fb}(η_b)
  Report report;
};

Report check_adjunction(const FinFunctor& u, const FinFunctor& f, const std::vector<int>& eta,
                        const std::vector<int>& eps);
AdjunctionStructure structure_of_right_adjoint(const FinFunctor& u, const FinFunctor& f, const std::vector<int>& eta,
                                               const std::vector<int>& eps);

// Canonical-aritation theory with representable operation presheaves, else nullopt.
std::optional<FinMonad> recognize_monadic(const ProtoTheory& l);

// Monad isomorphism T → T′ given by components, or nullopt.
std::optional<std::vector<int>> monad_isomorphism(const FinMonad& t, const FinMonad& t2);

struct CodensityMonad {
  FinMonad monad;
  std::vector<CommaCategory> comma;           // (b ↓ u)
  std::vector<std::vector<int>> projection;   // p^b_j: Tb → u(m_j)
};

// Pointwise limits over (b ↓ u); throws PreconditionError when a limit is absent from B.
CodensityMonad codensity_monad(const FinFunctor& u);

// Universal cone over d: a cone from the first object admitting one, or nullopt.
struct Cone {
  int apex = -1;
  std::vector<int> leg;
};
std::optional<Cone> limit_in(const FinFunctor& d);
// Factorization of the cone (apex c, legs) through the limit, or -1.
int factor_through(const FinFunctor& d, const Cone& limit, int c, const std::vector<int>& legs);

struct CodensityStructure {
  CodensityMonad codensity;
  Structure str;
  KleisliTheory kle;
  FinFunctor comparison;  // thr(U) → kle(T)
  Report report;
};

CodensityStructure codensity_structure(const FinFunctor& u);

// Size of the pointwise codensity limit at stage c for U = const_b into a finite-set base.
std::size_t const_codensity_size(const FinSetCategory& base, int b, int c);

// Monad morphisms T → T′ on the same base, by exhaustive search.
Report validate_monad_morphism(const FinMonad& t, const FinMonad& t2, const std::vector<int>& phi);
std::vector<std::vector<int>> enumerate_monad_morphisms(const FinMonad& t, const FinMonad& t2);
TheoryMorphism kle_on_morphism(const KleisliTheory& kt, const KleisliTheory& kt2, const FinMonad& t,
                               const FinMonad& t2, const std::vector<int>& phi);
// Concrete form: φ_n: Tn → T′n as tables.
TheoryMorphism kle_on_morphism(const KleisliTheory& kt, const KleisliTheory& kt2, const SetMonad& t,
                               const SetMonad& t2, const std::function<Table(int)>& phi);

}  // namespace protocat
