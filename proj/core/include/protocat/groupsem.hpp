#pragma once

#include <optional>
#include <string>

#include "protocat/monads.hpp"

namespace protocat {

struct FinMonoid {
  int n = 1;
  std::vector<int> mul{0};  // mul[a * n + b] = a·b
  int unit = 0;
  std::vector<std::string> names;
  int operator()(int a, int b) const { return mul[a * n + b]; }
  bool is_group() const;
  std::vector<int> inverse() const;  // empty unless a group
};

Report validate_monoid(const FinMonoid& m);
FinMonoid trivial_monoid();
FinMonoid cyclic_group(int n);
FinMonoid product_monoid(const FinMonoid& a, const FinMonoid& b);
// All monoids of order n up to isomorphism, unit 0, canonical tables in increasing order.
std::vector<FinMonoid> enumerate_monoids(int n);
std::optional<std::vector<int>> monoid_isomorphism(const FinMonoid& a, const FinMonoid& b);
bool is_monoid_hom(const FinMonoid& a, const FinMonoid& b, const Table& h);

SetMonad monoid_writer(const FinMonoid& m);

// E(M): bo/ff image of the free M-set functor, over FinSet_{<=N}^op.
// `table` holds, per theory morphism S′ → S, the map S → M × S′ it corresponds to.
struct MonoidTheory : KleisliTheory {
  CatPtr free_msets;  // free M-sets M × S with equivariant maps
};

MonoidTheory e_of_monoid(const FinMonoid& m, const FinSetCategory& base);

struct MonoidRecognition {
  bool monoidal = false;
  std::string reason;
  FinMonoid monoid;   // L(L1, L1), multiplication = composition in the theory category
  FinFunctor iso;     // theory → E(monoid), empty unless monoidal
};

MonoidRecognition recognize_monoid_theory(const ProtoTheory& l, const FinSetCategory& base);

// Left actions on carriers 0..N, act[m * |X| + x]; equivariant maps.
EilenbergMoore mset_category(const FinMonoid& m, const FinSetCategory& base);
KleisliComparison models_equal_msets(const FinMonoid& m, const FinSetCategory& base);

// ---------------------------------------------------------------------------
// Groups

std::vector<std::vector<int>> subgroups(const FinMonoid& g);  // sorted element lists
std::vector<std::vector<int>> normal_subgroups(const FinMonoid& g);

struct Quotient {
  FinMonoid target;
  Table map;  // surjective hom G → target
};

Quotient quotient_by(const FinMonoid& g, const std::vector<int>& normal);
std::vector<Quotient> full_quotient_family(const FinMonoid& g);

struct ProfiniteCompletion {
  std::vector<Quotient> family;
  std::vector<std::vector<int>> elements;  // compatible families ξ, ξ[i] ∈ family[i].target
  FinMonoid group;
  Table eta;  // G → Ĝ
};

// Throws PreconditionError when the family is not made of surjective homs.
ProfiniteCompletion profinite_completion(const FinMonoid& g, const std::vector<Quotient>& family);

struct GSet {
  int size = 0;
  std::vector<int> act;  // act[g * size + x]
  int operator()(int g, int x) const { return act[g * size + x]; }
};

// One action per isomorphism class, carriers <= bound, as disjoint unions of coset spaces.
std::vector<GSet> gset_skeleton(const FinMonoid& g, int bound);
// All equivariant maps X → Y.
std::vector<Table> equivariant_maps(const FinMonoid& g, const GSet& x, const GSet& y);

struct NatEndomorphisms {
  int bound = 0;
  bool bound_ok = false;                   // regular action present
  std::vector<GSet> objects;               // skeleton
  std::vector<std::vector<Table>> elements;  // natural ξ, components per object
  FinMonoid monoid;                        // composition
  Table cayley;                            // g ↦ (x ↦ g·x)
  std::size_t maps_checked = 0;
};

NatEndomorphisms nat_endomorphism_monoid(const FinMonoid& g, int bound);

struct PhiCheck {
  Table phi;      // Ĝ → Nat(U, U), -1 where Φ(ξ) is not natural
  Report report;  // naturality, homomorphism, bijectivity, Φ∘η = Cayley
};

PhiCheck phi_check(const FinMonoid& g, const ProfiniteCompletion& completion, const NatEndomorphisms& nat);

}  // namespace protocat
