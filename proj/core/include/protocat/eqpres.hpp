#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "protocat/fincat.hpp"

namespace protocat {

struct Symbol {
  std::string name;
  int arity = 0;
};

struct OperatorDomain {
  std::vector<Symbol> symbols;
  int add(std::string name, int arity);  // throws InputError on a duplicate name
  int find(std::string_view name) const;  // -1 if absent
};

// Hash-consed terms: structurally equal trees share an id.
struct TermNode {
  int op = -1;  // symbol index, or -(i + 1) for the variable x_{i+1}
  std::vector<int> args;
  int depth = 0;
};

class TermBank {
 public:
  int var(int i);
  int apply(int op, std::vector<int> args);
  const TermNode& node(int t) const { return nodes_[t]; }
  int size() const { return static_cast<int>(nodes_.size()); }
  bool is_var(int t) const { return nodes_[t].op < 0; }
  int var_index(int t) const { return -nodes_[t].op - 1; }
  int variables(int t) const;  // 1 + highest variable index, 0 for closed terms
  // t[(s_i / x_i)]; s must cover the variables of t
  int substitute(int t, const std::vector<int>& s);
  std::string print(int t, const OperatorDomain& d) const;

 private:
  std::vector<TermNode> nodes_;
  std::map<std::pair<int, std::vector<int>>, int> index_;
};

struct Equation {
  int arity = 0;
  int lhs = -1, rhs = -1;
};

struct Presentation {
  OperatorDomain domain;
  std::shared_ptr<TermBank> terms = std::make_shared<TermBank>();
  std::vector<Equation> equations;
};

Report validate_presentation(const Presentation& p);

// Prefix notation: x1, e, i(x1), m(x1,m(x2,x3)). Throws InputError with the column.
int parse_term(TermBank& bank, const OperatorDomain& d, std::string_view text);
// Lines "op <name> <arity>" and "eq [<arity>] <term> = <term>"; '#' starts a comment.
Presentation parse_presentation(std::string_view text);
std::string print_presentation(const Presentation& p);

// e, i, m with associativity, left and right unit and right inverse.
Presentation group_presentation();

// All terms in x1..xn of depth <= depth_bound, ordered by (depth, symbol, children).
std::vector<int> generate_terms(TermBank& bank, const OperatorDomain& d, int n, int depth_bound);

struct OmegaModel {
  int size = 0;
  std::vector<Table> ops;  // ops[s][args as a base-size number, first argument most significant]
  bool operator==(const OmegaModel& o) const { return size == o.size && ops == o.ops; }
  bool operator<(const OmegaModel& o) const { return std::tie(size, ops) < std::tie(o.size, o.ops); }
};

Report validate_omega_model(const OperatorDomain& d, const OmegaModel& a);

// [t]_A : X^n → X as a table over lexicographic n-tuples. Throws PreconditionError on a missing symbol.
Table interpret_term(const TermBank& bank, int t, const OmegaModel& a, int n);
// Throws PreconditionError when a side uses more variables than the equation's arity.
bool satisfies(const TermBank& bank, const OmegaModel& a, const Equation& eq);

// Every model on {0..carrier_size-1}, ordered by the interpretation tables.
std::vector<OmegaModel> enumerate_omega_models(const Presentation& p, int carrier_size);
std::vector<Table> model_homomorphisms(const OperatorDomain& d, const OmegaModel& a, const OmegaModel& b);

struct Closure {
  int arity = 0, depth = 0;
  std::vector<int> terms;  // generate_terms order
  std::vector<int> cls;    // class per position, numbered by first occurrence
  int classes = 0;
  std::size_t instances = 0;  // axiom instances inside the bound
  int class_of(int term) const;
};

// Smallest equivalence on the bounded terms containing the axiom instances that fit the bound
// and closed under applying an operation symbol to equivalent arguments.
Closure congruence_closure(const Presentation& p, int n, int depth_bound);

struct SoundnessReport {
  int arity = 0, depth = 0, carrier_bound = 0;
  std::size_t terms = 0, models = 0;
  int provable_classes = 0, semantic_classes = 0;
  Report violations;                         // provable but semantically different
  std::vector<std::pair<int, int>> unproven;  // semantically equal, not provable at this depth (first few)
  std::size_t unproven_pairs = 0;            // classes merged semantically but not syntactically
};

SoundnessReport soundness_check(const Presentation& p, int n, int depth_bound, int carrier_bound);

// Ω_n = Nat(U^n, U) for n <= arity_bound, with the tautological structure on each U m.
struct Str0 {
  OperatorDomain domain;
  std::vector<std::vector<SetNat>> ops;  // per arity
  std::vector<OmegaModel> tautological;  // per object of the domain category
  Report report;                         // U f is a homomorphism for every morphism f
};

Str0 str0(const SetFunctor& u, int arity_bound);

}  // namespace protocat
