#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace protocat {

// Malformed or unresolvable input. The CLI maps this to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A finite computation would exceed its size cap. Reported like malformed input.
struct TruncationError : InputError {
  using InputError::InputError;
};

// An operation was called outside its precondition ("no fill-in", "not a theory morphism", ...).
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Table = std::vector<int>;

inline constexpr std::size_t kNoLimit = std::numeric_limits<std::size_t>::max();

std::string zpad(long long v, int width);
int decimal_width(long long v);

struct Violation {
  std::string law;
  std::string detail;
};

struct Report {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  void add(std::string law, std::string detail) { violations.push_back({std::move(law), std::move(detail)}); }
  void merge(const Report& other, const std::string& prefix = {});
};

class FinCategory {
 public:
  class Builder {
   public:
    int add_object(std::string name);
    int add_morphism(std::string name, int src, int dst);
    void set_identity(int obj, int mor);
    void set_compose(int g, int f, int gf);
    int objects() const { return static_cast<int>(obj_names_.size()); }
    int morphisms() const { return static_cast<int>(mor_names_.size()); }
    int src(int f) const { return src_[f]; }
    int dst(int f) const { return dst_[f]; }
    // Sorts objects and morphisms by name. Composable pairs with no explicit entry are
    // filled from `composer` (builder indices in, builder index out); without a composer
    // they stay undefined and validate_category reports them.
    // `perm`, when given, receives builder morphism index -> final index.
    std::shared_ptr<const FinCategory> build(const std::function<int(int, int)>& composer = {},
                                             std::vector<int>* perm = nullptr) const;

   private:
    std::vector<std::string> obj_names_, mor_names_;
    std::vector<int> src_, dst_;
    std::vector<int> ident_;
    std::vector<std::tuple<int, int, int>> explicit_;
  };

  int num_objects() const { return n_; }
  int num_morphisms() const { return m_; }
  const std::string& object_name(int a) const { return obj_names_[a]; }
  const std::string& morphism_name(int f) const { return mor_names_[f]; }
  int src(int f) const { return src_[f]; }
  int dst(int f) const { return dst_[f]; }
  int identity(int a) const { return ident_[a]; }
  bool is_identity(int f) const { return f >= 0 && ident_[src_[f]] == f; }
  // g∘f, or -1 when undefined
  int compose(int g, int f) const { return comp_[static_cast<std::size_t>(g) * m_ + f]; }
  const std::vector<int>& hom(int a, int b) const { return homs_[static_cast<std::size_t>(a) * n_ + b]; }
  int hom_pos(int f) const { return hom_pos_[f]; }
  const std::vector<int>& out(int a) const { return out_[a]; }
  const std::vector<int>& in(int a) const { return in_[a]; }
  std::optional<int> find_object(std::string_view name) const;
  std::optional<int> find_morphism(std::string_view name) const;
  int object(std::string_view name) const;
  int morphism(std::string_view name) const;

  std::shared_ptr<const FinCategory> opposite() const;
  bool operator==(const FinCategory& o) const;

 private:
  int n_ = 0, m_ = 0;
  std::vector<std::string> obj_names_, mor_names_;
  std::vector<int> src_, dst_, ident_, hom_pos_;
  std::vector<int32_t> comp_;
  std::vector<std::vector<int>> homs_, out_, in_;
  void index();
};

using CatPtr = std::shared_ptr<const FinCategory>;

bool same_category(const CatPtr& a, const CatPtr& b);

Report validate_category(const FinCategory& c);

// Stock categories.
CatPtr empty_category();
CatPtr terminal_category();
CatPtr discrete_category(int n);
CatPtr chain_category(int n);  // 0 < 1 < ... < n-1
CatPtr poset_category(int n, const std::function<bool(int, int)>& leq, const std::vector<std::string>& names = {});
CatPtr monoid_category(int n, const std::vector<int>& mul, int unit, const std::vector<std::string>& names = {});
CatPtr full_subcategory(const FinCategory& c, const std::vector<int>& objects);

struct FinFunctor {
  CatPtr src, dst;
  std::vector<int> obj, mor;
  bool operator==(const FinFunctor& o) const { return obj == o.obj && mor == o.mor; }
};

Report validate_functor(const FinFunctor& f);
FinFunctor identity_functor(const CatPtr& c);
FinFunctor compose(const FinFunctor& g, const FinFunctor& f);  // g∘f
FinFunctor opposite_functor(const FinFunctor& f, const CatPtr& src_op, const CatPtr& dst_op);
FinFunctor constant_functor(const CatPtr& src, const CatPtr& dst, int object);
FinFunctor inclusion_functor(const CatPtr& sub, const CatPtr& whole);  // by names
bool is_bijective_on_objects(const FinFunctor& f);
bool is_full_and_faithful(const FinFunctor& f);

// Exhaustive, canonical order (lexicographic on object images then morphism images).
std::vector<FinFunctor> enumerate_functors(const CatPtr& a, const CatPtr& b, std::size_t limit = kNoLimit);

struct NatTransformation {
  FinFunctor src, dst;
  std::vector<int> comp;
};

Report validate_nat(const NatTransformation& t);
std::vector<NatTransformation> enumerate_nat_transformations(const FinFunctor& f, const FinFunctor& g);

// Functor into finite sets: an object goes to {0..size-1}, a morphism to a function table.
struct SetFunctor {
  CatPtr dom;
  std::vector<int> size;
  std::vector<Table> map;
  int apply(int f, int x) const { return map[f][x]; }
};

Report validate_set_functor(const SetFunctor& f);
SetFunctor compose(const SetFunctor& u, const FinFunctor& q);  // u∘q
SetFunctor power(const SetFunctor& u, int n);                  // x ↦ (Ux)^n, lexicographic tuples
SetFunctor hom_functor(const CatPtr& c, int a);                // c(a, −), elements are hom positions
SetFunctor terminal_set_functor(const CatPtr& c);

struct SetNat {
  std::vector<Table> comp;
  bool operator==(const SetNat& o) const { return comp == o.comp; }
  bool operator<(const SetNat& o) const { return comp < o.comp; }
};

bool is_natural(const SetFunctor& f, const SetFunctor& g, const SetNat& t);

// Flattened layout: variable (object a, element x) sits at offset[a] + x.
struct NatSpace {
  std::vector<int> offset;
  int vars = 0;
  std::vector<std::vector<int>> solutions;  // lexicographic order
  SetNat unflatten(std::size_t i) const;
};

NatSpace enumerate_set_nat_flat(const SetFunctor& f, const SetFunctor& g, std::size_t limit = kNoLimit);
std::vector<SetNat> enumerate_set_nat(const SetFunctor& f, const SetFunctor& g, std::size_t limit = kNoLimit);

struct SetLimit {
  std::vector<std::vector<int>> families;  // apex element i ↦ family[i][object]
  std::size_t apex() const { return families.size(); }
  int project(std::size_t i, int object) const { return families[i][object]; }
};

SetLimit limit_of_finset_diagram(const SetFunctor& d);

// A finite category equipped with a faithful underlying-set functor.
struct ConcreteCategory {
  CatPtr cat;
  SetFunctor under;
};

struct FinSetCategory : ConcreteCategory {
  int bound = 0;
  // morphism of FinSet_{<=bound} with the given table
  int morphism(int x, int y, const Table& t) const;
  static int code(int y, const Table& t);
};

FinSetCategory finset_category(int bound);
std::string finset_morphism_name(int x, int y, const Table& t, int bound);

struct CommaCategory {
  CatPtr cat;
  FinFunctor proj;                            // to the domain of f
  std::vector<std::pair<int, int>> objects;   // (a, φ: c → f a)
};

// (c ↓ f)
CommaCategory comma_category(const FinFunctor& f, int c);

struct Factorization {
  CatPtr mid;
  FinFunctor e, n;
};

Factorization bo_ff_factorize(const FinFunctor& f);

// Square top: A→B, e: A→C (bo), n: B→D (ff), bottom: C→D. Returns the unique h: C→B.
FinFunctor fill_in(const FinFunctor& e, const FinFunctor& n, const FinFunctor& top, const FinFunctor& bottom);

// g: 𝓛 → Set, l: A → 𝓛 bijective on objects, phi: g∘l ≅ target. Returns g′ with g′∘l = target.
SetFunctor transport_along_iso(const SetFunctor& g, const FinFunctor& l, const SetNat& phi, const SetFunctor& target);

}  // namespace protocat
