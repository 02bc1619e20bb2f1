#include "protocat/commands.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <map>

#include <json.hpp>

namespace protocat {

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{
      "validate", "factorize",  "semantics",    "structure",  "check-adjunction", "kleisli",
      "recognize-monad", "codensity", "models",  "closure",    "soundness",        "monoid-theory",
      "profinite", "phi-check",  "complete?",    "completion", "enough-subobjects", "verify-thesis"};
  return names;
}

namespace {

std::string sanitize(std::string s) {
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.' && c != '-') c = '_';
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '-' || s[0] == '.') s = "x" + s;
  return s;
}

std::string first_violation(const Report& r) {
  return r.ok() ? std::string() : r.violations.front().law + " " + r.violations.front().detail;
}

void fail_all(CheckResult& c, const Report& r, const std::string& prefix = {}) {
  for (const Violation& v : r.violations) c.fail(prefix + v.law + ": " + v.detail);
}

CheckResult check(int id, std::string name) {
  CheckResult c;
  c.id = id;
  c.name = std::move(name);
  c.status = CheckStatus::pass;
  return c;
}

std::string table_text(const Table& t) {
  std::string s;
  for (int v : t) s += (s.empty() ? "" : " ") + std::to_string(v);
  return "[" + s + "]";
}

// Resolves item arguments against files, the positional workspace and stock names.
class Resolver {
 public:
  explicit Resolver(const CommandArgs& a) : bound_(a.bound.value_or(3)) {
    if (bound_ < 0 || bound_ > 4) throw InputError("--bound must lie in 0..4 for finite-set truncations");
    for (const std::string& f : a.files) load(f);
  }

  Workspace ws;
  int bound() const { return bound_; }

  const FinFunctor& functor(const std::string& v, std::string* name = nullptr) {
    require(v, "--functor");
    std::string n = pick(ItemKind::functor, v);
    if (n.empty()) throw InputError("cannot resolve functor '" + v + "'");
    if (name) *name = n;
    return ws.functor(n);
  }
  const std::pair<std::string, std::string>& functor_refs(const std::string& name) const {
    return ws.functor_refs.at(name);
  }

  CatPtr category(const std::string& v, std::string* ref = nullptr) {
    require(v, "--category");
    std::string n = pick(ItemKind::category, v);
    if (ref) *ref = n.empty() ? v : n;
    return ws.category(n.empty() ? v : n);
  }

  FinMonoid monoid(const std::string& v) {
    require(v, "--monoid");
    std::string n = pick(ItemKind::monoid, v);
    return ws.monoid(n.empty() ? v : n);
  }

  Presentation presentation(const std::string& v) {
    require(v, "--presentation");
    std::string n = pick(ItemKind::presentation, v);
    return ws.presentation(n.empty() ? v : n);
  }

  SetMonad monad(const std::string& v) {
    require(v, "--monad");
    if (v.rfind("writer:", 0) == 0) return monoid_writer(monoid(v.substr(7)));
    return monad_by_name(ws, v);
  }

  // Stock: kle:<monad>, point:<monoid>, e:<monoid>, all over finset<bound>.
  TheoryEntry theory(const std::string& v, std::string* label = nullptr) {
    require(v, "--theory");
    std::string n = pick(ItemKind::theory, v);
    if (label) *label = sanitize(n.empty() ? v : n);
    if (!n.empty()) return ws.theory(n);
    const FinSetCategory fs = finset_category(bound_);
    TheoryEntry t;
    t.base = "finset" + std::to_string(bound_);
    if (v.rfind("kle:", 0) == 0) {
      t.theory = kleisli(monad(v.substr(4)), fs).theory;
      t.aritation = canonical_aritation(fs.cat);
      t.aritation_kind = "canonical";
    } else if (v.rfind("e:", 0) == 0) {
      t.theory = e_of_monoid(monoid(v.substr(2)), fs).theory;
      t.aritation = canonical_aritation(fs.cat);
      t.aritation_kind = "canonical";
    } else if (v.rfind("point:", 0) == 0) {
      FinMonoid m = monoid(v.substr(6));
      t.theory = monoid_point_prototheory(m.n, m.mul, m.unit, m.names);
      t.aritation = projection_aritation(fs);
      t.aritation_kind = "projection";
    } else {
      throw InputError("cannot resolve theory '" + v + "'");
    }
    return t;
  }

 private:
  int bound_;
  std::map<std::string, std::vector<std::pair<ItemKind, std::string>>> loaded_;

  static void require(const std::string& v, const char* flag) {
    if (v.empty()) throw InputError(std::string("missing ") + flag);
  }

  const std::vector<std::pair<ItemKind, std::string>>& load(const std::string& path) {
    auto canon = std::filesystem::weakly_canonical(path).string();
    auto it = loaded_.find(canon);
    if (it != loaded_.end()) return it->second;
    return loaded_[canon] = load_file(ws, path);
  }

  static bool is_file(const std::string& p) {
    std::error_code ec;
    return std::filesystem::is_regular_file(p, ec);
  }

  // Name of the item in the workspace, or "" when v should be tried as a stock name.
  std::string pick(ItemKind kind, const std::string& v) {
    if (is_file(v)) {
      std::vector<std::string> found;
      for (const auto& [k, n] : load(v))
        if (k == kind) found.push_back(n);
      if (found.size() != 1)
        throw InputError(v + ": declares " + std::to_string(found.size()) + " " + kind_name(kind) +
                         " items; use " + v + ":<name>");
      return found[0];
    }
    std::size_t colon = v.rfind(':');
    if (colon != std::string::npos && is_file(v.substr(0, colon))) {
      const std::string name = v.substr(colon + 1);
      for (const auto& [k, n] : load(v.substr(0, colon)))
        if (k == kind && n == name) return n;
      throw InputError(v.substr(0, colon) + ": no " + kind_name(kind) + " named '" + name + "'");
    }
    for (const auto& [k, n] : ws.order)
      if (k == kind && n == v) return n;
    return {};
  }
};

// ---------------------------------------------------------------------------

using Args = CommandArgs;
using Out = CommandOutput;

void cmd_validate(Resolver& r, const Args& a, Out& out) {
  if (a.files.empty()) throw InputError("validate needs at least one file");
  CheckResult c = check(1, "validate");
  fail_all(c, validate_workspace(r.ws));
  std::map<std::string, long long> counts;
  for (const auto& [k, n] : r.ws.order) ++counts[kind_name(k)];
  for (const auto& [k, v] : counts) c.stat(k + " items", v);
  out.report.checks.push_back(std::move(c));
}

void cmd_factorize(Resolver& r, const Args& a, Out& out) {
  std::string name;
  const FinFunctor& f = r.functor(a.functor, &name);
  Factorization fac = bo_ff_factorize(f);
  CheckResult c = check(1, "bo-ff-factorization");
  if (!validate_category(*fac.mid).ok()) c.fail("middle category: " + first_violation(validate_category(*fac.mid)));
  if (!is_bijective_on_objects(fac.e)) c.fail("first factor is not bijective on objects");
  if (!is_full_and_faithful(fac.n)) c.fail("second factor is not full and faithful");
  if (!(compose(fac.n, fac.e) == f)) c.fail("factors do not compose to the functor");
  c.stat("middle objects", fac.mid->num_objects());
  c.stat("middle morphisms", fac.mid->num_morphisms());
  out.report.checks.push_back(std::move(c));
  const auto& refs = r.functor_refs(name);
  // user categories travel with the artifact so it loads on its own
  for (std::string ref : {refs.first, refs.second}) {
    if (ref.size() > 3 && ref.compare(ref.size() - 3, 3, "^op") == 0) ref.resize(ref.size() - 3);
    auto it = r.ws.categories.find(ref);
    if (it != r.ws.categories.end() && !out.artifact.contains(ref)) out.artifact.add_category(ref, it->second);
  }
  const std::string mid = sanitize(name + "_mid");
  out.artifact.add_category(mid, fac.mid);
  out.artifact.add_functor(sanitize(name + "_e"), fac.e, refs.first, mid);
  out.artifact.add_functor(sanitize(name + "_n"), fac.n, mid, refs.second);
}

void cmd_semantics(Resolver& r, const Args& a, Out& out) {
  std::string label;
  TheoryEntry t = r.theory(a.theory, &label);
  auto sem = std::make_shared<Semantics>(t.theory, t.aritation);
  ModelCategory mod = model_category(sem);
  CheckResult c = check(1, "models");
  const FinCategory& B = *t.aritation.base;
  std::vector<long long> per(B.num_objects());
  for (const Model& x : mod.models) {
    ++per[x.carrier];
    Report laws = sem->check_model(x);
    if (!laws.ok()) c.fail("model on " + B.object_name(x.carrier) + ": " + first_violation(laws));
    if (sem->algebra_form())
      for (int b = 0; b < B.num_objects(); ++b)
        for (int f : B.hom(b, x.carrier))
          if (sem->alpha(x, t.theory.L.mor[f]) != f) c.fail("alpha(L " + B.morphism_name(f) + ") differs");
  }
  for (int d = 0; d < B.num_objects(); ++d) c.stat("carrier " + B.object_name(d), per[d]);
  c.stat("model category objects", mod.cat->num_objects());
  c.stat("model category morphisms", mod.cat->num_morphisms());
  Report v = validate_category(*mod.cat);
  if (!v.ok()) c.fail("model category: " + first_violation(v));
  out.report.checks.push_back(std::move(c));
  const std::string cat = sanitize("mod_" + label);
  out.artifact.add_category(cat, mod.cat);
  out.artifact.add_functor(sanitize("forget_" + label), mod.forget, cat, t.base);
}

void cmd_structure(Resolver& r, const Args& a, Out& out) {
  std::string name;
  const FinFunctor& u = r.functor(a.functor, &name);
  const std::string base = r.functor_refs(name).second;
  TheoryEntry t;
  t.base = base;
  t.aritation_kind = a.aritation;
  std::string arities;
  if (a.aritation == "canonical") {
    t.aritation = canonical_aritation(u.dst);
    arities = base + "^op";
  } else if (a.aritation == "projection") {
    if (base.rfind("finset", 0) != 0 || r.ws.categories.count(base))
      throw InputError("projection aritation needs a functor into finset<n>");
    t.aritation = projection_aritation(finset_category(std::stoi(base.substr(6))));
    arities = "terminal";
  } else {
    throw InputError("--aritation must be canonical or projection");
  }
  Structure s = structure(u, t.aritation);
  CheckResult c = check(1, "structure");
  Report v = validate_proto_theory(s.theory);
  if (!v.ok()) c.fail(first_violation(v));
  c.stat("theory objects", s.theory.theory->num_objects());
  c.stat("theory morphisms", s.theory.theory->num_morphisms());
  out.report.checks.push_back(std::move(c));
  const std::string thr = sanitize("thr_" + name), str = sanitize("str_" + name);
  out.artifact.add_category(thr, s.theory.theory);
  out.artifact.add_functor(str, s.theory.L, arities, thr);
  t.theory = s.theory;
  t.category = thr;
  t.functor = str;
  out.artifact.add_theory(sanitize("theory_" + name), std::move(t));
}

void cmd_check_adjunction(Resolver& r, const Args& a, Out& out) {
  TheoryEntry t = r.theory(a.theory);
  const FinFunctor& u = r.functor(a.functor);
  if (!same_category(u.dst, t.aritation.base)) throw InputError("the functor does not land in the theory's base");
  auto sem = std::make_shared<Semantics>(t.theory, t.aritation);
  ModelCategory mod = model_category(sem);
  Structure s = structure(u, t.aritation);
  auto rs = functors_over(mod, u);
  auto ss = enumerate_theory_morphisms(t.theory, s.theory);
  CheckResult c = check(1, "psi-theta-roundtrip");
  c.stat("lifts R", static_cast<long long>(rs.size()));
  c.stat("theory morphisms S", static_cast<long long>(ss.size()));
  if (rs.size() != ss.size()) c.fail("lift and theory-morphism counts differ");
  for (std::size_t i = 0; i < rs.size(); ++i) {
    FinFunctor sf = psi(mod, rs[i], s, u);
    if (!validate_theory_morphism(TheoryMorphism{t.theory, s.theory, sf}).ok())
      c.fail("psi(R" + std::to_string(i) + ") is not a theory morphism");
    else if (!(theta(mod, sf, s, u) == rs[i])) c.fail("theta(psi(R" + std::to_string(i) + ")) differs");
  }
  for (std::size_t i = 0; i < ss.size(); ++i)
    if (!(psi(mod, theta(mod, ss[i], s, u), s, u) == ss[i])) c.fail("psi(theta(S" + std::to_string(i) + ")) differs");
  out.report.checks.push_back(std::move(c));
}

void cmd_kleisli(Resolver& r, const Args& a, Out& out) {
  const SetMonad t = r.monad(a.monad);
  const FinSetCategory fs = finset_category(r.bound());
  KleisliTheory kt = kleisli(t, fs);
  KleisliComparison k = compare_kleisli_models(t, fs);
  CheckResult c = check(1, "kleisli");
  Report v = validate_proto_theory(kt.theory);
  if (!v.ok()) c.fail(first_violation(v));
  c.stat("theory morphisms", kt.theory.theory->num_morphisms());
  out.report.checks.push_back(std::move(c));
  CheckResult m = check(2, "models-are-algebras");
  m.stat("models", k.mod.cat->num_objects());
  m.stat("algebras", k.em.cat->num_objects());
  m.stat("model homs", k.mod.cat->num_morphisms());
  m.stat("algebra homs", k.em.cat->num_morphisms());
  fail_all(m, k.report);
  out.report.checks.push_back(std::move(m));
  const std::string base = "finset" + std::to_string(r.bound());
  const std::string cat = sanitize("kle_" + a.monad), fun = sanitize("L_" + a.monad);
  out.artifact.add_category(cat, kt.theory.theory);
  out.artifact.add_functor(fun, kt.theory.L, base + "^op", cat);
  TheoryEntry te{kt.theory, canonical_aritation(fs.cat), "canonical", base, cat, fun, {}};
  out.artifact.add_theory(sanitize("theory_" + a.monad), std::move(te));
}

void cmd_recognize_monad(Resolver& r, const Args& a, Out& out) {
  TheoryEntry t = r.theory(a.theory);
  CheckResult c = check(1, "monadic");
  auto m = recognize_monadic(t.theory);
  if (!m) {
    c.fail("operation presheaves are not representable over a canonical aritation");
  } else {
    Report v = validate_fin_monad(*m);
    if (!v.ok()) c.fail(first_violation(v));
    const FinCategory& B = *m->base;
    for (int b = 0; b < B.num_objects(); ++b) c.stat("T " + B.object_name(b), B.object_name(m->t.obj[b]));
  }
  out.report.checks.push_back(std::move(c));
}

void cmd_codensity(Resolver& r, const Args& a, Out& out) {
  std::string name;
  const FinFunctor& u = r.functor(a.functor, &name);
  CodensityStructure cs = codensity_structure(u);
  CheckResult c = check(1, "codensity");
  fail_all(c, cs.report);
  Report v = validate_fin_monad(cs.codensity.monad);
  fail_all(c, v, "monad ");
  const FinCategory& B = *u.dst;
  for (int b = 0; b < B.num_objects(); ++b) c.stat("T " + B.object_name(b), B.object_name(cs.codensity.monad.t.obj[b]));
  out.report.checks.push_back(std::move(c));
  const std::string base = r.functor_refs(name).second;
  out.artifact.add_functor(sanitize("T_" + name), cs.codensity.monad.t, base, base);
}

std::string model_text(const Presentation& p, const OmegaModel& m) {
  std::string s;
  for (std::size_t i = 0; i < p.domain.symbols.size(); ++i)
    s += (i ? " " : "") + p.domain.symbols[i].name + "=" + table_text(m.ops[i]);
  return s;
}

void cmd_models(Resolver& r, const Args& a, Out& out) {
  Presentation p = r.presentation(a.presentation);
  const int n = a.carrier.value_or(2);
  if (n < 0 || n > 4) throw InputError("--carrier must lie in 0..4");
  auto ms = enumerate_omega_models(p, n);
  CheckResult c = check(1, "models");
  c.stat("carrier", n);
  c.stat("models", static_cast<long long>(ms.size()));
  for (std::size_t i = 0; i < ms.size() && i < 64; ++i) {
    c.stat("model " + std::to_string(i), model_text(p, ms[i]));
    for (const Equation& e : p.equations)
      if (!satisfies(*p.terms, ms[i], e)) c.fail("model " + std::to_string(i) + " breaks an equation");
  }
  out.report.checks.push_back(std::move(c));
}

int depth_arg(const Args& a) {
  const int d = a.depth.value_or(3);
  if (d < 0 || d > 4) throw InputError("--depth must lie in 0..4");
  return d;
}

int arity_arg(const Args& a) {
  const int n = a.arity.value_or(2);
  if (n < 0 || n > 3) throw InputError("--arity must lie in 0..3");
  return n;
}

void cmd_closure(Resolver& r, const Args& a, Out& out) {
  Presentation p = r.presentation(a.presentation);
  Closure cl = congruence_closure(p, arity_arg(a), depth_arg(a));
  CheckResult c = check(1, "closure");
  c.stat("terms", static_cast<long long>(cl.terms.size()));
  c.stat("axiom instances", static_cast<long long>(cl.instances));
  c.stat("classes", cl.classes);
  std::vector<std::vector<int>> members(cl.classes);
  for (std::size_t i = 0; i < cl.terms.size(); ++i) members[cl.cls[i]].push_back(cl.terms[i]);
  int shown = 0;
  for (int k = 0; k < cl.classes && shown < 32; ++k) {
    if (members[k].size() < 2) continue;
    std::string s;
    for (std::size_t j = 0; j < members[k].size() && j < 6; ++j) s += (j ? " ~ " : "") + p.terms->print(members[k][j], p.domain);
    if (members[k].size() > 6) s += " ~ ... (" + std::to_string(members[k].size()) + ")";
    c.stat("class " + std::to_string(k), s);
    ++shown;
  }
  out.report.checks.push_back(std::move(c));
}

void cmd_soundness(Resolver& r, const Args& a, Out& out) {
  Presentation p = r.presentation(a.presentation);
  SoundnessReport s = soundness_check(p, arity_arg(a), depth_arg(a), r.bound());
  CheckResult c = check(1, "soundness");
  c.stat("terms", static_cast<long long>(s.terms));
  c.stat("models", static_cast<long long>(s.models));
  c.stat("provable classes", s.provable_classes);
  c.stat("semantic classes", s.semantic_classes);
  c.stat("semantically merged, not provable at this depth", static_cast<long long>(s.unproven_pairs));
  for (const auto& [x, y] : s.unproven)
    c.stat("unproven", p.terms->print(x, p.domain) + " = " + p.terms->print(y, p.domain));
  fail_all(c, s.violations);
  out.report.checks.push_back(std::move(c));
}

void cmd_monoid_theory(Resolver& r, const Args& a, Out& out) {
  FinMonoid m = r.monoid(a.monoid);
  const FinSetCategory fs = finset_category(r.bound());
  MonoidTheory e = e_of_monoid(m, fs);
  CheckResult c = check(1, "recognition");
  MonoidRecognition rec = recognize_monoid_theory(e.theory, fs);
  c.stat("theory morphisms", e.theory.theory->num_morphisms());
  if (!rec.monoidal) c.fail("not recognised: " + rec.reason);
  else if (!monoid_isomorphism(rec.monoid, m)) c.fail("recovered monoid is not isomorphic");
  out.report.checks.push_back(std::move(c));
  CheckResult s = check(2, "models-are-actions");
  KleisliComparison k = models_equal_msets(m, fs);
  s.stat("models", k.mod.cat->num_objects());
  s.stat("actions", k.em.cat->num_objects());
  s.stat("model homs", k.mod.cat->num_morphisms());
  s.stat("equivariant maps", k.em.cat->num_morphisms());
  fail_all(s, k.report);
  out.report.checks.push_back(std::move(s));
}

FinMonoid group_arg(Resolver& r, const Args& a) {
  FinMonoid g = r.monoid(a.monoid);
  if (!validate_monoid(g).ok() || !g.is_group()) throw InputError("'" + a.monoid + "' is not a group");
  return g;
}

void cmd_profinite(Resolver& r, const Args& a, Out& out) {
  FinMonoid g = group_arg(r, a);
  ProfiniteCompletion pc = profinite_completion(g, full_quotient_family(g));
  CheckResult c = check(1, "profinite-completion");
  c.stat("quotients", static_cast<long long>(pc.family.size()));
  for (std::size_t i = 0; i < pc.family.size(); ++i) c.stat("quotient " + std::to_string(i) + " order", pc.family[i].target.n);
  c.stat("completion order", pc.group.n);
  c.stat("eta", table_text(pc.eta));
  Table sorted = pc.eta;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (!is_monoid_hom(g, pc.group, pc.eta)) c.fail("eta is not a homomorphism");
  if (static_cast<int>(sorted.size()) != pc.group.n || pc.group.n != g.n) c.fail("eta is not bijective");
  out.report.checks.push_back(std::move(c));
}

void cmd_phi_check(Resolver& r, const Args& a, Out& out) {
  FinMonoid g = group_arg(r, a);
  const int bound = a.bound.value_or(std::max(g.n, 6));
  if (bound < 1 || bound > 8) throw InputError("--bound must lie in 1..8 for G-sets");
  ProfiniteCompletion pc = profinite_completion(g, full_quotient_family(g));
  NatEndomorphisms nat = nat_endomorphism_monoid(g, bound);
  PhiCheck phi = phi_check(g, pc, nat);
  CheckResult c = check(1, "phi");
  c.stat("G-sets", static_cast<long long>(nat.objects.size()));
  c.stat("regular action present", nat.bound_ok ? "yes" : "no");
  c.stat("|Nat(U,U)|", nat.monoid.n);
  c.stat("phi", table_text(phi.phi));
  fail_all(c, phi.report);
  out.report.checks.push_back(std::move(c));
}

TopProtoTheory top_theory_arg(Resolver& r, const Args& a, std::string* label) {
  TheoryEntry t = r.theory(a.theory, label);
  TopProtoTheory l = t.topological();
  if (a.arities) {
    const int k = *a.arities;
    if (k < 0 || k >= l.theory.arities->num_objects()) throw InputError("--arities out of range");
    std::vector<int> keep;
    for (int i = 0; i <= k; ++i) keep.push_back(i);
    l = restrict_top_theory(l, keep);
  }
  return l;
}

void describe_completeness(CheckResult& c, const Completeness& k) {
  c.stat("models", static_cast<long long>(k.mod.models.size()));
  c.stat("E continuous", k.continuous ? "yes" : "no");
  c.stat("E bijective", k.bijective ? "yes" : "no");
  c.stat("dense", k.dense ? "yes" : "no");
  if (k.sem_checked) c.stat("sem(E) iso", k.sem_iso ? "yes" : "no");
  fail_all(c, k.report);
}

void cmd_complete(Resolver& r, const Args& a, Out& out) {
  std::string label;
  Completeness k = check_complete(top_theory_arg(r, a, &label));
  CheckResult c = check(1, "complete");
  describe_completeness(c, k);
  if (!k.complete) c.fail("E is not a homeomorphism on every hom-space");
  out.report.checks.push_back(std::move(c));
}

void cmd_completion(Resolver& r, const Args& a, Out& out) {
  std::string label;
  TopProtoTheory l = top_theory_arg(r, a, &label);
  Completeness k = completion(l);
  CheckResult c = check(1, "completion");
  describe_completeness(c, k);
  c.stat("completion morphisms", k.cplt.theory.theory.theory->num_morphisms());
  out.report.checks.push_back(std::move(c));
  CheckResult i = check(2, "completion-is-complete");
  Completeness again = check_complete(k.cplt.theory);
  describe_completeness(i, again);
  if (!again.complete) i.fail("completion is not complete");
  out.report.checks.push_back(std::move(i));
  const std::string cat = sanitize("cplt_" + label);
  out.artifact.add_category(cat, k.cplt.theory.theory.theory);
  out.artifact.add_functor(sanitize("E_" + label), k.E.P, sanitize("theory_of_" + label), cat);
  out.artifact.add_category(sanitize("theory_of_" + label), l.theory.theory);
  // the source category goes first so the file reloads in order
  std::rotate(out.artifact.order.begin(), out.artifact.order.end() - 1, out.artifact.order.end());
}

void cmd_enough_subobjects(Resolver& r, const Args& a, Out& out) {
  std::string ref;
  CatPtr cat = r.category(a.category, &ref);
  EnoughSubobjects e = check_enough_subobjects(cat);
  CheckResult c = check(1, "enough-subobjects");
  c.stat("sieves", static_cast<long long>(e.sieves));
  c.stat("product preserving", static_cast<long long>(e.product_preserving));
  if (!e.holds) {
    std::string w = "object " + cat->object_name(e.object) + ", sieve {";
    const char* sep = "";
    for (int x = 0; x < cat->num_objects(); ++x) {
      const auto& h = cat->hom(x, e.object);
      for (int pos : e.witness[x]) {
        w += sep + cat->morphism_name(h[pos]);
        sep = ", ";
      }
    }
    c.fail(w + "}");
  }
  out.report.checks.push_back(std::move(c));
}

void cmd_verify(const Args& a, Out& out) {
  VerifyOptions o;
  o.bound = a.bound.value_or(3);
  o.monoid_bound = a.monoid_bound.value_or(4);
  o.depth = a.depth.value_or(3);
  o.seed = a.seed;
  o.parallel = a.parallel;
  if (o.bound < 1 || o.bound > 3) throw InputError("--bound must lie in 1..3 for verify-thesis");
  if (o.monoid_bound < 1 || o.monoid_bound > 4) throw InputError("--monoid-bound must lie in 1..4");
  if (o.depth < 1 || o.depth > 3) throw InputError("--depth must lie in 1..3");
  out.report = verify_thesis(o);
}

}  // namespace

CommandOutput run_command(const CommandArgs& a) {
  CommandOutput out;
  out.report.suite = a.command;
  if (a.command == "verify-thesis") {
    cmd_verify(a, out);
    return out;
  }
  Resolver r(a);
  using Fn = void (*)(Resolver&, const Args&, Out&);
  static const std::map<std::string, Fn> table{
      {"validate", cmd_validate},           {"factorize", cmd_factorize},
      {"semantics", cmd_semantics},         {"structure", cmd_structure},
      {"check-adjunction", cmd_check_adjunction}, {"kleisli", cmd_kleisli},
      {"recognize-monad", cmd_recognize_monad}, {"codensity", cmd_codensity},
      {"models", cmd_models},               {"closure", cmd_closure},
      {"soundness", cmd_soundness},         {"monoid-theory", cmd_monoid_theory},
      {"profinite", cmd_profinite},         {"phi-check", cmd_phi_check},
      {"complete?", cmd_complete},          {"completion", cmd_completion},
      {"enough-subobjects", cmd_enough_subobjects}};
  auto it = table.find(a.command);
  if (it == table.end()) throw InputError("unknown command '" + a.command + "'");
  try {
    it->second(r, a, out);
  } catch (const PreconditionError& e) {
    // outside an operation's domain: a failed report, not an input error
    CheckResult c = check(static_cast<int>(out.report.checks.size()) + 1, "precondition");
    c.fail(e.what());
    out.report.checks.push_back(std::move(c));
  }
  if (a.bound) out.report.parameters.emplace_back("bound", std::to_string(*a.bound));
  return out;
}

std::string render_artifact(const Workspace& artifact, bool structured) {
  return structured ? write_json(artifact) : write_text(artifact);
}

std::string render(const CommandOutput& out, bool structured, bool with_artifact) {
  const bool art = with_artifact && !out.artifact.order.empty();
  if (!structured) {
    std::string s = render_text(out.report);
    if (art) s += "ARTIFACT\n" + write_text(out.artifact);
    return s;
  }
  nlohmann::ordered_json j;
  j["report"] = nlohmann::ordered_json::parse(render_json(out.report));
  if (art) j["artifact"] = nlohmann::ordered_json::parse(write_json(out.artifact));
  return j.dump(2) + "\n";
}

}  // namespace protocat
