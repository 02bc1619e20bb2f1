#include "protocat/verify.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <random>
#include <sstream>

#include <json.hpp>

#include "protocat/eqpres.hpp"
#include "protocat/groupsem.hpp"
#include "protocat/monads.hpp"
#include "protocat/topth.hpp"

namespace protocat {

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    default: return "skipped";
  }
}

void CheckResult::fail(std::string what) {
  status = CheckStatus::fail;
  if (failures++ < 8) counterexamples.push_back(std::move(what));
}

bool VerificationReport::ok() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == CheckStatus::fail; });
}

namespace {

using Named = std::pair<std::string, CatPtr>;

CheckResult begin(int id, std::string name) {
  CheckResult c;
  c.id = id;
  c.name = std::move(name);
  c.status = CheckStatus::pass;
  return c;
}

void require_at_least(CheckResult& c, const std::string& what, long long have, long long need) {
  if (have < need) c.fail(what + ": " + std::to_string(have) + " < " + std::to_string(need));
}

std::vector<SetMonad> criterion_monads() {
  return {identity_set_monad(), maybe_monad(), monoid_writer(cyclic_group(2)), monoid_writer(cyclic_group(3))};
}

std::string monad_label(const SetMonad& t, int index) {
  static const char* names[] = {"identity", "maybe", "z2-writer", "z3-writer"};
  return index < 4 ? names[index] : t.name;
}

CatPtr z2_category() { return monoid_category(2, {0, 1, 1, 0}, 0); }
CatPtr idempotent_category() { return monoid_category(2, {0, 1, 1, 1}, 0); }

std::string first_violation(const Report& r) {
  if (r.ok()) return {};
  return r.violations.front().law + " " + r.violations.front().detail;
}

// Theories over B^op built as bo/ff images of functors into small categories.
ProtoTheory image_theory(const CatPtr& arities, const CatPtr& target, std::mt19937& rng) {
  auto fs = enumerate_functors(arities, target, 64);
  if (fs.empty()) return identity_theory(arities);
  return make_proto_theory(bo_ff_factorize(fs[rng() % fs.size()]).e);
}

}  // namespace

// ---------------------------------------------------------------------------

CheckResult check_adjunction_laws(const VerifyOptions& o) {
  CheckResult c = begin(1, "adjunction-laws");
  std::mt19937 rng(o.seed);
  const std::vector<Named> bases{{"terminal", terminal_category()}, {"chain2", chain_category(2)},
                                 {"discrete2", discrete_category(2)}, {"chain3", chain_category(3)},
                                 {"z2", z2_category()}, {"finset1", finset_category(1).cat}};
  const std::vector<Named> targets{{"terminal", terminal_category()}, {"chain2", chain_category(2)},
                                   {"discrete2", discrete_category(2)}, {"z2", z2_category()},
                                   {"idempotent", idempotent_category()}};
  const std::vector<Named> domains{{"terminal", terminal_category()}, {"chain2", chain_category(2)},
                                   {"discrete2", discrete_category(2)}, {"z2", z2_category()}};
  const std::vector<Named> probes{{"terminal", terminal_category()}, {"chain2", chain_category(2)}};
  const FinSetCategory fs2 = finset_category(2);

  long long triples = 0, projection = 0, lifted = 0, rs = 0, ss = 0, u_squares = 0, l_squares = 0;
  for (int t = 0; t < o.triples; ++t) {
    Aritation ar;
    ProtoTheory th;
    std::string label;
    const Named& m = domains[rng() % domains.size()];
    if (t % 5 == 4) {
      ar = projection_aritation(fs2);
      const bool z2 = rng() % 2;
      th = z2 ? monoid_point_prototheory(2, {0, 1, 1, 0}, 0) : monoid_point_prototheory(2, {0, 1, 1, 1}, 0);
      label = std::string("projection/finset2/") + (z2 ? "z2" : "idempotent");
      ++projection;
    } else {
      const Named& b = bases[rng() % bases.size()];
      ar = canonical_aritation(b.second);
      const Named& tg = targets[rng() % targets.size()];
      const unsigned kind = rng() % 4;
      if (kind == 0) {
        th = identity_theory(ar.arities);
        label = "canonical/" + b.first + "/identity";
      } else if (kind == 1) {
        th = image_theory(ar.arities, tg.second, rng);
        label = "canonical/" + b.first + "/image:" + tg.first;
      } else {
        // the theory of a random functor V, so V and its restrictions carry models
        const Named& mv = domains[rng() % domains.size()];
        auto vs = enumerate_functors(mv.second, ar.base, 64);
        th = structure(vs[rng() % vs.size()], ar).theory;
        label = "canonical/" + b.first + "/thr:" + mv.first;
      }
    }
    auto us = enumerate_functors(m.second, ar.base, 64);
    const FinFunctor u = us[rng() % us.size()];
    const Named& mp = probes[rng() % probes.size()];
    auto qs = enumerate_functors(mp.second, m.second, 64);
    const FinFunctor q = qs[rng() % qs.size()];
    label += " M=" + m.first + " Q:" + mp.first;
    ++triples;
    try {
      auto sem = std::make_shared<Semantics>(th, ar);
      ModelCategory mod = model_category(sem);
      Structure s = structure(u, ar);
      auto rlist = functors_over(mod, u);
      auto slist = enumerate_theory_morphisms(th, s.theory);
      if (rlist.size() != slist.size())
        c.fail(label + ": " + std::to_string(rlist.size()) + " lifts vs " + std::to_string(slist.size()) + " theory morphisms");
      lifted += !rlist.empty();
      std::vector<FinFunctor> psis;
      for (const FinFunctor& r : rlist) {
        FinFunctor sf = psi(mod, r, s, u);
        if (!validate_theory_morphism(TheoryMorphism{th, s.theory, sf}).ok()) c.fail(label + ": psi(R) not a theory morphism");
        if (!(theta(mod, sf, s, u) == r)) c.fail(label + ": theta(psi(R)) != R");
        psis.push_back(std::move(sf));
        ++rs;
      }
      for (const FinFunctor& sf : slist) {
        if (!(psi(mod, theta(mod, sf, s, u), s, u) == sf)) c.fail(label + ": psi(theta(S)) != S");
        ++ss;
      }
      // naturality in U along Q: M′ → M
      const FinFunctor uq = compose(u, q);
      Structure sq = structure(uq, ar);
      const FinFunctor strq = structure_on_morphism(s, sq, q);
      for (std::size_t i = 0; i < rlist.size(); ++i) {
        if (!(psi(mod, compose(rlist[i], q), sq, uq) == compose(strq, psis[i]))) c.fail(label + ": naturality in U");
        ++u_squares;
      }
      // naturality in the theory along L: A → 𝓛 seen as a morphism from the initial theory
      const ProtoTheory init = identity_theory(ar.arities);
      const TheoryMorphism p{init, th, th.L};
      ModelCategory mod0 = model_category(std::make_shared<Semantics>(init, ar));
      const FinFunctor semp = sem_on_morphism(p, mod, mod0);
      for (std::size_t i = 0; i < rlist.size(); ++i) {
        if (!(psi(mod0, compose(semp, rlist[i]), s, u) == compose(psis[i], th.L))) c.fail(label + ": naturality in L");
        ++l_squares;
      }
    } catch (const std::exception& e) {
      c.fail(label + ": " + e.what());
    }
  }
  require_at_least(c, "triples", triples, 50);
  c.stat("triples", triples);
  c.stat("projection-aritation triples", projection);
  c.stat("triples with a lift", lifted);
  c.stat("lifts R checked", rs);
  c.stat("theory morphisms S checked", ss);
  c.stat("naturality squares in U", u_squares);
  c.stat("naturality squares in L", l_squares);
  return c;
}

CheckResult check_model_laws(const VerifyOptions& o) {
  CheckResult c = begin(2, "model-laws");
  std::mt19937 rng(o.seed + 1);
  long long models = 0, equations = 0, theories = 0;
  auto run = [&](const std::string& label, const ProtoTheory& th, const Aritation& ar) {
    Semantics sem(th, ar);
    const FinCategory& B = *ar.base;
    ++theories;
    for (int d = 0; d < B.num_objects(); ++d)
      for (const Model& x : sem.enumerate_models(d)) {
        ++models;
        Report laws = sem.check_model(x);
        if (!laws.ok()) c.fail(label + " carrier " + B.object_name(d) + ": " + first_violation(laws));
        for (int b = 0; b < B.num_objects(); ++b)
          for (int f : B.hom(b, d)) {
            ++equations;
            if (sem.alpha(x, th.L.mor[f]) != f)
              c.fail(label + " carrier " + B.object_name(d) + ": alpha(L " + B.morphism_name(f) + ") differs");
          }
      }
  };
  const std::vector<Named> bases{{"terminal", terminal_category()}, {"chain2", chain_category(2)},
                                 {"discrete2", discrete_category(2)}, {"chain3", chain_category(3)},
                                 {"z2", z2_category()}, {"finset2", finset_category(2).cat}};
  const std::vector<Named> targets{{"chain2", chain_category(2)}, {"discrete2", discrete_category(2)},
                                   {"z2", z2_category()}, {"idempotent", idempotent_category()}};
  for (const Named& b : bases) {
    Aritation ar = canonical_aritation(b.second);
    run(b.first + "/identity", identity_theory(ar.arities), ar);
    for (const Named& t : targets) run(b.first + "/" + t.first, image_theory(ar.arities, t.second, rng), ar);
  }
  const FinSetCategory fs = finset_category(o.bound);
  auto monads = criterion_monads();
  for (std::size_t i = 0; i < monads.size(); ++i)
    run("kle(" + monad_label(monads[i], static_cast<int>(i)) + ")", kleisli(monads[i], fs).theory,
        canonical_aritation(fs.cat));
  c.stat("theories", theories);
  c.stat("models", models);
  c.stat("alpha equations", equations);
  return c;
}

CheckResult check_monad_correspondence(const VerifyOptions& o) {
  CheckResult c = begin(3, "monad-correspondence");
  const FinSetCategory fs = finset_category(o.bound);
  auto monads = criterion_monads();
  for (std::size_t i = 0; i < monads.size(); ++i) {
    const std::string label = monad_label(monads[i], static_cast<int>(i));
    Report v = validate_set_monad(monads[i], o.bound);
    if (!v.ok()) c.fail(label + ": " + first_violation(v));
    KleisliComparison k = compare_kleisli_models(monads[i], fs);
    const FinCategory& mod = *k.mod.cat;
    const FinCategory& em = *k.em.cat;
    c.stat(label + " mod(kle)", std::to_string(mod.num_objects()) + "/" + std::to_string(mod.num_morphisms()));
    c.stat(label + " EM", std::to_string(em.num_objects()) + "/" + std::to_string(em.num_morphisms()));
    if (mod.num_objects() != em.num_objects() || mod.num_morphisms() != em.num_morphisms())
      c.fail(label + ": object or morphism counts differ");
    if (!k.report.ok()) c.fail(label + ": " + first_violation(k.report));
  }
  return c;
}

CheckResult check_free_forgetful(const VerifyOptions& o) {
  CheckResult c = begin(4, "free-forgetful-theory");
  const FinSetCategory fs = finset_category(o.bound);
  auto monads = criterion_monads();
  for (std::size_t i = 0; i < monads.size(); ++i) {
    const std::string label = monad_label(monads[i], static_cast<int>(i));
    FreeForgetful ff = free_forgetful_structure(monads[i], fs);
    const FinCategory& thr = *ff.str.theory.theory;
    const FinCategory& B = *fs.cat;
    long long homs = 0;
    // |thr(U)(a, a′)| = |B(a′, T a)| on the underlying counts
    for (int a = 0; a < thr.num_objects(); ++a)
      for (int a2 = 0; a2 < thr.num_objects(); ++a2) {
        long long ta = monads[i].size(a), expect = 1;
        for (int k = 0; k < a2; ++k) expect *= ta;
        ++homs;
        if (static_cast<long long>(thr.hom(a, a2).size()) != expect)
          c.fail(label + ": |thr(" + B.object_name(a) + "," + B.object_name(a2) + ")| = " +
                 std::to_string(thr.hom(a, a2).size()) + ", expected " + std::to_string(expect));
      }
    if (!ff.report.ok()) c.fail(label + ": " + first_violation(ff.report));
    c.stat(label + " thr(U) morphisms", thr.num_morphisms());
    c.stat(label + " hom-sets counted", homs);
  }
  return c;
}

CheckResult check_codensity(const VerifyOptions& o) {
  CheckResult c = begin(5, "codensity");
  const std::vector<Named> domains{{"terminal", terminal_category()}, {"discrete2", discrete_category(2)},
                                   {"chain2", chain_category(2)}};
  const std::vector<Named> bases{{"chain3", chain_category(3)}, {"chain2", chain_category(2)}};
  long long functors = 0, recognized = 0;
  for (const Named& b : bases)
    for (const Named& m : domains)
      for (const FinFunctor& u : enumerate_functors(m.second, b.second)) {
        std::string label = m.first + "->" + b.first + " obj";
        for (int x : u.obj) label += " " + std::to_string(x);
        ++functors;
        try {
          CodensityStructure cs = codensity_structure(u);
          if (!cs.report.ok()) c.fail(label + ": " + first_violation(cs.report));
          auto rec = recognize_monadic(cs.kle.theory);
          if (rec && monad_isomorphism(*rec, cs.codensity.monad)) ++recognized;
          else c.fail(label + ": kle(T) does not recover the codensity monad");
        } catch (const std::exception& e) {
          c.fail(label + ": " + e.what());
        }
      }
  require_at_least(c, "functors", functors, 10);
  c.stat("functors", functors);
  c.stat("monads recovered from kle", recognized);
  // const_b at stage c: |b|^{|B(c, b)|}
  const FinSetCategory fs = finset_category(o.bound);
  long long sizes = 0;
  for (int b = 0; b <= o.bound; ++b)
    for (int st = 0; st <= o.bound; ++st) {
      long long homs = 1, expect = 1;
      for (int k = 0; k < st; ++k) homs *= b;
      bool small = true;
      for (long long k = 0; k < homs && small; ++k) small = (expect *= b) <= 20000;
      if (!small) continue;
      ++sizes;
      std::size_t got = const_codensity_size(fs, b, st);
      if (static_cast<long long>(got) != expect)
        c.fail("const_" + std::to_string(b) + " at " + std::to_string(st) + ": " + std::to_string(got) + " != " +
               std::to_string(expect));
    }
  c.stat("constant-functor sizes", sizes);
  return c;
}

CheckResult check_monoid_semantics(const VerifyOptions& o) {
  CheckResult c = begin(6, "monoid-semantics");
  const FinSetCategory fs = finset_category(o.bound);
  long long monoids = 0, homsets = 0;
  for (int n = 1; n <= 3; ++n)
    for (const FinMonoid& m : enumerate_monoids(n)) {
      std::string label = "order " + std::to_string(n) + " #" + std::to_string(monoids);
      ++monoids;
      KleisliComparison k = models_equal_msets(m, fs);
      if (!k.report.ok()) c.fail(label + ": " + first_violation(k.report));
      const FinCategory& mod = *k.mod.cat;
      const FinCategory& em = *k.em.cat;
      if (mod.num_objects() != em.num_objects()) {
        c.fail(label + ": " + std::to_string(mod.num_objects()) + " models vs " + std::to_string(em.num_objects()) +
               " actions");
        continue;
      }
      for (int x = 0; x < mod.num_objects(); ++x)
        for (int y = 0; y < mod.num_objects(); ++y) {
          ++homsets;
          if (mod.hom(x, y).size() != em.hom(k.to_em.obj[x], k.to_em.obj[y]).size())
            c.fail(label + ": hom-set sizes differ at models " + std::to_string(x) + ", " + std::to_string(y));
        }
      c.stat(label + " models", mod.num_objects());
    }
  c.stat("monoids", monoids);
  c.stat("hom-sets compared", homsets);
  return c;
}

CheckResult check_monoid_recognition(const VerifyOptions& o) {
  CheckResult c = begin(7, "monoid-recognition");
  const FinSetCategory fs = finset_category(std::min(o.bound, 3));
  long long monoids = 0;
  for (int n = 1; n <= o.monoid_bound; ++n) {
    long long here = 0;
    for (const FinMonoid& m : enumerate_monoids(n)) {
      ++monoids;
      ++here;
      MonoidRecognition r = recognize_monoid_theory(e_of_monoid(m, fs).theory, fs);
      if (!r.monoidal) c.fail("order " + std::to_string(n) + ": not recognised (" + r.reason + ")");
      else if (!monoid_isomorphism(r.monoid, m)) c.fail("order " + std::to_string(n) + ": recovered monoid differs");
    }
    c.stat("order " + std::to_string(n), here);
  }
  c.stat("monoids", monoids);
  MonoidRecognition maybe = recognize_monoid_theory(kleisli(maybe_monad(), fs).theory, fs);
  if (maybe.monoidal) c.fail("kle(maybe) recognised as monoidal");
  c.stat("kle(maybe)", maybe.monoidal ? std::string("monoidal") : "not monoidal: " + maybe.reason);
  return c;
}

CheckResult check_profinite(const VerifyOptions&) {
  CheckResult c = begin(8, "profinite-shadow");
  const std::vector<std::pair<std::string, FinMonoid>> groups{{"Z2", cyclic_group(2)},
                                                              {"Z3", cyclic_group(3)},
                                                              {"Z4", cyclic_group(4)},
                                                              {"V4", product_monoid(cyclic_group(2), cyclic_group(2))}};
  for (const auto& [name, g] : groups) {
    const int bound = std::max(g.n, 6);
    ProfiniteCompletion pc = profinite_completion(g, full_quotient_family(g));
    Table sorted = pc.eta;
    std::sort(sorted.begin(), sorted.end());
    Table ident(g.n);
    for (int i = 0; i < g.n; ++i) ident[i] = i;
    if (pc.group.n != g.n || sorted != ident || !is_monoid_hom(g, pc.group, pc.eta))
      c.fail(name + ": eta is not an isomorphism");
    NatEndomorphisms nat = nat_endomorphism_monoid(g, bound);
    if (nat.monoid.n != g.n) c.fail(name + ": |Nat(U,U)| = " + std::to_string(nat.monoid.n));
    PhiCheck phi = phi_check(g, pc, nat);
    if (!phi.report.ok()) c.fail(name + ": " + first_violation(phi.report));
    c.stat(name + " quotients", static_cast<long long>(pc.family.size()));
    c.stat(name + " completion order", pc.group.n);
    c.stat(name + " G-sets up to " + std::to_string(bound), static_cast<long long>(nat.objects.size()));
    c.stat(name + " |Nat(U,U)|", nat.monoid.n);
  }
  return c;
}

CheckResult check_topological(const VerifyOptions& o) {
  CheckResult c = begin(9, "topological-completeness");
  const FinSetCategory fs = finset_category(o.bound);
  auto monads = criterion_monads();
  auto implication = [&](const std::string& label, const Completeness& k) {
    if (k.dense && !k.sem_iso) c.fail(label + ": dense but sem(E) is not an isomorphism");
    if (k.sem_checked && !k.sem_split_epic) c.fail(label + ": sem(E) not split epic");
  };
  for (std::size_t i = 0; i < monads.size(); ++i) {
    const std::string label = "disc(kle(" + monad_label(monads[i], static_cast<int>(i)) + "))";
    // arities whose free algebra stays inside the truncation
    int k = 0;
    while (k < o.bound && monads[i].size(k + 1) <= o.bound) ++k;
    auto op = fs.cat->opposite();
    std::vector<int> arities;
    for (int a = 0; a <= k; ++a) arities.push_back(op->object(fs.cat->object_name(a)));
    TopProtoTheory l = restrict_top_theory(disc(kleisli(monads[i], fs).theory, canonical_aritation(fs.cat)), arities);
    Completeness cc = check_complete(l);
    if (!cc.complete) c.fail(label + ": not complete");
    if (!cc.report.ok()) c.fail(label + ": " + first_violation(cc.report));
    implication(label, cc);
    c.stat(label + " arities up to", k);
  }

  std::mt19937 rng(o.seed);
  const std::vector<Named> bases{{"chain1", chain_category(1)}, {"chain2", chain_category(2)}, {"chain3", chain_category(3)},
                                 {"diamond", poset_category(4, [](int x, int y) { return x == y || x == 0 || y == 3; })}};
  const std::vector<Named> pool{{"terminal", terminal_category()}, {"chain2", chain_category(2)},
                                {"discrete2", discrete_category(2)}, {"z2", z2_category()},
                                {"idempotent", idempotent_category()}};
  long long generated = 0, nondiscrete = 0, idempotent = 0, dense = 0;
  for (int i = 0; i < o.top_instances; ++i) {
    const Named& b = bases[i % bases.size()];
    const Named& t = pool[(i / bases.size()) % pool.size()];
    const std::string label = "instance " + std::to_string(i) + " " + b.first + "/" + t.first;
    Aritation ar = canonical_aritation(b.second);
    ProtoTheory th = image_theory(ar.arities, t.second, rng);
    const FinCategory& T = *th.theory;
    std::vector<std::pair<int, int>> identify;
    for (int x = 0; x < T.num_objects(); ++x)
      for (int y = 0; y < T.num_objects(); ++y) {
        const auto& h = T.hom(x, y);
        if (h.size() > 1 && rng() % 2) identify.emplace_back(h[0], h[1]);
      }
    TopProtoTheory l = quotient_topology(th, ar, identify);
    ++generated;
    if (std::any_of(l.hom.begin(), l.hom.end(), [](const FinTopology& s) { return !s.is_discrete(); })) ++nondiscrete;
    Report v = validate_top_theory(l);
    if (!v.ok()) c.fail(label + ": " + first_violation(v));
    Completeness first = check_complete(l);
    if (!first.report.ok()) c.fail(label + ": " + first_violation(first.report));
    implication(label, first);
    Completeness second = check_complete(first.cplt.theory);
    if (!second.report.ok()) c.fail(label + " completion: " + first_violation(second.report));
    implication(label + " completion", second);
    if (second.complete) ++idempotent;
    else c.fail(label + ": completion is not complete");
    dense += first.dense;
  }
  require_at_least(c, "generated theories", generated, 20);
  require_at_least(c, "non-discrete instances", nondiscrete, 1);
  c.stat("generated theories", generated);
  c.stat("with non-discrete hom-spaces", nondiscrete);
  c.stat("completion complete", idempotent);
  c.stat("dense", dense);
  return c;
}

CheckResult check_classical(const VerifyOptions& o) {
  CheckResult c = begin(10, "classical-theories");
  Presentation group = group_presentation();
  const std::size_t one = enumerate_omega_models(group, 1).size();
  const std::size_t two = enumerate_omega_models(group, 2).size();
  if (one != 1) c.fail("groups on 1 point: " + std::to_string(one));
  if (two != 2) c.fail("groups on 2 points: " + std::to_string(two));
  c.stat("groups on 1 point", static_cast<long long>(one));
  c.stat("groups on 2 points", static_cast<long long>(two));

  const std::vector<std::pair<std::string, std::string>> sources{
      {"group", print_presentation(group)},
      {"monoid", "op e 0\nop m 2\neq 3 m(x1,m(x2,x3)) = m(m(x1,x2),x3)\neq 1 m(e,x1) = x1\neq 1 m(x1,e) = x1\n"},
      {"semigroup", "op m 2\neq 3 m(x1,m(x2,x3)) = m(m(x1,x2),x3)\n"},
      {"commutative magma", "op m 2\neq 2 m(x1,x2) = m(x2,x1)\n"},
      {"idempotent magma", "op m 2\neq 1 m(x1,x1) = x1\n"},
      {"left zero", "op m 2\neq 2 m(x1,x2) = x1\n"},
      {"semilattice",
       "op m 2\neq 3 m(x1,m(x2,x3)) = m(m(x1,x2),x3)\neq 2 m(x1,x2) = m(x2,x1)\neq 1 m(x1,x1) = x1\n"},
      {"involution", "op u 1\neq 1 u(u(x1)) = x1\n"},
      {"pointed retraction", "op c 0\nop u 1\neq 1 u(u(x1)) = u(x1)\neq 0 u(c) = c\n"},
      {"constant map", "op u 1\neq 2 u(x1) = u(x2)\n"},
      {"commutative monoid",
       "op e 0\nop m 2\neq 3 m(x1,m(x2,x3)) = m(m(x1,x2),x3)\neq 2 m(x1,x2) = m(x2,x1)\neq 1 m(e,x1) = x1\n"},
      {"abelian group",
       "op e 0\nop i 1\nop m 2\neq 3 m(x1,m(x2,x3)) = m(m(x1,x2),x3)\neq 2 m(x1,x2) = m(x2,x1)\n"
       "eq 1 m(e,x1) = x1\neq 1 m(x1,i(x1)) = e\n"}};
  long long presentations = 0;
  for (const auto& [name, text] : sources) {
    Presentation p = parse_presentation(text);
    Report v = validate_presentation(p);
    if (!v.ok()) c.fail(name + ": " + first_violation(v));
    SoundnessReport s = soundness_check(p, 2, o.depth, o.bound);
    ++presentations;
    if (!s.violations.ok())
      c.fail(name + ": " + std::to_string(s.violations.violations.size()) + " violations, first " +
             first_violation(s.violations));
    c.stat(name, std::to_string(s.terms) + " terms, " + std::to_string(s.models) + " models, " +
                     std::to_string(s.provable_classes) + " provable / " + std::to_string(s.semantic_classes) +
                     " semantic classes");
  }
  require_at_least(c, "presentations", presentations, 10);
  c.stat("presentations", presentations);
  return c;
}

CheckResult check_subobjects(const VerifyOptions& o) {
  CheckResult c = begin(11, "enough-subobjects");
  long long lattices = 0, others = 0, others_hold = 0, witnessed = 0;
  auto witness_ok = [](const EnoughSubobjects& e, int n) {
    return e.object >= 0 && static_cast<int>(e.witness.size()) == n;
  };
  for (int n = 1; n <= std::max(o.bound + 1, 4); ++n) {
    if (n > 4) break;
    for (const auto& leq : enumerate_posets(n)) {
      auto cat = poset_category(n, [&](int x, int y) { return static_cast<bool>(leq[x * n + y]); });
      EnoughSubobjects e = check_enough_subobjects(cat);
      std::string label = "poset n=" + std::to_string(n) + " leq ";
      for (char x : leq) label += static_cast<char>('0' + x);
      if (has_all_joins(n, leq)) {
        ++lattices;
        if (!e.holds) c.fail(label + ": join-semilattice without enough subobjects");
      } else {
        ++others;
        others_hold += e.holds;
      }
      if (!e.holds) {
        if (witness_ok(e, n)) ++witnessed;
        else c.fail(label + ": verdict false without a witness");
      }
    }
  }
  for (const Named& extra : std::vector<Named>{{"discrete2", discrete_category(2)}, {"z2", z2_category()},
                                               {"finset2", finset_category(2).cat}}) {
    EnoughSubobjects e = check_enough_subobjects(extra.second);
    c.stat(extra.first, e.holds ? std::string("holds") : "fails at object " + extra.second->object_name(e.object));
    if (!e.holds) {
      if (witness_ok(e, extra.second->num_objects())) ++witnessed;
      else c.fail(extra.first + ": verdict false without a witness");
    }
  }
  c.stat("join-semilattices", lattices);
  c.stat("other posets", others);
  c.stat("other posets where it holds", others_hold);
  c.stat("false verdicts with witness", witnessed);
  return c;
}

// ---------------------------------------------------------------------------

namespace {

using CheckFn = CheckResult (*)(const VerifyOptions&);

const std::vector<CheckFn>& check_table() {
  static const std::vector<CheckFn> table{check_adjunction_laws, check_model_laws,       check_monad_correspondence,
                                          check_free_forgetful,  check_codensity,        check_monoid_semantics,
                                          check_monoid_recognition, check_profinite,     check_topological,
                                          check_classical,       check_subobjects};
  return table;
}

bool selected(const VerifyOptions& o, int id) {
  return o.only.empty() || std::find(o.only.begin(), o.only.end(), id) != o.only.end();
}

CheckResult guarded(CheckFn f, int id, const VerifyOptions& o) {
  try {
    return f(o);
  } catch (const std::exception& e) {
    CheckResult c = begin(id, "check-" + std::to_string(id));
    c.fail(std::string("exception: ") + e.what());
    return c;
  }
}

std::vector<CheckResult> run_checks(const VerifyOptions& o) {
  const auto& table = check_table();
  std::vector<CheckResult> out;
  std::vector<std::pair<int, std::future<CheckResult>>> pending;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected(o, id)) continue;
    if (o.parallel) pending.emplace_back(id, std::async(std::launch::async, guarded, table[i], id, std::cref(o)));
    else out.push_back(guarded(table[i], id, o));
  }
  for (auto& [id, f] : pending) out.push_back(f.get());
  return out;
}

}  // namespace

VerificationReport verify_thesis(const VerifyOptions& o) {
  VerificationReport r;
  r.suite = "verify-thesis";
  r.parameters = {{"bound", std::to_string(o.bound)},           {"monoid-bound", std::to_string(o.monoid_bound)},
                  {"depth", std::to_string(o.depth)},           {"seed", std::to_string(o.seed)},
                  {"triples", std::to_string(o.triples)},       {"topological-instances", std::to_string(o.top_instances)}};
  r.checks = run_checks(o);
  if (selected(o, 12)) {
    CheckResult d = begin(12, "determinism");
    if (!o.rerun) {
      d.status = CheckStatus::skipped;
      d.note = "rerun disabled";
    } else {
      VerificationReport again = r;
      again.checks = run_checks(o);
      const std::string a = render_text(r), b = render_text(again);
      d.stat("report bytes", static_cast<long long>(a.size()));
      if (a != b) d.fail("second run produced a different report");
    }
    r.checks.push_back(std::move(d));
  }
  return r;
}

std::string render_text(const VerificationReport& r) {
  std::ostringstream out;
  out << "SUITE " << r.suite << "\n";
  for (const auto& [k, v] : r.parameters) out << "PARAM " << k << " " << v << "\n";
  std::size_t pass = 0, fail = 0, skipped = 0;
  for (const CheckResult& c : r.checks) {
    out << "CHECK " << c.id << " " << c.name << " " << status_name(c.status) << "\n";
    if (!c.note.empty()) out << "  note: " << c.note << "\n";
    for (const auto& [k, v] : c.stats) out << "  " << k << ": " << v << "\n";
    for (const std::string& x : c.counterexamples) out << "  counterexample: " << x << "\n";
    if (c.failures > c.counterexamples.size())
      out << "  further failures: " << c.failures - c.counterexamples.size() << "\n";
    (c.status == CheckStatus::pass ? pass : c.status == CheckStatus::fail ? fail : skipped)++;
  }
  out << "SUMMARY pass " << pass << " fail " << fail << " skipped " << skipped << "\n";
  return out.str();
}

std::string render_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.parameters) j["parameters"][k] = v;
  j["checks"] = nlohmann::ordered_json::array();
  for (const CheckResult& c : r.checks) {
    nlohmann::ordered_json e;
    e["id"] = c.id;
    e["name"] = c.name;
    e["status"] = status_name(c.status);
    if (!c.note.empty()) e["note"] = c.note;
    e["stats"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : c.stats) e["stats"][k] = v;
    e["counterexamples"] = c.counterexamples;
    e["failures"] = c.failures;
    j["checks"].push_back(std::move(e));
  }
  j["ok"] = r.ok();
  return j.dump(2) + "\n";
}

}  // namespace protocat
