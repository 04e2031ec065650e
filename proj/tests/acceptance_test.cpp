// Acceptance gate. Each test case checks one criterion end to end and prints
// a single "criterion N (...): PASS|FAIL" line; every budget, depth bound and
// expected value is pinned as a literal in this file. The unit suites cover
// the same ground with finer-grained diagnostics.

#include <catch2/catch_amalgamated.hpp>

#include <iostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fpr/fpr.hpp"
#include "support/builders.hpp"
#include "support/oracles.hpp"

using namespace fpr;

namespace {

void report(const std::string& name, bool ok) {
  std::cout << name << ": " << (ok ? "PASS" : "FAIL") << std::endl;
}

std::vector<TermPtr> all_ground(const Signature& sig, std::size_t depth) {
  std::vector<TermPtr> out;
  for (const Sort& s : sig.sorts())
    for (const TermPtr& t : enumerate_ground(sig, s, depth).terms)
      out.push_back(t);
  return out;
}

}  // namespace

TEST_CASE("acceptance: criterion 1") {
  bool ok = false;
  try {
    builders::Ex2nd e;
    TransformResult res = transform(e.sys);
    ok = res.trs.rules().size() == 5 &&
         oracles::rule_strings(res.trs) ==
             std::set<std::string>{
                 "2nd(cons(x1, cons(x2, x3))) -> x2",
                 "2nd(inf(x1)) -> 2nd(cons(x1, inf(s(x1))))",
                 "top_NatList(inf(x1)) -> top_NatList(cons(x1, inf(s(x1))))",
                 "2nd(cons(x1, inf(x2))) -> 2nd(cons(x1, cons(x2, inf(s(x2)))))",
                 "top_NatList(cons(x1, inf(x2))) -> "
                 "top_NatList(cons(x1, cons(x2, inf(s(x2)))))",
             };
  } catch (...) {
    ok = false;
  }
  report("criterion 1 (golden transformation, small)", ok);
  REQUIRE(ok);
}

TEST_CASE("acceptance: criterion 2") {
  bool ok = false;
  try {
    builders::TakeApp ta;
    TransformResult res = transform(ta.sys);
    ok = res.trs.rules().size() == 21 &&
         oracles::rule_strings(res.trs) ==
             std::set<std::string>{
                 "take(0, cons(x1, x2)) -> x1",
                 "take(s(x1), cons(x2, x3)) -> take(x1, x3)",
                 "take(x1, nil) -> 0",
                 "app(nil, x1) -> x1",
                 "app(cons(x1, nil), x2) -> cons(x1, app(nil, x2))",
                 "app(cons(x1, cons(x2, x3)), x4) -> "
                 "cons(x1, app(cons(x2, x3), x4))",
                 "app(cons(x1, inf(x2)), x3) -> cons(x1, app(inf(x2), x3))",
                 "app(app(cons(x1, x2), x3), x4) -> app(cons(x1, app(x2, x3)), x4)",
                 "app(x1, app(cons(x2, x3), x4)) -> app(x1, cons(x2, app(x3, x4)))",
                 "take(x1, app(cons(x2, x3), x4)) -> "
                 "take(x1, cons(x2, app(x3, x4)))",
                 "top_NatList(app(cons(x1, x2), x3)) -> "
                 "top_NatList(cons(x1, app(x2, x3)))",
                 "app(x1, inf(x2)) -> app(x1, cons(x2, inf(s(x2))))",
                 "take(x1, inf(x2)) -> take(x1, cons(x2, inf(s(x2))))",
                 "top_NatList(inf(x1)) -> top_NatList(cons(x1, inf(s(x1))))",
                 "cons(x1, app(cons(x2, nil), x3)) -> "
                 "cons(x1, cons(x2, app(nil, x3)))",
                 "cons(x1, app(cons(x2, cons(x3, x4)), x5)) -> "
                 "cons(x1, cons(x2, app(cons(x3, x4), x5)))",
                 "cons(x1, app(cons(x2, inf(x3)), x4)) -> "
                 "cons(x1, cons(x2, app(inf(x3), x4)))",
                 "app(app(inf(x1), x2), x3) -> "
                 "app(app(cons(x1, inf(s(x1))), x2), x3)",
                 "app(x1, app(inf(x2), x3)) -> app(x1, app(cons(x2, inf(s(x2))), x3))",
                 "take(x1, app(inf(x2), x3)) -> "
                 "take(x1, app(cons(x2, inf(s(x2))), x3))",
                 "top_NatList(app(inf(x1), x2)) -> "
                 "top_NatList(app(cons(x1, inf(s(x1))), x2))",
             };
  } catch (...) {
    ok = false;
  }
  report("criterion 2 (golden transformation, large)", ok);
  REQUIRE(ok);
}

TEST_CASE("acceptance: criterion 3") {
  bool ok = false;
  try {
    PatternSystem fg = builders::make_fx_gx();
    const Signature& sig = fg.trs().signature();
    ExtendedSignature ext(sig);
    TaggedRule seed{fg.trs().rules()[0], Position::root(), 0};

    std::set<std::string> got;
    for (const TaggedRule& tr : successors(seed, fg.patterns(), ext))
      got.insert(canonicalize_variables(tr.rule).str() + " @ " + tr.tag.str());
    bool succ_ok = got == std::set<std::string>{
                              "f(a) -> g(a) @ e",
                              "f(f(x1)) -> g(f(x1)) @ e",
                              "f(g(x1)) -> g(g(x1)) @ e",
                              "f(f(x1)) -> f(g(x1)) @ 1",
                              "g(f(x1)) -> g(g(x1)) @ 1",
                              "top_U(f(x1)) -> top_U(g(x1)) @ 1",
                          };

    auto rv_root =
        relevant_vars(fg.trs().rules()[0].lhs, Position::root(), fg.patterns());
    bool rv_seed_ok = rv_root.size() == 1 && rv_root[0].name == "x";

    FunSymPtr f = sig.find("f");
    TermPtr x = Term::var({"x", sig.sorts()[0]});
    TermPtr ffx = Term::app(f, {Term::app(f, {x})});
    bool rv_deep_ok =
        relevant_vars(ffx, Position::of({1}), fg.patterns()).empty();

    ok = succ_ok && rv_seed_ok && rv_deep_ok;
  } catch (...) {
    ok = false;
  }
  report("criterion 3 (one-step successors and relevant variables)", ok);
  REQUIRE(ok);
}

TEST_CASE("acceptance: criterion 4") {
  bool ok = false;
  try {
    PatternSystem ff = builders::make_fx_fx();
    bool empty_ok = transform(ff).trs.rules().empty();

    const Signature& sig = ff.trs().signature();
    TermPtr fx = Term::app(sig.find("f"), {Term::var({"x", sig.sorts()[0]})});
    LoopSearch ls = find_loop(pi_successors(ff), fx, 2);
    bool loop_ok =
        ls.loop.has_value() && term_eq(ls.loop->start, ls.loop->last());

    ok = empty_ok && loop_ok;
  } catch (...) {
    ok = false;
  }
  report("criterion 4 (degenerate transform, live loop on open term)", ok);
  REQUIRE(ok);
}

TEST_CASE("acceptance: criterion 5") {
  bool ok = false;
  try {
    TransformResult res = transform(builders::make_a_fa());
    ok = oracles::rule_strings(res.trs).count("top_U(a) -> top_U(f(a))") == 1;
  } catch (...) {
    ok = false;
  }
  report("criterion 5 (top rule presence)", ok);
  REQUIRE(ok);
}

TEST_CASE("acceptance: criterion 6") {
  bool ok = false;
  try {
    builders::Ex2nd e;
    TermPtr query =
        Term::app(e.second, {Term::app(e.inf, {Term::app(e.zero, {})})});
    NormalizeResult r = normalize(e.sys, query);
    bool norm_ok =
        r.completed && r.result->str() == "s(0)" && r.trace.steps.size() <= 10;

    bool canon_ok = is_canonical(e.sys) &&
                    !is_canonical(builders::make_fgh(1)) &&
                    !is_canonical(builders::make_fgh(2)) &&
                    is_canonical(builders::make_fgh(3));

    ok = norm_ok && canon_ok;
  } catch (...) {
    ok = false;
  }
  report("criterion 6 (head normalization and canonicity verdicts)", ok);
  REQUIRE(ok);
}

TEST_CASE("acceptance: criterion 7") {
  bool ok = false;
  try {
    PatternSystem faa = builders::make_faa();
    CheckReport rep = check_simple(faa);
    bool parallel = false;
    for (const auto& v : rep.violations)
      parallel = parallel || v.reason.find("parallel") != std::string::npos;

    const Signature& sig = faa.trs().signature();
    TermPtr a = Term::app(sig.find("a"), {});
    TermPtr t = Term::app(sig.find("f"), {a, a});
    bool nf_ok = pi_redexes(faa, t).empty();
    HeadNormalVerdict v = is_head_normal_bounded(faa.trs(), t, 5);

    ok = !rep.ok && parallel && nf_ok && v.root_step_found;
  } catch (...) {
    ok = false;
  }
  report("criterion 7 (non-simple pattern detection)", ok);
  REQUIRE(ok);
}

TEST_CASE("acceptance: criterion 8") {
  bool ok = false;
  try {
    builders::Ex2nd e;
    builders::TakeApp ta;
    PatternSystem faa = builders::make_faa();

    ReplacementMap mu_lists;  // freeze list tails below cons
    mu_lists.set("cons", {1});
    ReplacementMap mu_faa;  // freeze the second argument of f
    mu_faa.set("f", {1});

    std::vector<std::pair<const PatternSystem*, const ReplacementMap*>> cases{
        {&e.sys, &mu_lists}, {&ta.sys, &mu_lists}, {&faa, &mu_faa}};

    ok = true;
    for (const auto& c : cases) {
      const Trs& trs = c.first->trs();
      const ReplacementMap& mu = *c.second;
      std::vector<TermPtr> terms = all_ground(trs.signature(), 4);
      ok = ok && !terms.empty();

      PatternSystem inner(trs, encode_innermost(trs));
      RelationComparison ci = compare_relations(
          [&](const TermPtr& t) { return pi_redexes(inner, t); },
          [&](const TermPtr& t) { return innermost_redexes(trs, t); }, terms);
      ok = ok && ci.equal() && ci.terms_checked == terms.size();

      PatternSystem outer(trs, encode_outermost(trs));
      RelationComparison co = compare_relations(
          [&](const TermPtr& t) { return pi_redexes(outer, t); },
          [&](const TermPtr& t) { return outermost_redexes(trs, t); }, terms);
      ok = ok && co.equal();

      PatternSystem ctx(trs, encode_context_sensitive(mu, trs.signature()));
      RelationComparison cc = compare_relations(
          [&](const TermPtr& t) { return pi_redexes(ctx, t); },
          [&](const TermPtr& t) { return csr_redexes(trs, mu, t); }, terms);
      ok = ok && cc.equal();
    }
  } catch (...) {
    ok = false;
  }
  report("criterion 8 (strategy encoding equivalence, depth 4)", ok);
  REQUIRE(ok);
}

TEST_CASE("acceptance: criterion 9") {
  bool ok = false;
  try {
    auto clean = [](const CorrespondenceReport& r) {
      return r.ok() && r.counterexamples.empty() && r.one_step_failures.empty();
    };
    builders::Ex2nd e;
    PatternSystem af = builders::make_a_fa();
    PatternSystem ff = builders::make_fx_fx();
    ok = clean(check_ground_correspondence(e.sys, transform(e.sys), 3, 4)) &&
         clean(check_ground_correspondence(af, transform(af), 3, 4)) &&
         clean(check_ground_correspondence(ff, transform(ff), 3, 4));
  } catch (...) {
    ok = false;
  }
  report("criterion 9 (ground correspondence, depth 3, 4 steps)", ok);
  REQUIRE(ok);
}

TEST_CASE("acceptance: criterion 10") {
  bool ok = false;
  try {
    PatternSystem po = builders::make_parout();
    const Signature& sig = po.trs().signature();
    TermPtr a = Term::app(sig.find("a"), {});
    TermPtr b = Term::app(sig.find("b"), {});
    TermPtr c = Term::app(sig.find("c"), {});
    TermPtr gab = Term::app(sig.find("g"), {a, b});
    TermPtr fac = Term::app(sig.find("f"), {a, c});

    NormalizeResult n1 = normalize(po, gab);
    NormalizeResult n2 = normalize(po, fac);
    bool norm_ok = n1.completed && n1.result->str() == "d" && n2.completed &&
                   n2.result->str() == "d";

    bool noloop_ok = !find_loop(pi_successors(po), gab, 100).loop.has_value() &&
                     !find_loop(pi_successors(po), fac, 100).loop.has_value();

    bool never_d = true;
    TermPtr cur = gab;
    for (int i = 0; i < 100; ++i) {
      auto nxt = parallel_outermost_step(po.trs(), cur);
      if (!nxt) break;
      cur = *nxt;
      never_d = never_d && cur->str() != "d";
    }

    ok = norm_ok && noloop_ok && never_d;
  } catch (...) {
    ok = false;
  }
  report("criterion 10 (normalizing power beyond parallel outermost)", ok);
  REQUIRE(ok);
}

TEST_CASE("acceptance: supplement") {
  bool ok = false;
  try {
    builders::Ex2nd e;
    builders::TakeApp ta;
    ok = true;
    for (const PatternSystem* sys : {&e.sys, &ta.sys}) {
      for (const TermPtr& t : all_ground(sys->trs().signature(), 3)) {
        LoopSearch ls = find_loop(pi_successors(*sys), t, 200);
        ok = ok && !ls.loop.has_value();
      }
    }
  } catch (...) {
    ok = false;
  }
  report("supplement (no restricted cycle from any ground term, depth 3)", ok);
  REQUIRE(ok);
}
