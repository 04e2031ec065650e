#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>
#include <vector>

#include "fpr/fpr.hpp"
#include "support/builders.hpp"
#include "support/oracles.hpp"

using namespace fpr;

TEST_CASE("extended signature mints one fresh top per sort") {
  builders::Ex2nd e;
  ExtendedSignature ext(e.sys.trs().signature());
  CHECK(ext.tops().size() == 2);
  CHECK(ext.top_for(e.nat)->name == "top_Nat");
  CHECK(ext.top_for(e.list)->name == "top_NatList");
  CHECK(ext.is_top("top_Nat"));
  CHECK_FALSE(ext.is_top("cons"));

  Signature full = ext.full();
  CHECK(full.has_symbol("top_NatList"));
  CHECK(full.has_symbol("cons"));

  ExtendedSignature trimmed = ext.restricted({"top_NatList"});
  CHECK(trimmed.tops().size() == 1);
  CHECK_THROWS_AS(trimmed.top_for(e.nat), SystemError);

  // name collisions are resolved by appending underscores
  builders::MonoSig m;
  m.sym("top_U", 0);
  ExtendedSignature clash(m.sig);
  CHECK(clash.top_for(m.u)->name == "top_U_");
}

TEST_CASE("relevant variables come from unifying pattern slices") {
  PatternSystem fg = builders::make_fx_gx();
  const Rule& r = fg.trs().rules()[0];  // f(x) -> g(x)
  auto rv = relevant_vars(r.lhs, Position::root(), fg.patterns());
  REQUIRE(rv.size() == 1);
  CHECK(rv[0].name == "x");

  builders::Ex2nd e;
  // neither rule has a variable forced into non-variable shape at the root
  for (const Rule& rule : e.sys.trs().rules())
    CHECK(relevant_vars(rule.lhs, Position::root(), e.sys.patterns()).empty());

  CHECK_THROWS_AS(
      relevant_vars(r.lhs, Position::of({1, 1}), fg.patterns()),
      PositionError);
}

TEST_CASE("instantiation and embedding on a one-rule system") {
  PatternSystem fg = builders::make_fx_gx();
  ExtendedSignature ext(fg.trs().signature());
  TaggedRule seed{fg.trs().rules()[0], Position::root(), 0};

  std::vector<TaggedRule> inst = instantiate(seed, fg.patterns(), ext.base());
  std::set<std::string> inst_strs;
  for (const TaggedRule& tr : inst) {
    CHECK(tr.tag.is_root());
    inst_strs.insert(canonicalize_variables(tr.rule).str());
  }
  CHECK(inst_strs == std::set<std::string>{
                         "f(a) -> g(a)",
                         "f(f(x1)) -> g(f(x1))",
                         "f(g(x1)) -> g(g(x1))",
                     });

  std::vector<TaggedRule> emb = embed(seed, fg.patterns(), ext);
  std::set<std::string> emb_strs;
  for (const TaggedRule& tr : emb) {
    CHECK(tr.tag.str() == "1");
    emb_strs.insert(canonicalize_variables(tr.rule).str());
  }
  CHECK(emb_strs == std::set<std::string>{
                        "f(f(x1)) -> f(g(x1))",
                        "g(f(x1)) -> g(g(x1))",
                        "top_U(f(x1)) -> top_U(g(x1))",
                    });

  CHECK(successors(seed, fg.patterns(), ext).size() == 6);
}

TEST_CASE("embedding keeps variable slots fresh and pushes the tag down") {
  builders::Ex2nd e;
  ExtendedSignature ext(e.sys.trs().signature());
  TaggedRule seed{e.sys.trs().rules()[0], Position::root(), 0};  // inf rule

  std::vector<TaggedRule> emb = embed(seed, e.sys.patterns(), ext);
  REQUIRE(emb.size() == 3);  // cons slot 2, 2nd slot 1, top_NatList slot 1
  std::set<std::string> tagged;
  for (const TaggedRule& tr : emb)
    tagged.insert(canonicalize_variables(tr.rule).str() + " @ " + tr.tag.str());
  CHECK(tagged ==
        std::set<std::string>{
            "cons(x1, inf(x2)) -> cons(x1, cons(x2, inf(s(x2)))) @ 2",
            "2nd(inf(x1)) -> 2nd(cons(x1, inf(s(x1)))) @ 1",
            "top_NatList(inf(x1)) -> top_NatList(cons(x1, inf(s(x1)))) @ 1",
        });

  // the 2nd rule's left-hand side does not unify with any pattern slice
  TaggedRule other{e.sys.trs().rules()[1], Position::root(), 1};
  CHECK(embed(other, e.sys.patterns(), ext).empty());
}

TEST_CASE("obsolete rules realize a pattern on their own left-hand side") {
  builders::Ex2nd e;
  ExtendedSignature ext(e.sys.trs().signature());
  const std::vector<ForbiddenPattern>& pi = e.sys.patterns();

  TaggedRule seed{e.sys.trs().rules()[0], Position::root(), 0};
  CHECK_FALSE(is_obsolete(seed, pi));

  // cons(y, inf(x)) embedded once more into cons tail position: the lhs now
  // contains cons(_, cons(_, inf(_))) with the tag at the forbidden spot
  std::vector<TaggedRule> emb1 = embed(seed, pi, ext);
  const TaggedRule* cons_emb = nullptr;
  for (const TaggedRule& tr : emb1)
    if (tr.rule.lhs->sym()->name == "cons") cons_emb = &tr;
  REQUIRE(cons_emb);
  CHECK_FALSE(is_obsolete(*cons_emb, pi));
  std::vector<TaggedRule> emb2 = embed(*cons_emb, pi, ext);
  bool found_obsolete = false;
  for (const TaggedRule& tr : emb2)
    if (tr.rule.lhs->sym()->name == "cons") {
      CHECK(tr.tag.str() == "2.2");
      CHECK(is_obsolete(tr, pi));
      found_obsolete = true;
    }
  CHECK(found_obsolete);
}

TEST_CASE("stability decision matches a bounded search for witnesses") {
  // exhaustive comparison on two small one-sorted systems
  for (PatternSystem sys : {builders::make_fx_gx(), builders::make_a_fa()}) {
    ExtendedSignature ext(sys.trs().signature());
    std::vector<TaggedRule> frontier;
    for (std::size_t i = 0; i < sys.trs().rules().size(); ++i)
      frontier.push_back(TaggedRule{sys.trs().rules()[i], Position::root(), i});
    // seeds plus two levels of successors
    std::vector<TaggedRule> pool = frontier;
    for (int level = 0; level < 2; ++level) {
      std::vector<TaggedRule> next;
      for (const TaggedRule& tr : frontier)
        for (TaggedRule& s : successors(tr, sys.patterns(), ext))
          next.push_back(std::move(s));
      pool.insert(pool.end(), next.begin(), next.end());
      frontier = std::move(next);
    }
    REQUIRE(pool.size() > 4);
    for (const TaggedRule& tr : pool) {
      bool exact = is_stable(tr, sys.patterns(), ext);
      bool searched = oracles::stable_oracle(tr, sys.patterns(),
                                             sys.trs().signature(), ext, 4);
      CAPTURE(tr.str());
      CHECK(exact == searched);
    }
  }

  // seeds and first-level successors of the two-sorted system
  builders::Ex2nd e;
  ExtendedSignature ext(e.sys.trs().signature());
  std::vector<TaggedRule> pool;
  for (std::size_t i = 0; i < e.sys.trs().rules().size(); ++i) {
    TaggedRule tr{e.sys.trs().rules()[i], Position::root(), i};
    pool.push_back(tr);
    for (TaggedRule& s : successors(tr, e.sys.patterns(), ext))
      pool.push_back(std::move(s));
  }
  REQUIRE(pool.size() == 5);
  for (const TaggedRule& tr : pool) {
    bool exact = is_stable(tr, e.sys.patterns(), ext);
    bool searched = oracles::stable_oracle(tr, e.sys.patterns(),
                                           e.sys.trs().signature(), ext, 3);
    CAPTURE(tr.str());
    CHECK(exact == searched);
  }
}

TEST_CASE("transformation: infinite-list selection") {
  builders::Ex2nd e;
  TransformResult res = transform(e.sys);
  CHECK(oracles::rule_strings(res.trs) ==
        std::set<std::string>{
            "2nd(cons(x1, cons(x2, x3))) -> x2",
            "2nd(inf(x1)) -> 2nd(cons(x1, inf(s(x1))))",
            "top_NatList(inf(x1)) -> top_NatList(cons(x1, inf(s(x1))))",
            "2nd(cons(x1, inf(x2))) -> 2nd(cons(x1, cons(x2, inf(s(x2)))))",
            "top_NatList(cons(x1, inf(x2))) -> "
            "top_NatList(cons(x1, cons(x2, inf(s(x2)))))",
        });
  CHECK(res.iterations == 3);
  CHECK(res.dropped_obsolete.size() == 1);
  // only the list top is ever used, so only it survives
  CHECK(res.signature.tops().size() == 1);
  CHECK(res.signature.tops().begin()->first.name == "NatList");
  // every accepted rule is stable and not obsolete
  for (const TaggedRule& tr : res.accepted) {
    CHECK(is_stable(tr, e.sys.patterns(), res.signature));
    CHECK_FALSE(is_obsolete(tr, e.sys.patterns()));
  }
}

TEST_CASE("transformation: root-only unfolding keeps just the top rules") {
  PatternSystem sys = builders::make_a_fa();
  TransformResult res = transform(sys);
  CHECK(oracles::rule_strings(res.trs) ==
        std::set<std::string>{
            "top_U(a) -> top_U(f(a))",
            "top_U(f(x1)) -> top_U(x1)",
        });
  CHECK(res.signature.tops().size() == 1);
}

TEST_CASE("transformation: fully forbidden system becomes empty") {
  PatternSystem sys = builders::make_fx_fx();
  TransformResult res = transform(sys);
  CHECK(res.trs.rules().empty());
  CHECK(res.accepted.empty());
  CHECK(res.dropped_obsolete.size() == 2);
}

TEST_CASE("transformation: take over interleaved streams") {
  builders::TakeApp ta;
  TransformResult res = transform(ta.sys);
  CHECK(oracles::rule_strings(res.trs) ==
        std::set<std::string>{
            "take(0, cons(x1, x2)) -> x1",
            "take(s(x1), cons(x2, x3)) -> take(x1, x3)",
            "take(x1, nil) -> 0",
            "app(nil, x1) -> x1",
            "app(cons(x1, nil), x2) -> cons(x1, app(nil, x2))",
            "app(cons(x1, cons(x2, x3)), x4) -> cons(x1, app(cons(x2, x3), x4))",
            "app(cons(x1, inf(x2)), x3) -> cons(x1, app(inf(x2), x3))",
            "app(app(cons(x1, x2), x3), x4) -> app(cons(x1, app(x2, x3)), x4)",
            "app(x1, app(cons(x2, x3), x4)) -> app(x1, cons(x2, app(x3, x4)))",
            "take(x1, app(cons(x2, x3), x4)) -> take(x1, cons(x2, app(x3, x4)))",
            "top_NatList(app(cons(x1, x2), x3)) -> "
            "top_NatList(cons(x1, app(x2, x3)))",
            "app(x1, inf(x2)) -> app(x1, cons(x2, inf(s(x2))))",
            "take(x1, inf(x2)) -> take(x1, cons(x2, inf(s(x2))))",
            "top_NatList(inf(x1)) -> top_NatList(cons(x1, inf(s(x1))))",
            "cons(x1, app(cons(x2, nil), x3)) -> cons(x1, cons(x2, app(nil, x3)))",
            "cons(x1, app(cons(x2, cons(x3, x4)), x5)) -> "
            "cons(x1, cons(x2, app(cons(x3, x4), x5)))",
            "cons(x1, app(cons(x2, inf(x3)), x4)) -> "
            "cons(x1, cons(x2, app(inf(x3), x4)))",
            "app(app(inf(x1), x2), x3) -> app(app(cons(x1, inf(s(x1))), x2), x3)",
            "app(x1, app(inf(x2), x3)) -> app(x1, app(cons(x2, inf(s(x2))), x3))",
            "take(x1, app(inf(x2), x3)) -> take(x1, app(cons(x2, inf(s(x2))), x3))",
            "top_NatList(app(inf(x1), x2)) -> "
            "top_NatList(app(cons(x1, inf(s(x1))), x2))",
        });
  CHECK(res.trs.rules().size() == 21);
  CHECK(res.iterations == 3);
  CHECK(res.dropped_obsolete.size() == 3);
  CHECK(res.signature.tops().size() == 1);
}

TEST_CASE("transformation rejects unsupported pattern shapes") {
  builders::Ex2nd e;
  PatternSystem modal(e.sys.trs(), encode_outermost(e.sys.trs()));
  CHECK_THROWS_AS(transform(modal), TransformError);

  builders::MonoSig m;
  auto a = m.sym("a", 0), g = m.sym("g", 2);
  TermPtr x = m.var("x");
  Rule r{Term::app(g, {x, x}), x};
  PatternSystem nonlinear(
      Trs(m.sig, {r}),
      {{Term::app(g, {x, x}), Position::of({1}), Mode::here}});
  CHECK_THROWS_AS(transform(nonlinear), TransformError);
}
