#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fpr/checks.hpp"
#include "fpr/errors.hpp"
#include "fpr/pattern.hpp"
#include "fpr/rewriting.hpp"
#include "fpr/term.hpp"
#include "fpr/transform.hpp"

namespace fpr {

/// All ground terms of one sort up to a depth bound (constants have depth 1,
/// bounds are inclusive). Order: by depth, then by root symbol declaration
/// order, then arguments lexicographically.
struct GroundEnumeration {
  Signature signature;
  Sort sort;
  std::size_t max_depth = 0;
  std::vector<TermPtr> terms;
};

inline GroundEnumeration enumerate_ground(const Signature& sig, const Sort& sort,
                                          std::size_t max_depth) {
  // exact[d][sort name]: terms of depth exactly d, in canonical order.
  std::vector<std::map<std::string, std::vector<TermPtr>>> exact(max_depth + 1);
  std::map<std::string, std::vector<TermPtr>> upto;  // depth <= current d
  for (std::size_t d = 1; d <= max_depth; ++d) {
    for (const FunSymPtr& f : sig.symbols()) {
      if (d == 1 && f->arity() > 0) continue;
      if (d > 1 && f->arity() == 0) continue;
      if (d == 1) {
        exact[d][f->result_sort.name].push_back(Term::app(f));
        continue;
      }
      // Argument tuples over terms of depth <= d-1 with at least one of
      // depth exactly d-1, enumerated lexicographically.
      std::vector<const std::vector<TermPtr>*> pools;
      bool empty_pool = false;
      for (const Sort& s : f->arg_sorts) {
        pools.push_back(&upto[s.name]);
        empty_pool = empty_pool || pools.back()->empty();
      }
      if (empty_pool) continue;
      std::vector<std::size_t> ix(f->arity(), 0);
      while (true) {
        std::size_t deepest = 0;
        std::vector<TermPtr> args;
        for (std::size_t i = 0; i < ix.size(); ++i) {
          args.push_back((*pools[i])[ix[i]]);
          deepest = std::max(deepest, args.back()->depth());
        }
        if (deepest == d - 1)
          exact[d][f->result_sort.name].push_back(Term::app(f, std::move(args)));
        std::size_t k = ix.size();
        while (k > 0) {
          if (++ix[k - 1] < pools[k - 1]->size()) break;
          ix[k - 1] = 0;
          --k;
        }
        if (k == 0) break;
      }
    }
    for (const auto& [sname, terms] : exact[d]) {
      auto& dest = upto[sname];
      dest.insert(dest.end(), terms.begin(), terms.end());
    }
  }
  GroundEnumeration out{sig, sort, max_depth, {}};
  for (std::size_t d = 1; d <= max_depth; ++d) {
    auto it = exact[d].find(sort.name);
    if (it == exact[d].end()) continue;
    out.terms.insert(out.terms.end(), it->second.begin(), it->second.end());
  }
  return out;
}

/// One recorded step: the whole term after the step, plus where and with
/// which rule it was made.
struct TraceStep {
  TermPtr term;
  Position position;
  std::size_t rule_index = 0;
};

struct DerivationTrace {
  TermPtr start;
  std::vector<TraceStep> steps;

  TermPtr last() const { return steps.empty() ? start : steps.back().term; }
};

/// Enumerates the one-step successors of a term, with step metadata.
using SuccessorFn = std::function<std::vector<TraceStep>(const TermPtr&)>;

inline SuccessorFn pi_successors(PatternSystem sys) {
  return [sys = std::move(sys)](const TermPtr& t) {
    std::vector<TraceStep> out;
    for (const Redex& r : pi_redexes(sys, t))
      out.push_back(TraceStep{step(sys.trs(), t, r), r.position, r.rule_index});
    return out;
  };
}

inline SuccessorFn plain_successors(Trs trs) {
  return [trs = std::move(trs)](const TermPtr& t) {
    std::vector<TraceStep> out;
    for (const Redex& r : redexes(trs, t))
      out.push_back(TraceStep{step(trs, t, r), r.position, r.rule_index});
    return out;
  };
}

struct LoopSearch {
  std::optional<DerivationTrace> loop;  // last step revisits a term on the path
  bool truncated = false;               // edge budget ran out with work left
};

/// Depth-first search for a derivation that revisits a term on its own path.
/// `max_steps` bounds the number of edges explored in total.
inline LoopSearch find_loop(const SuccessorFn& next, const TermPtr& start,
                            std::size_t max_steps) {
  struct Frame {
    TermPtr term;
    TraceStep incoming;  // edge that led here; unused for the root
    std::vector<TraceStep> succ;
    std::size_t i = 0;
  };
  LoopSearch result;
  std::unordered_set<TermPtr, TermPtrHash, TermPtrEq> on_path, done;
  std::vector<Frame> stack;
  stack.push_back(Frame{start, TraceStep{}, next(start), 0});
  on_path.insert(start);
  std::size_t used = 0;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.i == f.succ.size()) {
      done.insert(f.term);
      on_path.erase(f.term);
      stack.pop_back();
      continue;
    }
    if (used == max_steps) {
      result.truncated = true;
      return result;
    }
    ++used;
    TraceStep edge = f.succ[f.i++];
    if (on_path.count(edge.term)) {
      DerivationTrace trace;
      trace.start = start;
      for (std::size_t k = 1; k < stack.size(); ++k)
        trace.steps.push_back(stack[k].incoming);
      trace.steps.push_back(edge);
      result.loop = std::move(trace);
      return result;
    }
    if (done.count(edge.term)) continue;
    on_path.insert(edge.term);
    stack.push_back(Frame{edge.term, edge, next(edge.term), 0});
  }
  return result;
}

struct NormalizeResult {
  TermPtr result;
  DerivationTrace trace;  // whole-term steps in order of application
  bool completed = true;  // false if the step or depth budget ran out
  std::vector<std::string> warnings;
};

namespace detail {

inline const Redex* leftmost_innermost(const std::vector<Redex>& allowed) {
  // `allowed` is (position, rule) ordered; take the first entry with no
  // allowed redex strictly below it.
  for (const Redex& r : allowed) {
    bool below = false;
    for (const Redex& q : allowed)
      below = below || r.position.is_strict_prefix_of(q.position);
    if (!below) return &r;
  }
  return nullptr;
}

inline void normalize_rec(const PatternSystem& sys, const Position& at,
                          TermPtr& whole, std::size_t& steps_left,
                          std::size_t depth_left, DerivationTrace& trace,
                          bool& completed) {
  // Reduce the subterm at `at`, taken in isolation, to a pi-normal form.
  while (true) {
    TermPtr sub = whole->subterm(at);
    std::vector<Redex> allowed = pi_redexes(sys, sub);
    if (allowed.empty()) break;
    if (steps_left == 0) {
      completed = false;
      return;
    }
    const Redex* chosen = leftmost_innermost(allowed);
    TermPtr reduced = step(sys.trs(), sub, *chosen);
    whole = whole->replace(at, reduced);
    --steps_left;
    trace.steps.push_back(
        TraceStep{whole, at.concat(chosen->position), chosen->rule_index});
  }
  TermPtr sub = whole->subterm(at);
  if (sub->is_var() || sub->args().empty()) return;
  if (depth_left == 0) {
    completed = false;
    return;
  }
  for (std::size_t i = 1; i <= sub->args().size(); ++i)
    normalize_rec(sys, at.plus(i), whole, steps_left, depth_left - 1, trace,
                  completed);
}

}  // namespace detail

/// The recursive normalization procedure: reduce the whole term to a
/// pi-normal form (leftmost-innermost among allowed redexes), then repeat on
/// the immediate subterms of the now root-stable result, each taken in
/// isolation. Recorded steps are valid plain steps of the whole term; the
/// top-level phase's steps are also pi-steps.
inline NormalizeResult normalize(const PatternSystem& sys, const TermPtr& t,
                                 std::size_t step_budget = 1000,
                                 std::size_t depth_budget = 64) {
  NormalizeResult out;
  if (!sys.trs().is_left_linear())
    out.warnings.push_back(
        "system is not left-linear; the head-normal-form guarantee does not apply");
  if (!check_canonical(sys).ok)
    out.warnings.push_back(
        "patterns are not canonical; the head-normal-form guarantee does not apply");
  out.trace.start = t;
  TermPtr whole = t;
  std::size_t steps_left = step_budget;
  detail::normalize_rec(sys, Position::root(), whole, steps_left, depth_budget,
                        out.trace, out.completed);
  out.result = whole;
  return out;
}

/// Bidirectional ground-level check that the transformed system simulates
/// the pattern-restricted relation under top, and nothing more.
struct CorrespondenceReport {
  struct Counterexample {
    std::string direction;  // "forward" or "backward"
    TermPtr from;
    TermPtr to;
  };
  struct OneStepFailure {
    TermPtr from;
    TermPtr to;
  };
  std::vector<Counterexample> counterexamples;
  std::vector<OneStepFailure> one_step_failures;
  std::size_t terms_checked = 0;

  bool ok() const { return counterexamples.empty() && one_step_failures.empty(); }
};

/// For every ground term s up to `depth`: each s ->pi^{<=k} t must give
/// top(s) ->^{<=k'} top(t) in the transformed system (k' defaults to 2k);
/// conversely everything top(s) reaches in <= k steps must be top(t) with
/// s ->pi^{<=k} t; and every single pi-step must be matched by a single
/// transformed step. Sorts without a top symbol in the transformed system
/// get a rule-less one minted locally for the check.
inline CorrespondenceReport check_ground_correspondence(
    const PatternSystem& sys, const TransformResult& transformed,
    std::size_t depth, std::size_t k, std::size_t k_prime = 0) {
  if (k_prime == 0) k_prime = 2 * k;
  const Signature& base = sys.trs().signature();

  // Work signature: the transformed one, plus local tops for missing sorts.
  Signature work_sig = transformed.trs.signature();
  std::map<std::string, FunSymPtr> top_by_sort;
  for (const auto& [sort, f] : transformed.signature.tops())
    top_by_sort[sort.name] = work_sig.find(f->name);
  for (const Sort& s : base.sorts()) {
    if (top_by_sort.count(s.name)) continue;
    std::string name = "top_" + s.name;
    while (work_sig.has_symbol(name)) name += "_";
    top_by_sort[s.name] = work_sig.add_symbol(name, {s}, s);
  }
  Trs work_trs(work_sig, transformed.trs.rules());

  struct Closure {
    std::vector<TermPtr> order;  // BFS discovery order
    std::unordered_set<TermPtr, TermPtrHash, TermPtrEq> set;
  };
  auto pi_closure = [&](const TermPtr& s, std::size_t bound) {
    Closure c;
    c.set.insert(s);
    c.order.push_back(s);
    std::vector<std::pair<TermPtr, std::size_t>> queue{{s, 0}};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      auto [cur, dist] = queue[qi];
      if (dist == bound) continue;
      for (const Redex& r : pi_redexes(sys, cur)) {
        TermPtr nxt = step(sys.trs(), cur, r);
        if (!c.set.insert(nxt).second) continue;
        c.order.push_back(nxt);
        queue.emplace_back(nxt, dist + 1);
      }
      if (c.set.size() > 200000)
        throw Error("ground correspondence: closure too large");
    }
    return c;
  };

  CorrespondenceReport report;
  for (const Sort& sort : base.sorts()) {
    FunSymPtr top = top_by_sort.at(sort.name);
    for (const TermPtr& s : enumerate_ground(base, sort, depth).terms) {
      ++report.terms_checked;
      Closure pi_k = pi_closure(s, k);
      TermPtr tops = Term::app(top, {s});
      ReachableSet tr_k = reachable(work_trs, tops, k);
      ReachableSet tr_kp = reachable(work_trs, tops, k_prime);
      std::unordered_set<TermPtr, TermPtrHash, TermPtrEq> tr_kp_set(
          tr_kp.terms.begin(), tr_kp.terms.end());

      for (const TermPtr& t : pi_k.order) {
        if (!tr_kp_set.count(Term::app(top, {t})))
          report.counterexamples.push_back({"forward", s, t});
      }
      for (const TermPtr& u : tr_k.terms) {
        if (u->is_var() || u->sym()->name != top->name) {
          report.counterexamples.push_back({"backward", s, u});
          continue;
        }
        if (!pi_k.set.count(u->args()[0]))
          report.counterexamples.push_back({"backward", s, u->args()[0]});
      }

      // One-step soundness: each ground pi-step s -> t gives a single
      // transformed step top(s) -> top(t).
      std::unordered_set<TermPtr, TermPtrHash, TermPtrEq> one;
      for (const Redex& r : redexes(work_trs, tops))
        one.insert(step(work_trs, tops, r));
      for (const Redex& r : pi_redexes(sys, s)) {
        TermPtr t = step(sys.trs(), s, r);
        if (!one.count(Term::app(top, {t})))
          report.one_step_failures.push_back({s, t});
      }
    }
  }
  return report;
}

/// Per-term comparison of two redex relations.
using RedexFn = std::function<std::vector<Redex>(const TermPtr&)>;

struct RelationComparison {
  struct Difference {
    TermPtr term;
    std::vector<Redex> only_a;
    std::vector<Redex> only_b;
  };
  std::vector<Difference> differences;
  std::size_t terms_checked = 0;

  bool equal() const { return differences.empty(); }
};

inline RelationComparison compare_relations(const RedexFn& a, const RedexFn& b,
                                            const std::vector<TermPtr>& terms) {
  RelationComparison out;
  auto keys = [](const std::vector<Redex>& rs) {
    std::set<std::pair<std::string, std::size_t>> ks;
    for (const Redex& r : rs) ks.emplace(r.position.str(), r.rule_index);
    return ks;
  };
  for (const TermPtr& t : terms) {
    ++out.terms_checked;
    std::vector<Redex> ra = a(t), rb = b(t);
    auto ka = keys(ra), kb = keys(rb);
    if (ka == kb) continue;
    RelationComparison::Difference d;
    d.term = t;
    for (Redex& r : ra)
      if (!kb.count({r.position.str(), r.rule_index})) d.only_a.push_back(std::move(r));
    for (Redex& r : rb)
      if (!ka.count({r.position.str(), r.rule_index})) d.only_b.push_back(std::move(r));
    out.differences.push_back(std::move(d));
  }
  return out;
}

}  // namespace fpr
