#pragma once

#include <deque>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fpr/errors.hpp"
#include "fpr/substitution.hpp"
#include "fpr/term.hpp"

namespace fpr {

/// An oriented rewrite rule l -> r.
struct Rule {
  TermPtr lhs;
  TermPtr rhs;

  std::string str() const { return lhs->str() + " -> " + rhs->str(); }

  bool is_left_linear() const { return lhs->is_linear(); }

  friend bool operator==(const Rule& a, const Rule& b) {
    return term_eq(a.lhs, b.lhs) && term_eq(a.rhs, b.rhs);
  }
  friend bool operator!=(const Rule& a, const Rule& b) { return !(a == b); }
};

/// A variant of the rule whose variable names avoid `avoid`; both sides are
/// renamed consistently and only colliding variables change.
inline Rule rename_apart(const Rule& r, const std::set<std::string>& avoid) {
  FreshNamer namer(avoid);
  std::vector<Variable> vars = r.lhs->vars();
  for (const Variable& v : r.rhs->vars())
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  for (const Variable& v : vars) namer.reserve(v.name);
  Substitution rho;
  bool any = false;
  for (const Variable& v : vars) {
    if (!avoid.count(v.name)) continue;
    rho.bind(v, Term::var(Variable{namer.fresh(v.name), v.sort}));
    any = true;
  }
  return any ? Rule{rho(r.lhs), rho(r.rhs)} : r;
}

/// Renames a rule's variables to base1, base2, ... in order of first
/// occurrence across lhs then rhs. Rules are variants iff canonical forms
/// are equal.
inline Rule canonicalize_variables(const Rule& r, const std::string& base = "x") {
  Substitution rho;
  std::size_t n = 0;
  for (const Variable& v : r.lhs->vars())
    rho.bind(v, Term::var(Variable{base + std::to_string(++n), v.sort}));
  for (const Variable& v : r.rhs->vars())
    if (!rho.lookup(v))
      rho.bind(v, Term::var(Variable{base + std::to_string(++n), v.sort}));
  return Rule{rho(r.lhs), rho(r.rhs)};
}

/// A term rewriting system: a signature plus an ordered list of rules.
/// Construction rejects variable left-hand sides, sort changes, extra
/// right-hand-side variables, and symbols foreign to the signature.
class Trs {
 public:
  Trs(Signature sig, std::vector<Rule> rules)
      : sig_(std::move(sig)), rules_(std::move(rules)) {
    for (std::size_t i = 0; i < rules_.size(); ++i) validate_rule(i);
  }

  const Signature& signature() const { return sig_; }
  const std::vector<Rule>& rules() const { return rules_; }

  bool is_left_linear() const {
    for (const Rule& r : rules_)
      if (!r.is_left_linear()) return false;
    return true;
  }

  /// Root symbols of left-hand sides.
  std::vector<FunSymPtr> defined_symbols() const {
    std::vector<FunSymPtr> out;
    for (const auto& f : sig_.symbols()) {
      for (const Rule& r : rules_) {
        if (r.lhs->sym()->name == f->name) {
          out.push_back(f);
          break;
        }
      }
    }
    return out;
  }

  std::vector<FunSymPtr> constructors() const {
    auto defined = defined_symbols();
    std::vector<FunSymPtr> out;
    for (const auto& f : sig_.symbols()) {
      bool is_def = false;
      for (const auto& d : defined) is_def = is_def || d->name == f->name;
      if (!is_def) out.push_back(f);
    }
    return out;
  }

 private:
  void validate_rule(std::size_t i) const {
    const Rule& r = rules_[i];
    std::string where = "rule " + std::to_string(i + 1);
    if (!r.lhs || !r.rhs) throw SystemError(where + ": null side");
    if (r.lhs->is_var())
      throw SystemError(where + ": left-hand side is a variable");
    if (r.lhs->sort() != r.rhs->sort())
      throw SystemError(where + ": sides have sorts " + r.lhs->sort().name +
                        " and " + r.rhs->sort().name);
    auto lv = r.lhs->vars();
    for (const Variable& v : r.rhs->vars()) {
      if (std::find(lv.begin(), lv.end(), v) == lv.end())
        throw SystemError(where + ": right-hand side introduces variable " + v.name);
    }
    check_symbols(r.lhs, where);
    check_symbols(r.rhs, where);
  }

  void check_symbols(const TermPtr& t, const std::string& where) const {
    if (t->is_var()) return;
    FunSymPtr f = sig_.find(t->sym()->name);
    if (!f || *f != *t->sym())
      throw SystemError(where + ": symbol " + t->sym()->name +
                        " is not in the signature");
    for (const TermPtr& a : t->args()) check_symbols(a, where);
  }

  Signature sig_;
  std::vector<Rule> rules_;
};

/// A concrete reducible occurrence: subterm_at(t, position) equals
/// apply(matcher, rules[rule_index].lhs).
struct Redex {
  Position position;
  std::size_t rule_index = 0;
  Substitution matcher;
};

/// All redexes of t, ordered by position (lexicographic) and then rule index.
inline std::vector<Redex> redexes(const Trs& trs, const TermPtr& t) {
  std::vector<Redex> out;
  for (const Position& p : t->positions(/*nonvar_only=*/true)) {
    TermPtr sub = t->subterm(p);
    for (std::size_t i = 0; i < trs.rules().size(); ++i) {
      if (auto sigma = match(trs.rules()[i].lhs, sub))
        out.push_back(Redex{p, i, std::move(*sigma)});
    }
  }
  return out;
}

/// Contracts one redex. The redex is revalidated against t.
inline TermPtr step(const Trs& trs, const TermPtr& t, const Redex& rdx) {
  if (rdx.rule_index >= trs.rules().size())
    throw InvalidRedexError("rule index " + std::to_string(rdx.rule_index) +
                            " out of range");
  if (!t->has_position(rdx.position))
    throw InvalidRedexError("no position " + rdx.position.str() + " in " + t->str());
  const Rule& rule = trs.rules()[rdx.rule_index];
  auto sigma = match(rule.lhs, t->subterm(rdx.position));
  if (!sigma)
    throw InvalidRedexError("rule " + std::to_string(rdx.rule_index) +
                            " does not match at " + rdx.position.str());
  return t->replace(rdx.position, (*sigma)(rule.rhs));
}

/// Redexes with no redex strictly below them.
inline std::vector<Redex> innermost_redexes(const Trs& trs, const TermPtr& t) {
  std::vector<Redex> all = redexes(trs, t);
  std::vector<Redex> out;
  for (const Redex& r : all) {
    bool has_below = false;
    for (const Redex& q : all)
      has_below = has_below || r.position.is_strict_prefix_of(q.position);
    if (!has_below) out.push_back(r);
  }
  return out;
}

/// Redexes with no redex strictly above them.
inline std::vector<Redex> outermost_redexes(const Trs& trs, const TermPtr& t) {
  std::vector<Redex> all = redexes(trs, t);
  std::vector<Redex> out;
  for (const Redex& r : all) {
    bool has_above = false;
    for (const Redex& q : all)
      has_above = has_above || q.position.is_strict_prefix_of(r.position);
    if (!has_above) out.push_back(r);
  }
  return out;
}

/// Bounded breadth-first closure under plain rewriting.
struct ReachableSet {
  std::vector<TermPtr> terms;  // discovery order; starts with the seed
  bool truncated = false;      // true if either budget cut exploration short
};

inline ReachableSet reachable(const Trs& trs, const TermPtr& t,
                              std::size_t max_steps, std::size_t max_terms = 100000) {
  ReachableSet out;
  std::unordered_set<TermPtr, TermPtrHash, TermPtrEq> seen;
  std::deque<std::pair<TermPtr, std::size_t>> queue;  // term, distance
  seen.insert(t);
  out.terms.push_back(t);
  queue.emplace_back(t, 0);
  while (!queue.empty()) {
    auto [cur, dist] = queue.front();
    queue.pop_front();
    if (dist == max_steps) {
      // Frontier at the step horizon: flag if anything new lies beyond it.
      for (const Redex& r : redexes(trs, cur)) {
        if (!seen.count(step(trs, cur, r))) {
          out.truncated = true;
          break;
        }
      }
      continue;
    }
    for (const Redex& r : redexes(trs, cur)) {
      TermPtr next = step(trs, cur, r);
      if (!seen.insert(next).second) continue;
      if (out.terms.size() == max_terms) {
        out.truncated = true;
        return out;
      }
      out.terms.push_back(next);
      queue.emplace_back(next, dist + 1);
    }
  }
  return out;
}

/// Outcome of the bounded head-normality probe.
struct HeadNormalVerdict {
  bool root_step_found = false;
  std::vector<TermPtr> witness;  // t = w0 -> ... -> wn with wn root-reducible
};

/// Searches reachable terms (up to max_steps) for one with a root redex.
inline HeadNormalVerdict is_head_normal_bounded(const Trs& trs, const TermPtr& t,
                                                std::size_t max_steps,
                                                std::size_t max_terms = 100000) {
  std::unordered_map<TermPtr, TermPtr, TermPtrHash, TermPtrEq> parent;
  std::deque<std::pair<TermPtr, std::size_t>> queue;
  parent.emplace(t, nullptr);
  queue.emplace_back(t, 0);
  auto root_reducible = [&](const TermPtr& u) {
    for (std::size_t i = 0; i < trs.rules().size(); ++i)
      if (match(trs.rules()[i].lhs, u)) return true;
    return false;
  };
  while (!queue.empty()) {
    auto [cur, dist] = queue.front();
    queue.pop_front();
    if (root_reducible(cur)) {
      HeadNormalVerdict v;
      v.root_step_found = true;
      for (TermPtr w = cur; w; w = parent.at(w)) v.witness.push_back(w);
      std::reverse(v.witness.begin(), v.witness.end());
      return v;
    }
    if (dist == max_steps) continue;
    for (const Redex& r : redexes(trs, cur)) {
      TermPtr next = step(trs, cur, r);
      if (parent.count(next) || parent.size() >= max_terms) continue;
      parent.emplace(next, cur);
      queue.emplace_back(next, dist + 1);
    }
  }
  return HeadNormalVerdict{};
}

/// Contracts every outermost redex at once (first matching rule per
/// position). Returns nullopt on a normal form.
inline std::optional<TermPtr> parallel_outermost_step(const Trs& trs,
                                                      const TermPtr& t) {
  std::vector<Redex> outer = outermost_redexes(trs, t);
  if (outer.empty()) return std::nullopt;
  TermPtr cur = t;
  std::optional<Position> done;
  for (const Redex& r : outer) {
    if (done && *done == r.position) continue;  // keep only the first rule
    cur = cur->replace(r.position, r.matcher(trs.rules()[r.rule_index].rhs));
    done = r.position;
  }
  return cur;
}

}  // namespace fpr
