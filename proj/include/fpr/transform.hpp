#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fpr/errors.hpp"
#include "fpr/pattern.hpp"
#include "fpr/rewriting.hpp"
#include "fpr/substitution.hpp"
#include "fpr/term.hpp"

namespace fpr {

/// A rewrite rule carrying the position of the embedded original rule. The
/// subterm of the left-hand side at `tag` is non-variable and rooted by an
/// original defined symbol.
struct TaggedRule {
  Rule rule;
  Position tag;
  std::size_t origin_index = 0;  // which input rule this descends from

  std::string str() const {
    return "< " + rule.str() + ", " + tag.str() + " >";
  }

  friend bool operator==(const TaggedRule& a, const TaggedRule& b) {
    return a.rule == b.rule && a.tag == b.tag;
  }
  friend bool operator!=(const TaggedRule& a, const TaggedRule& b) {
    return !(a == b);
  }
};

/// A base signature plus one fresh unary top symbol per sort. Top symbols
/// model the empty context and may only ever occur at the root of a term.
class ExtendedSignature {
 public:
  explicit ExtendedSignature(Signature base) : base_(std::move(base)) {
    for (const Sort& s : base_.sorts()) {
      std::string name = "top_" + s.name;
      while (base_.has_symbol(name)) name += "_";
      tops_.emplace(s, std::make_shared<const FunSym>(
                           FunSym{name, {s}, s}));
    }
  }

  const Signature& base() const { return base_; }
  const std::map<Sort, FunSymPtr>& tops() const { return tops_; }

  FunSymPtr top_for(const Sort& s) const {
    auto it = tops_.find(s);
    if (it == tops_.end())
      throw SystemError("no top symbol for sort " + s.name);
    return it->second;
  }

  bool is_top(const std::string& name) const {
    for (const auto& [s, f] : tops_)
      if (f->name == name) return true;
    return false;
  }

  /// Base signature plus the top symbols, in base sort declaration order.
  Signature full() const {
    Signature sig = base_;
    for (const Sort& s : base_.sorts()) {
      auto it = tops_.find(s);
      if (it != tops_.end())
        sig.add_symbol(it->second->name, {s}, s);
    }
    return sig;
  }

  /// A copy keeping only the tops whose names appear in `used_top_names`.
  ExtendedSignature restricted(const std::set<std::string>& used_top_names) const {
    ExtendedSignature out = *this;
    for (auto it = out.tops_.begin(); it != out.tops_.end();) {
      if (used_top_names.count(it->second->name))
        ++it;
      else
        it = out.tops_.erase(it);
    }
    return out;
  }

 private:
  Signature base_;
  std::map<Sort, FunSymPtr> tops_;
};

namespace detail {

inline void require_linear_here(const std::vector<ForbiddenPattern>& pi) {
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (pi[i].mode != Mode::here)
      throw TransformError("pattern " + std::to_string(i + 1) +
                           ": only h-mode patterns are supported here");
    if (!pi[i].term->is_linear())
      throw TransformError("pattern " + std::to_string(i + 1) +
                           ": pattern term must be linear");
  }
}

inline std::set<std::string> rule_var_names(const Rule& r) {
  std::set<std::string> names;
  for (const Variable& v : r.lhs->vars()) names.insert(v.name);
  for (const Variable& v : r.rhs->vars()) names.insert(v.name);
  return names;
}

}  // namespace detail

/// Variables of l that some pattern forces into non-variable shape when its
/// forbidden position is pinned to p: x is relevant iff for some <u,o,h> and
/// the decomposition o = q.p, u|_q unifies with l (renamed apart) by a theta
/// with x theta not a variable.
inline std::vector<Variable> relevant_vars(const TermPtr& l, const Position& p,
                                           const std::vector<ForbiddenPattern>& pi) {
  detail::require_linear_here(pi);
  if (!l->has_position(p))
    throw PositionError("no position " + p.str() + " in " + l->str());
  std::vector<Variable> lhs_vars = l->vars();
  std::set<std::string> names;
  for (const Variable& v : lhs_vars) names.insert(v.name);
  std::vector<bool> relevant(lhs_vars.size(), false);
  for (const ForbiddenPattern& fp : pi) {
    auto q = fp.pos.strip_suffix(p);
    if (!q) continue;
    TermPtr u = rename_apart(fp.term, names);
    auto theta = unify(u->subterm(*q), l);
    if (!theta) continue;
    for (std::size_t i = 0; i < lhs_vars.size(); ++i) {
      auto img = theta->lookup(lhs_vars[i]);
      if (img && !(*img)->is_var()) relevant[i] = true;
    }
  }
  std::vector<Variable> out;
  for (std::size_t i = 0; i < lhs_vars.size(); ++i)
    if (relevant[i]) out.push_back(lhs_vars[i]);
  return out;
}

/// Minimal instantiation: for every relevant variable x and every base
/// symbol f of x's sort, the rule with x replaced by f(fresh args), same tag.
inline std::vector<TaggedRule> instantiate(const TaggedRule& tr,
                                           const std::vector<ForbiddenPattern>& pi,
                                           const Signature& base) {
  std::vector<TaggedRule> out;
  std::set<std::string> names = detail::rule_var_names(tr.rule);
  for (const Variable& x : relevant_vars(tr.rule.lhs, tr.tag, pi)) {
    for (const FunSymPtr& f : base.symbols()) {
      if (f->result_sort != x.sort) continue;
      FreshNamer namer(names);
      std::vector<TermPtr> args;
      for (const Sort& s : f->arg_sorts)
        args.push_back(Term::var(Variable{namer.fresh(x.name), s}));
      Substitution sigma;
      sigma.bind(x, Term::app(f, std::move(args)));
      out.push_back(TaggedRule{Rule{sigma(tr.rule.lhs), sigma(tr.rule.rhs)},
                               tr.tag, tr.origin_index});
    }
  }
  return out;
}

/// Minimal embedding: if some pattern <u,o,h> with o = q.tag, q != e, has
/// u|_q unifiable with the left-hand side, wrap the rule into every argument
/// slot of matching sort of every base symbol and of the lhs-sort top; the
/// tag is pushed down accordingly.
inline std::vector<TaggedRule> embed(const TaggedRule& tr,
                                     const std::vector<ForbiddenPattern>& pi,
                                     const ExtendedSignature& ext) {
  detail::require_linear_here(pi);
  const TermPtr& l = tr.rule.lhs;
  std::set<std::string> names = detail::rule_var_names(tr.rule);
  bool trigger = false;
  for (const ForbiddenPattern& fp : pi) {
    auto q = fp.pos.strip_suffix(tr.tag);
    if (!q || q->is_root()) continue;
    TermPtr u = rename_apart(fp.term, names);
    if (unify(u->subterm(*q), l)) {
      trigger = true;
      break;
    }
  }
  if (!trigger) return {};

  const Sort& s = l->sort();
  std::vector<std::pair<FunSymPtr, std::size_t>> slots;
  for (const FunSymPtr& g : ext.base().symbols())
    for (std::size_t i = 1; i <= g->arity(); ++i)
      if (g->arg_sorts[i - 1] == s) slots.emplace_back(g, i);
  slots.emplace_back(ext.top_for(s), 1);

  std::vector<TaggedRule> out;
  for (const auto& [g, i] : slots) {
    FreshNamer namer(names);
    std::vector<TermPtr> largs, rargs;
    for (std::size_t j = 1; j <= g->arity(); ++j) {
      if (j == i) {
        largs.push_back(tr.rule.lhs);
        rargs.push_back(tr.rule.rhs);
      } else {
        TermPtr v = Term::var(Variable{namer.fresh("x"), g->arg_sorts[j - 1]});
        largs.push_back(v);
        rargs.push_back(v);
      }
    }
    out.push_back(TaggedRule{Rule{Term::app(g, std::move(largs)),
                                  Term::app(g, std::move(rargs))},
                             Position::of({i}).concat(tr.tag), tr.origin_index});
  }
  return out;
}

/// One-step successors: instantiations then embeddings.
inline std::vector<TaggedRule> successors(const TaggedRule& tr,
                                          const std::vector<ForbiddenPattern>& pi,
                                          const ExtendedSignature& ext) {
  std::vector<TaggedRule> out = instantiate(tr, pi, ext.base());
  std::vector<TaggedRule> emb = embed(tr, pi, ext);
  out.insert(out.end(), emb.begin(), emb.end());
  return out;
}

/// True iff the left-hand side itself realizes a forbidden pattern at the
/// tagged position: some <u,o,h> matches l at q with tag = q.o.
inline bool is_obsolete(const TaggedRule& tr,
                        const std::vector<ForbiddenPattern>& pi) {
  detail::require_linear_here(pi);
  for (const ForbiddenPattern& fp : pi) {
    auto q = tr.tag.strip_suffix(fp.pos);
    if (!q) continue;
    if (match(fp.term, tr.rule.lhs->subterm(*q))) return true;
  }
  return false;
}

/// True iff no context (tops only as the empty outer context) and no
/// substitution can place the tagged position of an instance of the rule at
/// a forbidden position. Exact: a pattern <u,o,h> witnesses instability iff
/// either o = w.tag and u|_w unifies with l (hole at or above the match
/// anchor; for a top-rooted l only w = e is realizable), or tag = v.o with
/// v != e and u unifies with l|_v (anchor strictly inside l; l|_v is
/// non-variable because every prefix of the tag is).
inline bool is_stable(const TaggedRule& tr,
                      const std::vector<ForbiddenPattern>& pi,
                      const ExtendedSignature& ext) {
  detail::require_linear_here(pi);
  const TermPtr& l = tr.rule.lhs;
  bool top_rooted = !l->is_var() && ext.is_top(l->sym()->name);
  std::set<std::string> names = detail::rule_var_names(tr.rule);
  for (const ForbiddenPattern& fp : pi) {
    TermPtr u = rename_apart(fp.term, names);
    if (auto w = fp.pos.strip_suffix(tr.tag)) {
      if (!(top_rooted && !w->is_root()))
        if (unify(u->subterm(*w), l)) return false;
    }
    if (auto v = tr.tag.strip_suffix(fp.pos)) {
      if (!v->is_root())
        if (unify(u, l->subterm(*v))) return false;
    }
  }
  return true;
}

/// Result of the rule transformation.
struct TransformResult {
  Trs trs;                       // untagged accepted rules, extended signature
  ExtendedSignature signature;   // base plus the tops actually used
  std::vector<TaggedRule> accepted;
  std::vector<TaggedRule> dropped_obsolete;
  std::size_t iterations = 0;
};

/// Iterated instantiation and embedding: accepts stable rules, discards
/// obsolete ones, and replaces the rest by their successors until nothing is
/// pending. Successors are deduplicated modulo variable renaming (tags
/// included) across the whole run, and a successor that is an instance of an
/// already-accepted rule with the same tag is dropped as redundant; a final
/// sweep removes accepted rules that are proper instances of other accepted
/// rules. Ground reachability is unaffected: the more general rule provides
/// every step an instance would.
inline TransformResult transform(const PatternSystem& sys) {
  const std::vector<ForbiddenPattern>& pi = sys.patterns();
  detail::require_linear_here(pi);
  ExtendedSignature ext(sys.trs().signature());

  std::set<std::string> origin_roots;
  for (const Rule& r : sys.trs().rules()) origin_roots.insert(r.lhs->sym()->name);
  auto check_tag = [&](const TaggedRule& tr) {
    if (!tr.rule.lhs->has_position(tr.tag))
      throw TransformError("tag " + tr.tag.str() + " outside " + tr.rule.lhs->str());
    TermPtr at = tr.rule.lhs->subterm(tr.tag);
    if (at->is_var() || !origin_roots.count(at->sym()->name))
      throw TransformError("tag of " + tr.str() +
                           " does not point at an original rule");
  };
  auto key = [](const TaggedRule& tr) {
    return canonicalize_variables(tr.rule).str() + " @ " + tr.tag.str();
  };
  auto instance_of = [](const TaggedRule& specific, const TaggedRule& general) {
    if (specific.tag != general.tag) return false;
    auto sigma = match(general.rule.lhs, specific.rule.lhs);
    if (!sigma) return false;
    return term_eq((*sigma)(general.rule.rhs), specific.rule.rhs);
  };

  std::vector<TaggedRule> pending;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < sys.trs().rules().size(); ++i) {
    TaggedRule tr{sys.trs().rules()[i], Position::root(), i};
    check_tag(tr);
    if (seen.insert(key(tr)).second) pending.push_back(std::move(tr));
  }

  std::vector<TaggedRule> accepted;
  std::vector<TaggedRule> obsolete;
  std::size_t iterations = 0;
  while (!pending.empty()) {
    if (++iterations > 1000)
      throw TransformError("transformation did not reach a fixpoint");
    std::vector<TaggedRule> next;
    for (const TaggedRule& tr : pending) {
      if (is_stable(tr, pi, ext)) {
        accepted.push_back(tr);
        continue;
      }
      if (is_obsolete(tr, pi)) {
        obsolete.push_back(tr);
        continue;
      }
      std::vector<TaggedRule> succ = successors(tr, pi, ext);
      if (succ.empty())
        throw TransformError("rule " + tr.str() +
                             " has no successors but is neither stable nor obsolete");
      for (TaggedRule& s : succ) {
        check_tag(s);
        if (!seen.insert(key(s)).second) continue;
        bool subsumed = false;
        for (const TaggedRule& acc : accepted)
          subsumed = subsumed || instance_of(s, acc);
        if (!subsumed) next.push_back(std::move(s));
      }
    }
    pending = std::move(next);
  }

  std::vector<bool> drop(accepted.size(), false);
  for (std::size_t i = 0; i < accepted.size(); ++i)
    for (std::size_t j = 0; j < accepted.size(); ++j)
      if (i != j && instance_of(accepted[i], accepted[j])) drop[i] = true;
  std::vector<TaggedRule> kept;
  for (std::size_t i = 0; i < accepted.size(); ++i)
    if (!drop[i]) kept.push_back(std::move(accepted[i]));
  accepted = std::move(kept);

  std::set<std::string> used_tops;
  std::vector<Rule> rules;
  std::set<std::string> rule_keys;
  for (const TaggedRule& tr : accepted) {
    Rule c = canonicalize_variables(tr.rule);
    if (!rule_keys.insert(c.str()).second) continue;
    for (const TermPtr& side : {c.lhs, c.rhs}) {
      for (const Position& p : side->positions(/*nonvar_only=*/true)) {
        const std::string& name = side->subterm(p)->sym()->name;
        if (!ext.is_top(name)) continue;
        if (!p.is_root())
          throw TransformError("top symbol " + name + " below the root in " +
                               c.str());
        used_tops.insert(name);
      }
    }
    rules.push_back(std::move(c));
  }

  ExtendedSignature out_ext = ext.restricted(used_tops);
  Trs out_trs(out_ext.full(), std::move(rules));
  return TransformResult{std::move(out_trs), std::move(out_ext),
                         std::move(accepted), std::move(obsolete), iterations};
}

}  // namespace fpr
