#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fpr/errors.hpp"
#include "fpr/term.hpp"

namespace fpr {

/// A sort-preserving mapping from variables to terms, applied simultaneously.
class Substitution {
 public:
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }

  /// Binds v to t. The sorts must agree; rebinding to a different term is an
  /// error, rebinding to an equal term is a no-op.
  void bind(const Variable& v, const TermPtr& t) {
    if (!t) throw SystemError("null term in substitution");
    if (t->sort() != v.sort)
      throw SortError("binding " + v.name + " : " + v.sort.name + " to a term of sort " +
                      t->sort().name);
    auto [it, inserted] = map_.emplace(v, t);
    if (!inserted && !term_eq(it->second, t))
      throw SystemError("conflicting binding for " + v.name);
  }

  std::optional<TermPtr> lookup(const Variable& v) const {
    auto it = map_.find(v);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  TermPtr operator()(const TermPtr& t) const {
    if (!t) throw SystemError("null term");
    if (map_.empty() || t->is_ground()) return t;
    if (t->is_var()) {
      auto it = map_.find(t->variable());
      return it == map_.end() ? t : it->second;
    }
    std::vector<TermPtr> args;
    args.reserve(t->args().size());
    bool changed = false;
    for (const TermPtr& a : t->args()) {
      args.push_back((*this)(a));
      changed = changed || args.back().get() != a.get();
    }
    if (!changed) return t;
    return Term::app(t->sym(), std::move(args));
  }

  /// Applies {v -> t} to the range of this substitution, then adds the
  /// binding. Used to keep unifiers idempotent.
  void compose_bind(const Variable& v, const TermPtr& t) {
    Substitution single;
    single.bind(v, t);
    for (auto& [x, u] : map_) u = single(u);
    bind(v, t);
  }

  const std::map<Variable, TermPtr>& mapping() const { return map_; }

 private:
  std::map<Variable, TermPtr> map_;
};

namespace detail {

inline bool match_into(const TermPtr& pattern, const TermPtr& subject,
                       Substitution& sigma) {
  if (pattern->is_var()) {
    if (pattern->sort() != subject->sort()) return false;
    if (auto bound = sigma.lookup(pattern->variable()))
      return term_eq(*bound, subject);
    sigma.bind(pattern->variable(), subject);
    return true;
  }
  if (subject->is_var()) return false;
  if (pattern->sym()->name != subject->sym()->name) return false;
  for (std::size_t i = 0; i < pattern->args().size(); ++i)
    if (!match_into(pattern->args()[i], subject->args()[i], sigma)) return false;
  return true;
}

inline bool occurs(const Variable& v, const TermPtr& t) {
  if (t->is_var()) return t->variable() == v;
  for (const TermPtr& a : t->args())
    if (occurs(v, a)) return true;
  return false;
}

}  // namespace detail

/// Syntactic matching: a substitution sigma with pattern sigma = subject,
/// or nullopt.
inline std::optional<Substitution> match(const TermPtr& pattern,
                                         const TermPtr& subject) {
  Substitution sigma;
  if (detail::match_into(pattern, subject, sigma)) return sigma;
  return std::nullopt;
}

/// Syntactic unification with occurs check. Returns an idempotent most
/// general unifier, or nullopt. Variable-variable pairs bind left to right.
inline std::optional<Substitution> unify(const TermPtr& s, const TermPtr& t) {
  std::vector<std::pair<TermPtr, TermPtr>> work{{s, t}};
  Substitution sigma;
  std::size_t i = 0;
  while (i < work.size()) {
    TermPtr a = sigma(work[i].first);
    TermPtr b = sigma(work[i].second);
    ++i;
    if (term_eq(a, b)) continue;
    if (!a->is_var() && b->is_var()) std::swap(a, b);
    if (a->is_var()) {
      if (a->sort() != b->sort()) return std::nullopt;
      if (detail::occurs(a->variable(), b)) return std::nullopt;
      sigma.compose_bind(a->variable(), b);
      continue;
    }
    if (a->sym()->name != b->sym()->name) return std::nullopt;
    for (std::size_t k = 0; k < a->args().size(); ++k)
      work.emplace_back(a->args()[k], b->args()[k]);
  }
  return sigma;
}

/// Hands out variable names that avoid a set of reserved names.
/// Tried in order: base, base', base'', base_3, base_4, ...
class FreshNamer {
 public:
  FreshNamer() = default;
  explicit FreshNamer(std::set<std::string> reserved) : used_(std::move(reserved)) {}

  void reserve(const std::string& name) { used_.insert(name); }

  std::string fresh(const std::string& base) {
    for (std::size_t k = 0;; ++k) {
      std::string cand = candidate(base, k);
      if (used_.insert(cand).second) return cand;
    }
  }

 private:
  static std::string candidate(const std::string& base, std::size_t k) {
    if (k == 0) return base;
    if (k == 1) return base + "'";
    if (k == 2) return base + "''";
    return base + "_" + std::to_string(k);
  }

  std::set<std::string> used_;
};

/// A renaming of `vars` to fresh variables drawn from `namer`.
inline Substitution make_renaming(const std::vector<Variable>& vars,
                                  FreshNamer& namer) {
  Substitution rho;
  for (const Variable& v : vars)
    rho.bind(v, Term::var(Variable{namer.fresh(v.name), v.sort}));
  return rho;
}

/// A variant of t whose variable names avoid `avoid`. Only colliding
/// variables are renamed; replacement names also avoid t's other variables.
inline TermPtr rename_apart(const TermPtr& t, const std::set<std::string>& avoid) {
  FreshNamer namer(avoid);
  for (const Variable& v : t->vars()) namer.reserve(v.name);
  Substitution rho;
  bool any = false;
  for (const Variable& v : t->vars()) {
    if (!avoid.count(v.name)) continue;
    rho.bind(v, Term::var(Variable{namer.fresh(v.name), v.sort}));
    any = true;
  }
  return any ? rho(t) : t;
}

/// Renames the variables of t to base1, base2, ... in order of first
/// occurrence. Two terms are variants iff their canonical forms are equal.
inline TermPtr canonicalize_variables(const TermPtr& t, const std::string& base = "x") {
  Substitution rho;
  std::size_t n = 0;
  for (const Variable& v : t->vars())
    rho.bind(v, Term::var(Variable{base + std::to_string(++n), v.sort}));
  return rho(t);
}

}  // namespace fpr
