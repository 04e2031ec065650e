#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "fpr/errors.hpp"
#include "fpr/pattern.hpp"
#include "fpr/rewriting.hpp"

namespace fpr {

/// A context-sensitive replacement map: for each function symbol, the set of
/// argument positions where rewriting may descend. Symbols without an entry
/// default to all positions.
class ReplacementMap {
 public:
  void set(const std::string& symbol, std::set<std::size_t> indices) {
    mu_[symbol] = std::move(indices);
  }

  bool has_entry(const std::string& symbol) const { return mu_.count(symbol) != 0; }

  std::set<std::size_t> at(const FunSym& f) const {
    auto it = mu_.find(f.name);
    if (it != mu_.end()) return it->second;
    std::set<std::size_t> full;
    for (std::size_t i = 1; i <= f.arity(); ++i) full.insert(i);
    return full;
  }

  void validate(const Signature& sig) const {
    for (const auto& [name, indices] : mu_) {
      FunSymPtr f = sig.find(name);
      if (!f)
        throw ReplacementMapError("replacement map mentions unknown symbol " + name);
      for (std::size_t i : indices)
        if (i == 0 || i > f->arity())
          throw ReplacementMapError("replacement map index " + std::to_string(i) +
                                    " out of range for " + name + "/" +
                                    std::to_string(f->arity()));
    }
  }

  const std::map<std::string, std::set<std::size_t>>& entries() const { return mu_; }

 private:
  std::map<std::string, std::set<std::size_t>> mu_;
};

namespace detail {

inline TermPtr flat_term(const FunSymPtr& f) {
  std::vector<TermPtr> args;
  for (std::size_t i = 0; i < f->arity(); ++i)
    args.push_back(Term::var(Variable{"x" + std::to_string(i + 1), f->arg_sorts[i]}));
  return Term::app(f, std::move(args));
}

}  // namespace detail

/// Context-sensitive rewriting as forbidden patterns: for every symbol f and
/// every argument position j outside mu(f), one h- and one b-pattern at j
/// over the flat term f(x1,...,xn).
inline std::vector<ForbiddenPattern> encode_context_sensitive(
    const ReplacementMap& mu, const Signature& sig) {
  mu.validate(sig);
  std::vector<ForbiddenPattern> out;
  for (const FunSymPtr& f : sig.symbols()) {
    std::set<std::size_t> allowed = mu.at(*f);
    for (std::size_t j = 1; j <= f->arity(); ++j) {
      if (allowed.count(j)) continue;
      TermPtr flat = detail::flat_term(f);
      out.push_back(ForbiddenPattern{flat, Position::of({j}), Mode::here});
      out.push_back(ForbiddenPattern{flat, Position::of({j}), Mode::below});
    }
  }
  return out;
}

/// Innermost rewriting as forbidden patterns: <l, e, a> per left-hand side.
inline std::vector<ForbiddenPattern> encode_innermost(const Trs& trs) {
  std::vector<ForbiddenPattern> out;
  for (const Rule& r : trs.rules())
    out.push_back(ForbiddenPattern{r.lhs, Position::root(), Mode::above});
  return out;
}

/// Outermost rewriting as forbidden patterns: <l, e, b> per left-hand side.
inline std::vector<ForbiddenPattern> encode_outermost(const Trs& trs) {
  std::vector<ForbiddenPattern> out;
  for (const Rule& r : trs.rules())
    out.push_back(ForbiddenPattern{r.lhs, Position::root(), Mode::below});
  return out;
}

/// Reference oracle for context-sensitive rewriting: redexes whose path from
/// the root uses only argument positions allowed by mu.
inline std::vector<Redex> csr_redexes(const Trs& trs, const ReplacementMap& mu,
                                      const TermPtr& t) {
  mu.validate(trs.signature());
  std::vector<Redex> out;
  for (Redex& r : redexes(trs, t)) {
    bool allowed = true;
    TermPtr cur = t;
    for (std::size_t ix : r.position.indices()) {
      if (!mu.at(*cur->sym()).count(ix)) {
        allowed = false;
        break;
      }
      cur = cur->args()[ix - 1];
    }
    if (allowed) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace fpr
