#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "fpr/errors.hpp"
#include "fpr/position.hpp"
#include "fpr/symbols.hpp"

namespace fpr {

/// A sorted variable. Two variables are the same iff name and sort agree.
struct Variable {
  std::string name;
  Sort sort;

  friend bool operator==(const Variable& a, const Variable& b) {
    return a.name == b.name && a.sort == b.sort;
  }
  friend bool operator!=(const Variable& a, const Variable& b) { return !(a == b); }
  friend bool operator<(const Variable& a, const Variable& b) {
    if (a.name != b.name) return a.name < b.name;
    return a.sort < b.sort;
  }
};

class Term;
using TermPtr = std::shared_ptr<const Term>;

/// An immutable, many-sorted first-order term. Nodes are shared; all
/// "mutating" operations build new terms. The hash is computed once at
/// construction.
class Term {
 public:
  static TermPtr var(Variable v) { return TermPtr(new Term(std::move(v))); }

  /// Builds f(args...), checking arity and argument sorts.
  static TermPtr app(FunSymPtr f, std::vector<TermPtr> args = {}) {
    if (!f) throw SystemError("null function symbol");
    if (args.size() != f->arity())
      throw SortError("arity mismatch for " + f->name + ": expected " +
                      std::to_string(f->arity()) + ", got " +
                      std::to_string(args.size()));
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (!args[i]) throw SystemError("null argument of " + f->name);
      if (args[i]->sort() != f->arg_sorts[i])
        throw SortError("sort mismatch in argument " + std::to_string(i + 1) +
                        " of " + f->name + ": expected " + f->arg_sorts[i].name +
                        ", got " + args[i]->sort().name);
    }
    return TermPtr(new Term(std::move(f), std::move(args)));
  }

  bool is_var() const { return is_var_; }

  const Variable& variable() const {
    if (!is_var_) throw SystemError("variable() on a function application");
    return var_;
  }

  const FunSymPtr& sym() const {
    if (is_var_) throw SystemError("sym() on a variable");
    return sym_;
  }

  const std::vector<TermPtr>& args() const {
    if (is_var_) throw SystemError("args() on a variable");
    return args_;
  }

  const Sort& sort() const { return sort_; }

  /// Depth: variables and constants have depth 1.
  std::size_t depth() const { return depth_; }

  /// Number of nodes.
  std::size_t size() const { return size_; }

  bool is_ground() const { return ground_; }

  /// Distinct variables in left-to-right order of first occurrence.
  std::vector<Variable> vars() const {
    std::vector<Variable> out;
    collect_vars(out);
    return out;
  }

  /// True iff no variable occurs twice.
  bool is_linear() const {
    std::vector<Variable> seen;
    return linear_check(seen);
  }

  /// All positions in lexicographic (preorder) order. With `nonvar_only`,
  /// positions of variable subterms are skipped.
  std::vector<Position> positions(bool nonvar_only = false) const {
    std::vector<Position> out;
    collect_positions(Position::root(), nonvar_only, out);
    return out;
  }

  /// The subterm at `p`; throws PositionError if `p` is not a position of
  /// this term. Must be called on a shared_ptr-owned term.
  TermPtr subterm(const Position& p) const {
    const Term* t = this;
    TermPtr hold;  // keeps the node alive while we descend
    for (std::size_t ix : p.indices()) {
      if (t->is_var_ || ix > t->args_.size())
        throw PositionError("no subterm at position " + p.str());
      hold = t->args_[ix - 1];
      t = hold.get();
    }
    if (!hold) {
      // p is the root: re-own this node.
      return self();
    }
    return hold;
  }

  bool has_position(const Position& p) const {
    const Term* t = this;
    for (std::size_t ix : p.indices()) {
      if (t->is_var_ || ix > t->args_.size()) return false;
      t = t->args_[ix - 1].get();
    }
    return true;
  }

  /// A copy of this term with the subterm at `p` replaced by `s`. The
  /// replacement must have the sort of the replaced subterm.
  TermPtr replace(const Position& p, const TermPtr& s) const {
    if (!s) throw SystemError("null replacement term");
    return replace_at(p, 0, s);
  }

  std::size_t hash() const { return hash_; }

  std::string str() const {
    std::string out;
    print(out);
    return out;
  }

  friend bool operator==(const Term& a, const Term& b) {
    if (&a == &b) return true;
    if (a.hash_ != b.hash_) return false;
    return compare(a, b) == 0;
  }
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

  /// Deterministic total order: variables before applications; variables by
  /// (name, sort); applications by symbol name, then arguments.
  static int compare(const Term& a, const Term& b) {
    if (a.is_var_ != b.is_var_) return a.is_var_ ? -1 : 1;
    if (a.is_var_) {
      if (a.var_.name != b.var_.name) return a.var_.name < b.var_.name ? -1 : 1;
      if (a.var_.sort != b.var_.sort)
        return a.var_.sort.name < b.var_.sort.name ? -1 : 1;
      return 0;
    }
    if (a.sym_->name != b.sym_->name) return a.sym_->name < b.sym_->name ? -1 : 1;
    if (a.args_.size() != b.args_.size())
      return a.args_.size() < b.args_.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.args_.size(); ++i) {
      if (a.args_[i].get() == b.args_[i].get()) continue;
      int c = compare(*a.args_[i], *b.args_[i]);
      if (c != 0) return c;
    }
    return 0;
  }

 private:
  explicit Term(Variable v)
      : is_var_(true),
        var_(std::move(v)),
        sort_(var_.sort),
        depth_(1),
        size_(1),
        ground_(false) {
    std::size_t h = std::hash<std::string>{}(var_.name);
    h = h * 1000003u ^ std::hash<std::string>{}(var_.sort.name);
    hash_ = h | 1u;  // variables get odd hashes
  }

  Term(FunSymPtr f, std::vector<TermPtr> args)
      : is_var_(false),
        sym_(std::move(f)),
        args_(std::move(args)),
        sort_(sym_->result_sort) {
    std::size_t d = 0, n = 0;
    bool g = true;
    std::size_t h = std::hash<std::string>{}(sym_->name);
    for (const TermPtr& a : args_) {
      d = std::max(d, a->depth_);
      n += a->size_;
      g = g && a->ground_;
      h = h * 1000003u ^ a->hash_;
    }
    depth_ = d + 1;
    size_ = n + 1;
    ground_ = g;
    hash_ = (h << 1);  // applications get even hashes
  }

  TermPtr self() const {
    // Every Term is created through the factories, so shared ownership
    // exists; aliasing constructor would be unsafe, so keep a weak self.
    return TermPtr(new Term(*this));
  }

  void collect_vars(std::vector<Variable>& out) const {
    if (is_var_) {
      if (std::find(out.begin(), out.end(), var_) == out.end()) out.push_back(var_);
      return;
    }
    for (const TermPtr& a : args_) a->collect_vars(out);
  }

  bool linear_check(std::vector<Variable>& seen) const {
    if (is_var_) {
      if (std::find(seen.begin(), seen.end(), var_) != seen.end()) return false;
      seen.push_back(var_);
      return true;
    }
    for (const TermPtr& a : args_)
      if (!a->linear_check(seen)) return false;
    return true;
  }

  void collect_positions(const Position& here, bool nonvar_only,
                         std::vector<Position>& out) const {
    if (is_var_ && nonvar_only) return;
    out.push_back(here);
    if (is_var_) return;
    for (std::size_t i = 0; i < args_.size(); ++i)
      args_[i]->collect_positions(here.plus(i + 1), nonvar_only, out);
  }

  TermPtr replace_at(const Position& p, std::size_t k, const TermPtr& s) const {
    if (k == p.size()) {
      if (s->sort() != sort_)
        throw SortError("replacement at " + p.str() + " changes sort from " +
                        sort_.name + " to " + s->sort().name);
      return s;
    }
    std::size_t ix = p.indices()[k];
    if (is_var_ || ix > args_.size())
      throw PositionError("no subterm at position " + p.str());
    std::vector<TermPtr> args = args_;
    args[ix - 1] = args_[ix - 1]->replace_at(p, k + 1, s);
    return Term::app(sym_, std::move(args));
  }

  void print(std::string& out) const {
    if (is_var_) {
      out += var_.name;
      return;
    }
    out += sym_->name;
    if (args_.empty()) return;
    out += '(';
    for (std::size_t i = 0; i < args_.size(); ++i) {
      if (i) out += ", ";
      args_[i]->print(out);
    }
    out += ')';
  }

  bool is_var_;
  Variable var_;
  FunSymPtr sym_;
  std::vector<TermPtr> args_;
  Sort sort_;
  std::size_t depth_ = 1;
  std::size_t size_ = 1;
  bool ground_ = false;
  std::size_t hash_ = 0;
};

inline bool term_eq(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  return *a == *b;
}

/// Strict weak order on owned terms, for deterministic sets and maps.
struct TermPtrLess {
  bool operator()(const TermPtr& a, const TermPtr& b) const {
    return Term::compare(*a, *b) < 0;
  }
};

struct TermPtrHash {
  std::size_t operator()(const TermPtr& t) const { return t->hash(); }
};

struct TermPtrEq {
  bool operator()(const TermPtr& a, const TermPtr& b) const { return term_eq(a, b); }
};

}  // namespace fpr
