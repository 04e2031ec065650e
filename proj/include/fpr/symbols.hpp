#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fpr/errors.hpp"

namespace fpr {

/// A sort (type) name. Sorts compare by name.
struct Sort {
  std::string name;

  friend bool operator==(const Sort& a, const Sort& b) { return a.name == b.name; }
  friend bool operator!=(const Sort& a, const Sort& b) { return a.name != b.name; }
  friend bool operator<(const Sort& a, const Sort& b) { return a.name < b.name; }
};

/// A function symbol with a fixed rank: arg_sorts -> result_sort.
struct FunSym {
  std::string name;
  std::vector<Sort> arg_sorts;
  Sort result_sort;

  std::size_t arity() const { return arg_sorts.size(); }

  friend bool operator==(const FunSym& a, const FunSym& b) {
    return a.name == b.name && a.arg_sorts == b.arg_sorts &&
           a.result_sort == b.result_sort;
  }
  friend bool operator!=(const FunSym& a, const FunSym& b) { return !(a == b); }
};

using FunSymPtr = std::shared_ptr<const FunSym>;

/// A many-sorted signature: a set of sorts plus function symbols over them.
/// Symbol names are unique (no overloading). Declaration order is preserved
/// so that everything downstream (enumeration, printing) is deterministic.
class Signature {
 public:
  /// Adds a sort; re-adding the same name is a no-op.
  Sort add_sort(const std::string& name) {
    if (std::find(sorts_.begin(), sorts_.end(), Sort{name}) == sorts_.end())
      sorts_.push_back(Sort{name});
    return Sort{name};
  }

  bool has_sort(const std::string& name) const {
    return std::find(sorts_.begin(), sorts_.end(), Sort{name}) != sorts_.end();
  }

  const std::vector<Sort>& sorts() const { return sorts_; }

  /// Declares a function symbol. All sorts involved must be declared first.
  FunSymPtr add_symbol(const std::string& name, std::vector<Sort> arg_sorts,
                       Sort result_sort) {
    if (by_name_.count(name))
      throw SystemError("duplicate function symbol: " + name);
    for (const Sort& s : arg_sorts)
      if (!has_sort(s.name))
        throw SortError("undeclared sort '" + s.name + "' in rank of " + name);
    if (!has_sort(result_sort.name))
      throw SortError("undeclared sort '" + result_sort.name + "' in rank of " + name);
    auto sym = std::make_shared<const FunSym>(
        FunSym{name, std::move(arg_sorts), std::move(result_sort)});
    symbols_.push_back(sym);
    by_name_.emplace(name, sym);
    return sym;
  }

  /// Looks up a symbol by name; nullptr if absent.
  FunSymPtr find(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? nullptr : it->second;
  }

  bool has_symbol(const std::string& name) const { return by_name_.count(name) != 0; }

  /// All symbols in declaration order.
  const std::vector<FunSymPtr>& symbols() const { return symbols_; }

  /// Symbols whose result sort is `s`, in declaration order.
  std::vector<FunSymPtr> symbols_with_result(const Sort& s) const {
    std::vector<FunSymPtr> out;
    for (const auto& f : symbols_)
      if (f->result_sort == s) out.push_back(f);
    return out;
  }

 private:
  std::vector<Sort> sorts_;
  std::vector<FunSymPtr> symbols_;
  std::map<std::string, FunSymPtr> by_name_;
};

}  // namespace fpr
