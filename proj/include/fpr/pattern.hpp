#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fpr/errors.hpp"
#include "fpr/rewriting.hpp"
#include "fpr/substitution.hpp"
#include "fpr/term.hpp"

namespace fpr {

/// Where a pattern match forbids reduction, relative to its anchored position:
/// at it (h), strictly below it (b), or strictly above it (a).
enum class Mode { here, below, above };

inline char mode_char(Mode m) {
  switch (m) {
    case Mode::here: return 'h';
    case Mode::below: return 'b';
    case Mode::above: return 'a';
  }
  return '?';
}

inline std::optional<Mode> mode_from_char(char c) {
  if (c == 'h') return Mode::here;
  if (c == 'b') return Mode::below;
  if (c == 'a') return Mode::above;
  return std::nullopt;
}

/// A forbidden pattern <term, pos, mode> with pos a position of term.
struct ForbiddenPattern {
  TermPtr term;
  Position pos;
  Mode mode = Mode::here;

  std::string str() const {
    return std::string("< ") + term->str() + ", " + pos.str() + ", " +
           mode_char(mode) + " >";
  }

  friend bool operator==(const ForbiddenPattern& a, const ForbiddenPattern& b) {
    return term_eq(a.term, b.term) && a.pos == b.pos && a.mode == b.mode;
  }
  friend bool operator!=(const ForbiddenPattern& a, const ForbiddenPattern& b) {
    return !(a == b);
  }
};

/// Proof that a position is forbidden: pattern `pattern_index` matches the
/// subject at `match_position` via `matcher`.
struct ForbidWitness {
  std::size_t pattern_index = 0;
  Position match_position;
  Substitution matcher;
};

/// Raised by pi_step when asked to contract a forbidden redex.
class ForbiddenRedexError : public Error {
 public:
  ForbiddenRedexError(const std::string& what, ForbidWitness w)
      : Error(what), witness(std::move(w)) {}
  ForbidWitness witness;
};

/// A TRS together with forbidden patterns. Pattern variables are renamed
/// apart from rule variables on construction (name-level, deterministic), so
/// later unification-based analyses need no extra care for parsed systems.
class PatternSystem {
 public:
  PatternSystem(Trs trs, std::vector<ForbiddenPattern> patterns)
      : trs_(std::move(trs)), patterns_(std::move(patterns)) {
    std::set<std::string> rule_names;
    for (const Rule& r : trs_.rules())
      for (const Variable& v : r.lhs->vars()) rule_names.insert(v.name);
    for (std::size_t i = 0; i < patterns_.size(); ++i) {
      ForbiddenPattern& fp = patterns_[i];
      std::string where = "pattern " + std::to_string(i + 1);
      if (!fp.term) throw SystemError(where + ": null term");
      check_symbols(fp.term, where);
      if (!fp.term->has_position(fp.pos))
        throw SystemError(where + ": position " + fp.pos.str() +
                          " is not a position of " + fp.term->str());
      fp.term = rename_apart(fp.term, rule_names);
    }
  }

  const Trs& trs() const { return trs_; }
  const std::vector<ForbiddenPattern>& patterns() const { return patterns_; }

 private:
  void check_symbols(const TermPtr& t, const std::string& where) const {
    if (t->is_var()) return;
    FunSymPtr f = trs_.signature().find(t->sym()->name);
    if (!f || *f != *t->sym())
      throw SystemError(where + ": symbol " + t->sym()->name +
                        " is not in the signature");
    for (const TermPtr& a : t->args()) check_symbols(a, where);
  }

  Trs trs_;
  std::vector<ForbiddenPattern> patterns_;
};

/// Decides whether position p of t is forbidden. Returns the first witness
/// in (pattern index, match position) lexicographic order, or nullopt.
inline std::optional<ForbidWitness> forbidden(const PatternSystem& sys,
                                              const TermPtr& t, const Position& p) {
  if (!t->has_position(p))
    throw PositionError("no position " + p.str() + " in " + t->str());
  std::vector<Position> anchors = t->positions();
  for (std::size_t i = 0; i < sys.patterns().size(); ++i) {
    const ForbiddenPattern& fp = sys.patterns()[i];
    for (const Position& q : anchors) {
      auto sigma = match(fp.term, t->subterm(q));
      if (!sigma) continue;
      Position at = q.concat(fp.pos);
      bool hit = false;
      switch (fp.mode) {
        case Mode::here: hit = (at == p); break;
        case Mode::below: hit = at.is_strict_prefix_of(p); break;
        case Mode::above: hit = p.is_strict_prefix_of(at); break;
      }
      if (hit) return ForbidWitness{i, q, std::move(*sigma)};
    }
  }
  return std::nullopt;
}

/// Redexes of the underlying TRS whose positions are not forbidden.
inline std::vector<Redex> pi_redexes(const PatternSystem& sys, const TermPtr& t) {
  std::vector<Redex> out;
  for (Redex& r : redexes(sys.trs(), t))
    if (!forbidden(sys, t, r.position)) out.push_back(std::move(r));
  return out;
}

/// Contracts an allowed redex; throws ForbiddenRedexError with the witness
/// if the position is forbidden.
inline TermPtr pi_step(const PatternSystem& sys, const TermPtr& t, const Redex& rdx) {
  if (auto w = forbidden(sys, t, rdx.position))
    throw ForbiddenRedexError(
        "redex at " + rdx.position.str() + " is forbidden by pattern " +
            std::to_string(w->pattern_index + 1) + " matched at " +
            w->match_position.str(),
        std::move(*w));
  return step(sys.trs(), t, rdx);
}

inline bool is_pi_normal_form(const PatternSystem& sys, const TermPtr& t) {
  return pi_redexes(sys, t).empty();
}

}  // namespace fpr
