#pragma once

#include <string>
#include <vector>

#include "fpr/pattern.hpp"
#include "fpr/substitution.hpp"
#include "fpr/term.hpp"

namespace fpr {

struct PatternViolation {
  std::size_t pattern_index = 0;
  std::string reason;
};

struct CheckReport {
  bool ok = true;
  std::vector<PatternViolation> violations;
  std::vector<std::string> notes;
};

/// Simplicity check: no <_, e, h> patterns, no a-mode patterns, and every
/// <t, p, _> has linear t, a variable or flat application at p, and only
/// variables at positions parallel to p.
inline CheckReport check_simple(const std::vector<ForbiddenPattern>& patterns) {
  CheckReport report;
  auto flag = [&](std::size_t i, std::string reason) {
    report.ok = false;
    report.violations.push_back(PatternViolation{i, std::move(reason)});
  };
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    const ForbiddenPattern& fp = patterns[i];
    if (fp.mode == Mode::above) {
      flag(i, "mode 'a' is excluded from simple pattern sets");
      continue;
    }
    if (fp.mode == Mode::here && fp.pos.is_root())
      flag(i, "shape <_, e, h> is excluded from simple pattern sets");
    if (!fp.term->is_linear()) flag(i, "pattern term is not linear");
    TermPtr at = fp.term->subterm(fp.pos);
    if (!at->is_var()) {
      bool flat = true;
      std::vector<Variable> seen;
      for (const TermPtr& a : at->args()) {
        if (!a->is_var()) {
          flat = false;
          break;
        }
        if (std::find(seen.begin(), seen.end(), a->variable()) != seen.end()) {
          flat = false;
          break;
        }
        seen.push_back(a->variable());
      }
      if (!flat)
        flag(i, "subterm at " + fp.pos.str() +
                    " is neither a variable nor a flat application of distinct "
                    "variables");
    }
    for (const Position& q : fp.term->positions()) {
      if (Position::compare(q, fp.pos) != PosOrder::parallel) continue;
      if (!fp.term->subterm(q)->is_var())
        flag(i, "non-variable subterm " + fp.term->subterm(q)->str() +
                    " at position " + q.str() + " parallel to " + fp.pos.str());
    }
  }
  return report;
}

inline CheckReport check_simple(const PatternSystem& sys) {
  return check_simple(sys.patterns());
}

inline bool is_simple(const std::vector<ForbiddenPattern>& patterns) {
  return check_simple(patterns).ok;
}
inline bool is_simple(const PatternSystem& sys) { return check_simple(sys).ok; }

namespace detail {

/// Renames the pattern term so its variables avoid every name in `avoid`.
inline TermPtr rename_away(const TermPtr& t, FreshNamer& namer) {
  Substitution rho;
  for (const Variable& v : t->vars())
    rho.bind(v, Term::var(Variable{namer.fresh(v.name), v.sort}));
  return rho(t);
}

}  // namespace detail

/// Canonicity check (requires simplicity; a non-simple set is reported as
/// non-canonical with the simplicity violations attached). A simple pattern
/// <t, p, mode> is canonical for rule l -> r unless, with t' = t[x]_p for a
/// fresh variable x and pattern/rule renamed apart, either
///   (1) some proper non-variable position q of t' has t'|_q unifiable with
///       l and some q' in PosF(l) satisfies q.q' = p (h) or q.q' > p (b), or
///   (2) some q in PosF(l) has t' unifiable with l|_q and some q' satisfies
///       q.q' in PosF(l) and q' = p (h) or q' > p (b).
/// Condition (1) ranges over positions of t' rather than t, so the hole
/// itself is never a witness; witnesses whose q.q' is not a position of t
/// are additionally flagged in the notes.
inline CheckReport check_canonical(const PatternSystem& sys) {
  CheckReport report = check_simple(sys.patterns());
  if (!report.ok) {
    report.notes.push_back("pattern set is not simple, hence not canonical");
    return report;
  }
  auto flag = [&](std::size_t i, std::string reason) {
    report.ok = false;
    report.violations.push_back(PatternViolation{i, std::move(reason)});
  };
  for (std::size_t i = 0; i < sys.patterns().size(); ++i) {
    const ForbiddenPattern& fp = sys.patterns()[i];
    for (std::size_t j = 0; j < sys.trs().rules().size(); ++j) {
      const Rule& rule = sys.trs().rules()[j];
      FreshNamer namer;
      for (const Variable& v : rule.lhs->vars()) namer.reserve(v.name);
      TermPtr t = detail::rename_away(fp.term, namer);
      Sort hole_sort = t->subterm(fp.pos)->sort();
      TermPtr hole = Term::var(Variable{namer.fresh("x"), hole_sort});
      TermPtr tp = t->replace(fp.pos, hole);
      const TermPtr& l = rule.lhs;
      std::string where = "rule " + std::to_string(j + 1);

      // Condition (1): a step below the match position can rebuild the
      // pattern around itself.
      bool found1 = false;
      for (const Position& q : tp->positions(/*nonvar_only=*/true)) {
        if (found1) break;
        if (q.is_root()) continue;
        if (!unify(tp->subterm(q), l)) continue;
        for (const Position& q2 : l->positions(/*nonvar_only=*/true)) {
          Position qq = q.concat(q2);
          bool hit = fp.mode == Mode::here ? qq == fp.pos
                                           : fp.pos.is_strict_prefix_of(qq);
          if (!hit) continue;
          found1 = true;
          flag(i, where + ": condition (1) at q=" + q.str() + ", q'=" + q2.str());
          if (!fp.term->has_position(qq))
            report.notes.push_back("pattern " + std::to_string(i + 1) + ", " +
                                   where + ": condition (1) witness q.q'=" +
                                   qq.str() + " is not a position of the pattern term");
          break;
        }
      }

      // Condition (2): the match can sit strictly inside a redex.
      for (const Position& q : l->positions(/*nonvar_only=*/true)) {
        if (!unify(tp, l->subterm(q))) continue;
        bool hit = false;
        Position witness;
        if (fp.mode == Mode::here) {
          Position qq = q.concat(fp.pos);
          auto nonvar = l->positions(/*nonvar_only=*/true);
          hit = std::find(nonvar.begin(), nonvar.end(), qq) != nonvar.end();
          witness = fp.pos;
        } else {
          for (const Position& w : l->positions(/*nonvar_only=*/true)) {
            auto q2 = w.strip_prefix(q);
            if (!q2) continue;
            if (fp.pos.is_strict_prefix_of(*q2)) {
              hit = true;
              witness = *q2;
              break;
            }
          }
        }
        if (hit) {
          flag(i, where + ": condition (2) at q=" + q.str() + ", q'=" +
                      witness.str());
          break;
        }
      }
    }
  }
  return report;
}

inline bool is_canonical(const PatternSystem& sys) {
  return check_canonical(sys).ok;
}

}  // namespace fpr
