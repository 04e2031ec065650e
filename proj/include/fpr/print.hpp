#pragma once

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fpr/errors.hpp"
#include "fpr/pattern.hpp"
#include "fpr/rewriting.hpp"
#include "fpr/substitution.hpp"

namespace fpr {

inline std::string print_term(const TermPtr& t) { return t->str(); }

namespace detail {

struct PrintedSystem {
  std::vector<std::pair<std::string, Sort>> var_decls;  // first-use order
  std::vector<Rule> rules;
  std::vector<ForbiddenPattern> patterns;
};

/// Prepares rules and patterns for printing: every printed variable name must
/// denote a single sort and must not clash with a function symbol, since the
/// file format declares variables globally. Renames offenders; a no-op for
/// systems that are already consistent (anything built by parse_system is).
inline PrintedSystem layout_for_print(const Signature& sig,
                                      const std::vector<Rule>& rules,
                                      const std::vector<ForbiddenPattern>& patterns) {
  FreshNamer namer;
  for (const FunSymPtr& f : sig.symbols()) namer.reserve(f->name);
  std::vector<TermPtr> terms;
  for (const Rule& r : rules) {
    terms.push_back(r.lhs);
    terms.push_back(r.rhs);
  }
  for (const ForbiddenPattern& fp : patterns) terms.push_back(fp.term);
  for (const TermPtr& t : terms)
    for (const Variable& v : t->vars()) namer.reserve(v.name);

  PrintedSystem out;
  std::map<Variable, std::string> chosen;
  std::map<std::string, Sort> by_name;
  auto assign = [&](const Variable& v) {
    if (chosen.count(v)) return;
    auto it = by_name.find(v.name);
    bool keep = !sig.has_symbol(v.name) &&
                (it == by_name.end() || it->second == v.sort);
    std::string name = keep ? v.name : namer.fresh(v.name);
    chosen.emplace(v, name);
    if (by_name.emplace(name, v.sort).second) out.var_decls.push_back({name, v.sort});
  };
  for (const TermPtr& t : terms)
    for (const Variable& v : t->vars()) assign(v);

  auto rewrite = [&](const TermPtr& t) {
    Substitution s;
    for (const Variable& v : t->vars()) {
      const std::string& name = chosen.at(v);
      if (name != v.name) s.bind(v, Term::var(Variable{name, v.sort}));
    }
    return s.mapping().empty() ? t : s(t);
  };
  for (const Rule& r : rules) out.rules.push_back(Rule{rewrite(r.lhs), rewrite(r.rhs)});
  for (const ForbiddenPattern& fp : patterns)
    out.patterns.push_back(ForbiddenPattern{rewrite(fp.term), fp.pos, fp.mode});
  return out;
}

inline void write_system(std::ostream& os, const Signature& sig,
                         const PrintedSystem& ps, bool with_patterns) {
  if (!sig.sorts().empty()) {
    os << "sorts";
    for (const Sort& s : sig.sorts()) os << ' ' << s.name;
    os << " ;\n";
  }
  for (const FunSymPtr& f : sig.symbols()) {
    os << "fun " << f->name << " :";
    for (const Sort& a : f->arg_sorts) os << ' ' << a.name;
    os << " -> " << f->result_sort.name << " ;\n";
  }
  for (const auto& [name, sort] : ps.var_decls)
    os << "var " << name << " : " << sort.name << " ;\n";
  for (const Rule& r : ps.rules)
    os << "rule " << r.lhs->str() << " -> " << r.rhs->str() << " ;\n";
  if (with_patterns)
    for (const ForbiddenPattern& fp : ps.patterns)
      os << "pattern < " << fp.term->str() << ", " << fp.pos.str() << ", "
         << mode_char(fp.mode) << " > ;\n";
}

inline bool tpdb_name_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '\'';
}

inline std::string tpdb_term(const TermPtr& t,
                             const std::map<std::string, std::string>& symname) {
  if (t->is_var()) return t->variable().name;
  std::string s = symname.at(t->sym()->name);
  if (t->args().empty()) return s;
  s += '(';
  bool first = true;
  for (const TermPtr& a : t->args()) {
    if (!first) s += ',';
    first = false;
    s += tpdb_term(a, symname);
  }
  s += ')';
  return s;
}

}  // namespace detail

/// Renders a TRS in the system file format (re-loadable by parse_system).
inline std::string print_trs(const Trs& trs) {
  auto ps = detail::layout_for_print(trs.signature(), trs.rules(), {});
  std::ostringstream os;
  detail::write_system(os, trs.signature(), ps, false);
  return os.str();
}

/// Renders a full pattern system in the system file format.
inline std::string print_system(const PatternSystem& sys) {
  auto ps = detail::layout_for_print(sys.trs().signature(), sys.trs().rules(),
                                     sys.patterns());
  std::ostringstream os;
  detail::write_system(os, sys.trs().signature(), ps, true);
  return os.str();
}

/// Exports the rules in plain termination-problem format: a (VAR ...) section
/// followed by a (RULES ...) section. Sorts are erased, variables are renamed
/// per rule to x1, x2, ... and ':' is rendered as 'cons'. Byte-deterministic.
inline std::string export_tpdb(const Trs& trs) {
  const Signature& sig = trs.signature();
  std::map<std::string, std::string> symname;
  std::set<std::string> used_names;
  for (const FunSymPtr& f : sig.symbols()) {
    std::string n = f->name;
    if (n == ":") {
      if (sig.has_symbol("cons"))
        throw TpdbExportError("cannot render ':' as 'cons': name already in use");
      n = "cons";
    } else {
      for (char c : n)
        if (!detail::tpdb_name_char(c))
          throw TpdbExportError("symbol name '" + n + "' is not encodable");
    }
    symname[f->name] = n;
    used_names.insert(n);
  }

  std::size_t max_vars = 0;
  for (const Rule& r : trs.rules())
    max_vars = std::max(max_vars, r.lhs->vars().size());

  std::string base;
  for (const char* cand : {"x", "y", "z", "v", "w", "u"}) {
    bool ok = true;
    for (std::size_t i = 1; ok && i <= max_vars; ++i)
      if (used_names.count(cand + std::to_string(i))) ok = false;
    if (ok) {
      base = cand;
      break;
    }
  }
  if (base.empty()) {
    if (max_vars > 0)
      throw TpdbExportError("cannot choose fresh variable names for export");
    base = "x";
  }

  std::ostringstream os;
  os << "(VAR";
  if (max_vars == 0)
    os << ' ';
  else
    for (std::size_t i = 1; i <= max_vars; ++i) os << ' ' << base << i;
  os << ")\n(RULES\n";
  for (const Rule& r : trs.rules()) {
    Rule c = canonicalize_variables(r, base);
    os << detail::tpdb_term(c.lhs, symname) << " -> "
       << detail::tpdb_term(c.rhs, symname) << "\n";
  }
  os << ")\n";
  return os.str();
}

}  // namespace fpr
