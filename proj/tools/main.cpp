// Command line frontend. Exit codes: 0 affirmative, 1 negative verdict,
// 2 usage or input errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fpr/fpr.hpp"

using nlohmann::json;

namespace {

fpr::TermPtr term_arg(const fpr::SystemFile& sf, const std::string& text) {
  return fpr::parse_term(text, sf.parsed.system.trs().signature(),
                         sf.parsed.variables);
}

std::string rule_str(const fpr::Trs& trs, std::size_t i) {
  return "rule " + std::to_string(i + 1) + " (" + trs.rules()[i].str() + ")";
}

int cmd_validate(const std::string& path) {
  fpr::SystemFile sf = fpr::load_system_file(path);
  const fpr::PatternSystem& sys = sf.parsed.system;
  const fpr::Signature& sig = sys.trs().signature();
  std::cout << "ok: " << sig.sorts().size() << " sorts, "
            << sig.symbols().size() << " symbols, " << sys.trs().rules().size()
            << " rules, " << sys.patterns().size() << " patterns\n";
  for (const auto& d : sf.parsed.diagnostics)
    std::cerr << d.severity << " " << d.location << ": " << d.message << "\n";
  return 0;
}

int cmd_step(const std::string& path, const std::string& term_text) {
  fpr::SystemFile sf = fpr::load_system_file(path);
  const fpr::PatternSystem& sys = sf.parsed.system;
  fpr::TermPtr t = term_arg(sf, term_text);
  for (const fpr::Redex& r : fpr::redexes(sys.trs(), t)) {
    auto w = fpr::forbidden(sys, t, r.position);
    if (!w) {
      fpr::TermPtr u = fpr::step(sys.trs(), t, r);
      std::cout << "allowed   " << r.position.str() << " "
                << rule_str(sys.trs(), r.rule_index) << " -> " << u->str()
                << "\n";
    } else {
      std::cout << "forbidden " << r.position.str() << " "
                << rule_str(sys.trs(), r.rule_index) << " by pattern "
                << (w->pattern_index + 1) << " matched at "
                << w->match_position.str() << "\n";
    }
  }
  return 0;
}

int cmd_reduce(const std::string& path, const std::string& term_text,
               std::size_t max_steps) {
  fpr::SystemFile sf = fpr::load_system_file(path);
  const fpr::PatternSystem& sys = sf.parsed.system;
  fpr::TermPtr t = term_arg(sf, term_text);
  std::cout << t->str() << "\n";
  for (std::size_t i = 0; i < max_steps; ++i) {
    std::vector<fpr::Redex> allowed = fpr::pi_redexes(sys, t);
    if (allowed.empty()) {
      std::cout << "normal form reached after " << i << " steps\n";
      return 0;
    }
    t = fpr::pi_step(sys, t, allowed.front());
    std::cout << "  -> " << t->str() << "   (at " << allowed.front().position.str()
              << ", " << rule_str(sys.trs(), allowed.front().rule_index) << ")\n";
  }
  std::cout << "step budget exhausted\n";
  return 1;
}

int cmd_normalize(const std::string& path, const std::string& term_text,
                  std::size_t steps, std::size_t depth) {
  fpr::SystemFile sf = fpr::load_system_file(path);
  const fpr::PatternSystem& sys = sf.parsed.system;
  fpr::TermPtr t = term_arg(sf, term_text);
  fpr::NormalizeResult nr = fpr::normalize(sys, t, steps, depth);
  for (const std::string& w : nr.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << nr.result->str() << "\n";
  if (!nr.completed) {
    std::cerr << "budget exhausted; result is partial\n";
    return 1;
  }
  return 0;
}

int cmd_check(const std::string& path, bool want_simple, bool want_canonical,
              bool as_json) {
  fpr::SystemFile sf = fpr::load_system_file(path);
  const fpr::PatternSystem& sys = sf.parsed.system;
  if (!want_simple && !want_canonical) want_simple = want_canonical = true;

  bool all_ok = true;
  json out;
  out["verdict"] = json::object();
  out["violations"] = json::array();
  out["notes"] = json::array();
  auto report = [&](const char* name, const fpr::CheckReport& rep) {
    all_ok = all_ok && rep.ok;
    out["verdict"][name] = rep.ok;
    for (const auto& v : rep.violations)
      out["violations"].push_back({{"check", name},
                                   {"pattern", v.pattern_index + 1},
                                   {"reason", v.reason}});
    for (const auto& n : rep.notes) out["notes"].push_back(n);
    if (!as_json) {
      std::cout << name << ": " << (rep.ok ? "yes" : "no") << "\n";
      for (const auto& v : rep.violations)
        std::cout << "  pattern " << (v.pattern_index + 1) << ": " << v.reason
                  << "\n";
      for (const auto& n : rep.notes) std::cout << "  note: " << n << "\n";
    }
  };
  if (want_simple) report("simple", fpr::check_simple(sys));
  if (want_canonical) report("canonical", fpr::check_canonical(sys));
  if (as_json) std::cout << out.dump(2) << "\n";
  return all_ok ? 0 : 1;
}

int cmd_transform(const std::string& path, bool tpdb, const std::string& out_path) {
  fpr::SystemFile sf = fpr::load_system_file(path);
  fpr::TransformResult tr = fpr::transform(sf.parsed.system);
  std::cerr << "accepted " << tr.trs.rules().size() << " rules in "
            << tr.iterations << " iterations (" << tr.dropped_obsolete.size()
            << " obsolete dropped)\n";
  std::string text = tpdb ? fpr::export_tpdb(tr.trs) : fpr::print_trs(tr.trs);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw fpr::Error("cannot write file: " + out_path);
    out << text;
  }
  return 0;
}

int cmd_oracle(const std::string& path, const std::string& encoding,
               std::size_t depth, const std::vector<std::string>& mu_specs) {
  fpr::SystemFile sf = fpr::load_system_file(path);
  const fpr::Trs& trs = sf.parsed.system.trs();

  fpr::ReplacementMap mu;
  for (const std::string& spec : mu_specs) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
      throw fpr::Error("bad --mu entry '" + spec + "', expected name:i,j,...");
    std::string name = spec.substr(0, colon);
    std::set<std::size_t> idx;
    std::string rest = spec.substr(colon + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
      auto comma = rest.find(',', pos);
      std::string piece = rest.substr(pos, comma == std::string::npos
                                               ? std::string::npos
                                               : comma - pos);
      if (!piece.empty()) idx.insert(std::stoull(piece));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    mu.set(name, idx);
  }

  std::vector<fpr::ForbiddenPattern> pats;
  fpr::RedexFn oracle;
  if (encoding == "innermost") {
    pats = fpr::encode_innermost(trs);
    oracle = [&trs](const fpr::TermPtr& t) { return fpr::innermost_redexes(trs, t); };
  } else if (encoding == "outermost") {
    pats = fpr::encode_outermost(trs);
    oracle = [&trs](const fpr::TermPtr& t) { return fpr::outermost_redexes(trs, t); };
  } else if (encoding == "csr") {
    mu.validate(trs.signature());
    pats = fpr::encode_context_sensitive(mu, trs.signature());
    oracle = [&trs, mu](const fpr::TermPtr& t) { return fpr::csr_redexes(trs, mu, t); };
  } else {
    throw fpr::Error("unknown encoding '" + encoding + "'");
  }

  fpr::PatternSystem encoded(trs, pats);
  fpr::RedexFn via_patterns = [&encoded](const fpr::TermPtr& t) {
    return fpr::pi_redexes(encoded, t);
  };
  std::vector<fpr::TermPtr> universe;
  for (const fpr::Sort& s : trs.signature().sorts())
    for (const fpr::TermPtr& t : fpr::enumerate_ground(trs.signature(), s, depth).terms)
      universe.push_back(t);

  fpr::RelationComparison cmp = fpr::compare_relations(via_patterns, oracle, universe);
  if (cmp.equal()) {
    std::cout << "equal over " << cmp.terms_checked << " ground terms (depth <= "
              << depth << ")\n";
    return 0;
  }
  std::cout << cmp.differences.size() << " differing terms of "
            << cmp.terms_checked << "\n";
  for (const auto& d : cmp.differences) {
    std::cout << "  " << d.term->str() << "\n";
    for (const auto& r : d.only_a)
      std::cout << "    encoding only: " << r.position.str() << " "
                << rule_str(trs, r.rule_index) << "\n";
    for (const auto& r : d.only_b)
      std::cout << "    oracle only: " << r.position.str() << " "
                << rule_str(trs, r.rule_index) << "\n";
  }
  return 1;
}

int cmd_ground_check(const std::string& path, std::size_t depth, std::size_t steps,
                     std::size_t kprime, bool as_json) {
  fpr::SystemFile sf = fpr::load_system_file(path);
  fpr::TransformResult tr = fpr::transform(sf.parsed.system);
  fpr::CorrespondenceReport rep =
      fpr::check_ground_correspondence(sf.parsed.system, tr, depth, steps, kprime);
  if (as_json) {
    json out;
    out["verdict"] = rep.ok();
    out["counterexamples"] = json::array();
    for (const auto& c : rep.counterexamples)
      out["counterexamples"].push_back({{"direction", c.direction},
                                        {"from", c.from->str()},
                                        {"to", c.to->str()}});
    out["one_step_failures"] = json::array();
    for (const auto& f : rep.one_step_failures)
      out["one_step_failures"].push_back(
          {{"from", f.from->str()}, {"to", f.to->str()}});
    out["terms_checked"] = rep.terms_checked;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << (rep.ok() ? "correspondence holds" : "correspondence FAILS")
              << " over " << rep.terms_checked << " ground terms (depth <= "
              << depth << ", steps <= " << steps << ")\n";
    for (const auto& c : rep.counterexamples)
      std::cout << "  " << c.direction << ": " << c.from->str() << " vs "
                << c.to->str() << "\n";
    for (const auto& f : rep.one_step_failures)
      std::cout << "  one-step: " << f.from->str() << " -> " << f.to->str()
                << "\n";
  }
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"term rewriting with forbidden patterns"};
  app.require_subcommand(1);

  std::string path, term_text, out_path, encoding;
  std::vector<std::string> mu_specs;
  std::size_t max_steps = 100, steps = 1000, depth = 64;
  std::size_t g_depth = 3, g_steps = 4, g_kprime = 0, o_depth = 3;
  bool want_simple = false, want_canonical = false, as_json = false, tpdb = false;

  CLI::App* validate = app.add_subcommand("validate", "parse and sort-check a system file");
  validate->add_option("file", path, "system file")->required();

  CLI::App* step = app.add_subcommand("step", "list allowed and forbidden redexes of a term");
  step->add_option("file", path)->required();
  step->add_option("-t,--term", term_text, "term to inspect")->required();

  CLI::App* reduce = app.add_subcommand("reduce", "rewrite with the restricted relation, printing the trace");
  reduce->add_option("file", path)->required();
  reduce->add_option("-t,--term", term_text)->required();
  reduce->add_option("--max-steps", max_steps, "step budget")->capture_default_str();

  CLI::App* normalize = app.add_subcommand("normalize", "compute a normal form of the restricted relation");
  normalize->add_option("file", path)->required();
  normalize->add_option("-t,--term", term_text)->required();
  normalize->add_option("--steps", steps, "step budget")->capture_default_str();
  normalize->add_option("--depth", depth, "recursion depth budget")->capture_default_str();

  CLI::App* check = app.add_subcommand("check", "check the pattern set (simple / canonical)");
  check->add_option("file", path)->required();
  check->add_flag("--simple", want_simple, "check simplicity");
  check->add_flag("--canonical", want_canonical, "check canonicity");
  check->add_flag("--json", as_json, "machine readable report");

  CLI::App* transform = app.add_subcommand("transform", "transform into an ordinary TRS preserving ground termination");
  transform->add_option("file", path)->required();
  transform->add_flag("--tpdb", tpdb, "emit plain termination-problem format");
  bool native = false;
  transform->add_flag("--native", native, "emit the system file format (default)");
  transform->add_option("-o,--output", out_path, "output file (default stdout)");

  CLI::App* oracle = app.add_subcommand("oracle", "compare a strategy encoding against its direct oracle");
  oracle->add_option("file", path)->required();
  oracle->add_option("--encoding", encoding, "innermost | outermost | csr")->required();
  oracle->add_option("--depth", o_depth, "ground term depth bound")->capture_default_str();
  oracle->add_option("--mu", mu_specs, "replacement map entry name:i,j,... (csr only)");

  CLI::App* ground = app.add_subcommand("ground-check", "check ground correspondence with the transformed system");
  ground->add_option("file", path)->required();
  ground->add_option("--depth", g_depth, "ground term depth bound")->capture_default_str();
  ground->add_option("--steps", g_steps, "step budget k")->capture_default_str();
  ground->add_option("--kprime", g_kprime, "forward budget k' (default 2k)")->capture_default_str();
  ground->add_flag("--json", as_json, "machine readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(path);
    if (step->parsed()) return cmd_step(path, term_text);
    if (reduce->parsed()) return cmd_reduce(path, term_text, max_steps);
    if (normalize->parsed()) return cmd_normalize(path, term_text, steps, depth);
    if (check->parsed()) return cmd_check(path, want_simple, want_canonical, as_json);
    if (transform->parsed()) return cmd_transform(path, tpdb, out_path);
    if (oracle->parsed()) return cmd_oracle(path, encoding, o_depth, mu_specs);
    if (ground->parsed()) return cmd_ground_check(path, g_depth, g_steps, g_kprime, as_json);
  } catch (const fpr::ParseError& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return 2;
  } catch (const fpr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
