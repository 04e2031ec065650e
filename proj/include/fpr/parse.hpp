#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fpr/errors.hpp"
#include "fpr/pattern.hpp"
#include "fpr/rewriting.hpp"
#include "fpr/term.hpp"

namespace fpr {

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t col)
      : Error("line " + std::to_string(line) + ", col " + std::to_string(col) +
              ": " + msg),
        line(line),
        col(col) {}
  std::size_t line;
  std::size_t col;
};

struct Diagnostic {
  std::string severity;
  std::string location;
  std::string message;
};

struct ParsedSystem {
  PatternSystem system;
  std::map<std::string, Sort> variables;  // declared variable sorts
  std::vector<Diagnostic> diagnostics;
};

namespace detail {

struct Token {
  enum class Kind { ident, colon, semi, comma, lparen, rparen, lt, gt, arrow, dot, end };
  Kind kind = Kind::end;
  std::string text;
  std::size_t line = 0;
  std::size_t col = 0;
};

inline bool ident_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '\'';
}

inline std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    col += n;
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (ident_char(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      out.push_back(Token{Token::Kind::ident, text.substr(i, j - i), line, col});
      advance(j - i);
      continue;
    }
    Token t{Token::Kind::end, std::string(1, c), line, col};
    switch (c) {
      case ':': t.kind = Token::Kind::colon; break;
      case ';': t.kind = Token::Kind::semi; break;
      case ',': t.kind = Token::Kind::comma; break;
      case '(': t.kind = Token::Kind::lparen; break;
      case ')': t.kind = Token::Kind::rparen; break;
      case '<': t.kind = Token::Kind::lt; break;
      case '>': t.kind = Token::Kind::gt; break;
      case '.': t.kind = Token::Kind::dot; break;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          t.kind = Token::Kind::arrow;
          t.text = "->";
          advance(2);
          out.push_back(t);
          continue;
        }
        throw ParseError("expected '->'", line, col);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    advance(1);
    out.push_back(t);
  }
  out.push_back(Token{Token::Kind::end, "", line, col});
  return out;
}

inline std::string kind_name(Token::Kind k) {
  switch (k) {
    case Token::Kind::ident: return "identifier";
    case Token::Kind::colon: return "':'";
    case Token::Kind::semi: return "';'";
    case Token::Kind::comma: return "','";
    case Token::Kind::lparen: return "'('";
    case Token::Kind::rparen: return "')'";
    case Token::Kind::lt: return "'<'";
    case Token::Kind::gt: return "'>'";
    case Token::Kind::arrow: return "'->'";
    case Token::Kind::dot: return "'.'";
    case Token::Kind::end: return "end of input";
  }
  return "?";
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, Signature sig,
         std::map<std::string, Sort> variables)
      : toks_(std::move(tokens)), sig_(std::move(sig)), vars_(std::move(variables)) {}

  const Token& peek() const { return toks_[pos_]; }

  Token next() { return toks_[pos_++]; }

  Token expect(Token::Kind k) {
    if (peek().kind != k)
      throw ParseError("expected " + kind_name(k) + ", found " +
                           (peek().kind == Token::Kind::ident ? "'" + peek().text + "'"
                                                              : kind_name(peek().kind)),
                       peek().line, peek().col);
    return next();
  }

  TermPtr term() {
    Token head = expect(Token::Kind::ident);
    auto vit = vars_.find(head.text);
    if (vit != vars_.end()) {
      if (peek().kind == Token::Kind::lparen)
        throw ParseError("variable " + head.text + " cannot take arguments",
                         peek().line, peek().col);
      return Term::var(Variable{head.text, vit->second});
    }
    FunSymPtr f = sig_.find(head.text);
    if (!f)
      throw ParseError("unknown identifier '" + head.text + "'", head.line, head.col);
    std::vector<TermPtr> args;
    if (peek().kind == Token::Kind::lparen) {
      next();
      if (peek().kind == Token::Kind::rparen)
        throw ParseError("nullary symbols are written without parentheses",
                         head.line, head.col);
      args.push_back(term());
      while (peek().kind == Token::Kind::comma) {
        next();
        args.push_back(term());
      }
      expect(Token::Kind::rparen);
    }
    if (args.size() != f->arity())
      throw ParseError(head.text + " expects " + std::to_string(f->arity()) +
                           " arguments, got " + std::to_string(args.size()),
                       head.line, head.col);
    try {
      return Term::app(f, std::move(args));
    } catch (const SortError& e) {
      throw ParseError(e.what(), head.line, head.col);
    }
  }

  Position position_spec() {
    Token head = expect(Token::Kind::ident);
    if (head.text == "e") return Position::root();
    std::vector<std::size_t> ix;
    Token cur = head;
    while (true) {
      for (char c : cur.text)
        if (c < '0' || c > '9')
          throw ParseError("bad position component '" + cur.text + "'", cur.line,
                           cur.col);
      unsigned long long v = std::stoull(cur.text);
      if (v == 0)
        throw ParseError("position indices are 1-based", cur.line, cur.col);
      ix.push_back(static_cast<std::size_t>(v));
      if (peek().kind != Token::Kind::dot) break;
      next();
      cur = expect(Token::Kind::ident);
    }
    return Position{std::move(ix)};
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Signature sig_;
  std::map<std::string, Sort> vars_;
};

class SystemParser : Parser {
 public:
  explicit SystemParser(const std::string& text)
      : Parser(lex(text), Signature{}, {}) {}

  ParsedSystem run() {
    while (peek().kind != Token::Kind::end) {
      Token head = expect(Token::Kind::ident);
      if (head.text == "sorts")
        sorts_stmt(head);
      else if (head.text == "fun")
        fun_stmt();
      else if (head.text == "var")
        var_stmt();
      else if (head.text == "rule")
        rule_stmt(head);
      else if (head.text == "pattern")
        pattern_stmt(head);
      else
        throw ParseError("unknown statement '" + head.text + "'", head.line, head.col);
    }
    Trs trs(std::move(sig_), std::move(rules_));
    PatternSystem system(std::move(trs), std::move(patterns_));
    return ParsedSystem{std::move(system), std::move(vars_), std::move(diags_)};
  }

 private:
  void sorts_stmt(const Token& head) {
    if (implicit_sort_)
      throw ParseError("sorts must be declared before their first use", head.line,
                       head.col);
    sorts_declared_ = true;
    Token first = expect(Token::Kind::ident);
    sig_.add_sort(first.text);
    while (peek().kind == Token::Kind::ident) sig_.add_sort(next().text);
    expect(Token::Kind::semi);
  }

  Sort resolve_sort(const Token& t) {
    if (sorts_declared_) {
      if (!sig_.has_sort(t.text))
        throw ParseError("undeclared sort '" + t.text + "'", t.line, t.col);
      return Sort{t.text};
    }
    if (implicit_sort_) {
      if (*implicit_sort_ != t.text)
        throw ParseError("without a sorts declaration only one sort may be used "
                         "(already using '" +
                             *implicit_sort_ + "')",
                         t.line, t.col);
      return Sort{t.text};
    }
    implicit_sort_ = t.text;
    return sig_.add_sort(t.text);
  }

  void check_fresh_name(const Token& name) {
    if (sig_.has_symbol(name.text))
      throw ParseError("'" + name.text + "' is already a function symbol",
                       name.line, name.col);
    if (vars_.count(name.text))
      throw ParseError("'" + name.text + "' is already a variable", name.line,
                       name.col);
  }

  void fun_stmt() {
    Token name = expect(Token::Kind::ident);
    check_fresh_name(name);
    expect(Token::Kind::colon);
    std::vector<Sort> arg_sorts;
    while (peek().kind == Token::Kind::ident) arg_sorts.push_back(resolve_sort(next()));
    expect(Token::Kind::arrow);
    Sort result = resolve_sort(expect(Token::Kind::ident));
    expect(Token::Kind::semi);
    sig_.add_symbol(name.text, std::move(arg_sorts), std::move(result));
  }

  void var_stmt() {
    Token name = expect(Token::Kind::ident);
    check_fresh_name(name);
    expect(Token::Kind::colon);
    Sort sort = resolve_sort(expect(Token::Kind::ident));
    expect(Token::Kind::semi);
    vars_.emplace(name.text, std::move(sort));
  }

  void rule_stmt(const Token& head) {
    TermPtr lhs = term();
    expect(Token::Kind::arrow);
    TermPtr rhs = term();
    expect(Token::Kind::semi);
    if (lhs->is_var())
      throw ParseError("left-hand side must not be a variable", head.line, head.col);
    if (lhs->sort() != rhs->sort())
      throw ParseError("rule sides have sorts " + lhs->sort().name + " and " +
                           rhs->sort().name,
                       head.line, head.col);
    auto lv = lhs->vars();
    for (const Variable& v : rhs->vars())
      if (std::find(lv.begin(), lv.end(), v) == lv.end())
        throw ParseError("right-hand side introduces variable " + v.name, head.line,
                         head.col);
    rules_.push_back(Rule{std::move(lhs), std::move(rhs)});
  }

  void pattern_stmt(const Token& head) {
    expect(Token::Kind::lt);
    TermPtr t = term();
    expect(Token::Kind::comma);
    Position p = position_spec();
    expect(Token::Kind::comma);
    Token m = expect(Token::Kind::ident);
    auto mode = m.text.size() == 1 ? mode_from_char(m.text[0]) : std::nullopt;
    if (!mode)
      throw ParseError("mode must be h, b or a", m.line, m.col);
    expect(Token::Kind::gt);
    expect(Token::Kind::semi);
    if (!t->has_position(p))
      throw ParseError("position " + p.str() + " is not a position of " + t->str(),
                       head.line, head.col);
    patterns_.push_back(ForbiddenPattern{std::move(t), std::move(p), *mode});
  }

  bool sorts_declared_ = false;
  std::optional<std::string> implicit_sort_;
  std::vector<Rule> rules_;
  std::vector<ForbiddenPattern> patterns_;
  std::vector<Diagnostic> diags_;
};

}  // namespace detail

/// Parses a full system file (sorts, fun, var, rule, pattern statements).
inline ParsedSystem parse_system(const std::string& text) {
  return detail::SystemParser(text).run();
}

/// Parses a single term against a signature and declared variables.
inline TermPtr parse_term(const std::string& text, const Signature& sig,
                          const std::map<std::string, Sort>& variables) {
  detail::Parser p(detail::lex(text), sig, variables);
  TermPtr t = p.term();
  if (p.peek().kind != detail::Token::Kind::end)
    throw ParseError("trailing input after term", p.peek().line, p.peek().col);
  return t;
}

struct SystemFile {
  std::string path;
  ParsedSystem parsed;
};

inline SystemFile load_system_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return SystemFile{path, parse_system(buf.str())};
}

}  // namespace fpr
