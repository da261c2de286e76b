#include "utamp/symbolic/pddl.hpp"

#include <algorithm>
#include <cctype>

namespace utamp {

ParseError::ParseError(int line_, int column_, std::vector<std::string> expected_,
                       std::string found_)
    : std::runtime_error([&] {
        std::string msg = "parse error at " + std::to_string(line_) + ":" +
                          std::to_string(column_) + ": found '" + found_ + "', expected one of {";
        for (std::size_t i = 0; i < expected_.size(); ++i)
          msg += (i ? ", " : "") + expected_[i];
        return msg + "}";
      }()),
      line(line_),
      column(column_),
      expected(std::move(expected_)),
      found(std::move(found_)) {}

// ---------------------------------------------------------------- export

namespace {

std::string typed_block(const std::vector<TypedName>& items, const std::string& indent) {
  std::string out;
  for (const auto& t : items) out += indent + t.name + " - " + t.type + "\n";
  return out;
}

std::string param_list(const std::vector<TypedName>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i)
    out += (i ? " " : "") + items[i].name + " - " + items[i].type;
  return out;
}

std::string literal_block(const std::vector<Literal>& lits, const std::string& indent) {
  std::string out;
  for (const auto& l : lits) out += "\n" + indent + l.str();
  return out;
}

}  // namespace

std::string export_domain(const Domain& in) {
  Domain d = in;
  canonicalize(d);
  std::string out = "(define (domain " + d.name + ")\n";
  out += "  (:requirements";
  for (const auto& r : d.requirements) out += " " + r;
  out += ")\n";
  out += "  (:types\n" + typed_block(d.types, "    ") + "  )\n";
  out += "  (:constants\n" + typed_block(d.constants, "    ") + "  )\n";
  out += "  (:predicates\n";
  for (const auto& p : d.predicates) {
    out += "    (" + p.name;
    if (!p.parameters.empty()) out += " " + param_list(p.parameters);
    out += ")\n";
  }
  out += "  )\n";
  for (const auto& a : d.actions) {
    out += "  (:action " + a.name + "\n";
    out += "    :parameters (" + param_list(a.parameters) + ")\n";
    out += "    :precondition (and" + literal_block(a.precondition, "      ") + ")\n";
    std::vector<Literal> eff = a.add_effects;
    for (auto l : a.del_effects) {
      l.negated = true;
      eff.push_back(std::move(l));
    }
    out += "    :effect (and" + literal_block(eff, "      ") + ")\n";
    out += "  )\n";
  }
  return out + ")\n";
}

std::string export_problem(const Problem& in) {
  Problem p = in;
  canonicalize(p);
  std::string out = "(define (problem " + p.name + ")\n";
  out += "  (:domain " + p.domain + ")\n";
  out += "  (:objects\n" + typed_block(p.objects, "    ") + "  )\n";
  out += "  (:init\n";
  for (const auto& a : p.init) out += "    " + a.str() + "\n";
  out += "  )\n";
  out += "  (:goal (and";
  for (const auto& a : p.goal) out += "\n    " + a.str();
  out += "))\n";
  return out + ")\n";
}

std::string export_plan(const std::vector<GroundAction>& plan) {
  std::string out;
  for (const auto& a : plan) out += a.str() + "\n";
  return out;
}

// ---------------------------------------------------------------- lexer

namespace {

struct Token {
  enum Kind { lparen, rparen, name, end } kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&] {
    if (s[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
    } else if (c == ';') {
      while (i < s.size() && s[i] != '\n') advance();
    } else if (c == '(' || c == ')') {
      out.push_back({c == '(' ? Token::lparen : Token::rparen, std::string(1, c), line, col});
      advance();
    } else {
      Token t{Token::name, "", line, col};
      while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' &&
             s[i] != ')' && s[i] != ';') {
        t.text += s[i];
        advance();
      }
      out.push_back(std::move(t));
    }
  }
  out.push_back({Token::end, "<end of input>", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  Domain domain() {
    Domain d;
    open();
    keyword("define");
    open();
    keyword("domain");
    d.name = name("domain name");
    close();
    while (peek_section()) {
      const Token& kw = toks_[pos_ + 1];
      if (kw.text == ":requirements") {
        open();
        ++pos_;
        while (at(Token::name)) d.requirements.push_back(toks_[pos_++].text);
        close();
      } else if (kw.text == ":types") {
        open();
        ++pos_;
        d.types = typed_list(false);
        close();
      } else if (kw.text == ":constants") {
        open();
        ++pos_;
        d.constants = typed_list(false);
        close();
      } else if (kw.text == ":predicates") {
        open();
        ++pos_;
        while (at(Token::lparen)) {
          open();
          PredicateDecl p;
          p.name = name("predicate name");
          p.parameters = typed_list(true);
          close();
          d.predicates.push_back(std::move(p));
        }
        close();
      } else if (kw.text == ":action") {
        d.actions.push_back(action());
      } else {
        fail({":requirements", ":types", ":constants", ":predicates", ":action"}, pos_ + 1);
      }
    }
    close();
    expect_end();
    return d;
  }

  Problem problem() {
    Problem p;
    open();
    keyword("define");
    open();
    keyword("problem");
    p.name = name("problem name");
    close();
    open();
    keyword(":domain");
    p.domain = name("domain name");
    close();
    if (peek_section() && toks_[pos_ + 1].text == ":objects") {
      open();
      ++pos_;
      p.objects = typed_list(false);
      close();
    }
    open();
    keyword(":init");
    while (at(Token::lparen)) {
      Literal l = atom(false);
      p.init.push_back({l.predicate, l.args});
    }
    close();
    open();
    keyword(":goal");
    for (const auto& l : conjunction(false)) {
      if (l.negated) fail({"positive goal atom"}, pos_ - 1);
      p.goal.push_back({l.predicate, l.args});
    }
    close();
    close();
    expect_end();
    return p;
  }

  std::vector<PlanStep> plan() {
    std::vector<PlanStep> out;
    while (at(Token::lparen)) {
      Literal l = atom(false);
      out.push_back({l.predicate, l.args});
    }
    expect_end();
    return out;
  }

 private:
  bool at(Token::Kind k) const { return toks_[pos_].kind == k; }

  bool peek_section() const {
    return at(Token::lparen) && toks_[pos_ + 1].kind == Token::name &&
           !toks_[pos_ + 1].text.empty() && toks_[pos_ + 1].text.front() == ':';
  }

  [[noreturn]] void fail(std::vector<std::string> expected, std::size_t at_index) const {
    const Token& t = toks_[std::min(at_index, toks_.size() - 1)];
    throw ParseError(t.line, t.column, std::move(expected), t.text);
  }

  void open() {
    if (!at(Token::lparen)) fail({"("}, pos_);
    ++pos_;
  }
  void close() {
    if (!at(Token::rparen)) fail({")"}, pos_);
    ++pos_;
  }
  void keyword(const std::string& kw) {
    if (!at(Token::name) || toks_[pos_].text != kw) fail({kw}, pos_);
    ++pos_;
  }
  void expect_end() {
    if (!at(Token::end)) fail({"<end of input>"}, pos_);
  }

  static bool plain_name(const std::string& s) {
    return !s.empty() && s.front() != ':' && s.front() != '?' && s != "-";
  }

  std::string name(const std::string& what) {
    if (!at(Token::name) || !plain_name(toks_[pos_].text)) fail({what}, pos_);
    return toks_[pos_++].text;
  }

  // NAME+ '-' TYPE groups; trailing untyped names get "object".
  std::vector<TypedName> typed_list(bool variables) {
    std::vector<TypedName> out;
    std::vector<std::string> pending;
    while (at(Token::name)) {
      const std::string& t = toks_[pos_].text;
      if (t == "-") {
        if (pending.empty()) fail({variables ? "variable" : "name"}, pos_);
        ++pos_;
        const std::string type = name("type name");
        for (auto& n : pending) out.push_back({std::move(n), type});
        pending.clear();
        continue;
      }
      const bool ok = variables ? (t.size() > 1 && t.front() == '?') : plain_name(t);
      if (!ok) fail({variables ? "variable" : "name", "-", ")"}, pos_);
      pending.push_back(t);
      ++pos_;
    }
    for (auto& n : pending) out.push_back({std::move(n), "object"});
    return out;
  }

  Literal atom(bool allow_variables) {
    open();
    Literal l;
    l.predicate = name("predicate name");
    while (at(Token::name)) {
      const std::string& t = toks_[pos_].text;
      const bool ok = plain_name(t) || (allow_variables && t.size() > 1 && t.front() == '?');
      if (!ok) fail({allow_variables ? "term" : "object name", ")"}, pos_);
      l.args.push_back(t);
      ++pos_;
    }
    close();
    return l;
  }

  Literal literal(bool allow_variables) {
    if (at(Token::lparen) && toks_[pos_ + 1].kind == Token::name && toks_[pos_ + 1].text == "not") {
      open();
      ++pos_;
      Literal l = atom(allow_variables);
      l.negated = true;
      close();
      return l;
    }
    return atom(allow_variables);
  }

  // '(' 'and' literal* ')' or a single literal.
  std::vector<Literal> conjunction(bool allow_variables) {
    if (!at(Token::lparen)) fail({"("}, pos_);
    if (toks_[pos_ + 1].kind == Token::name && toks_[pos_ + 1].text == "and") {
      pos_ += 2;
      std::vector<Literal> out;
      while (at(Token::lparen)) out.push_back(literal(allow_variables));
      close();
      return out;
    }
    return {literal(allow_variables)};
  }

  ActionSchema action() {
    ActionSchema a;
    open();
    keyword(":action");
    a.name = name("action name");
    keyword(":parameters");
    open();
    a.parameters = typed_list(true);
    close();
    if (at(Token::name) && toks_[pos_].text == ":precondition") {
      ++pos_;
      a.precondition = conjunction(true);
    }
    if (!at(Token::name) || toks_[pos_].text != ":effect")
      fail({a.precondition.empty() ? ":precondition" : ":effect", ":effect"}, pos_);
    ++pos_;
    for (auto& l : conjunction(true)) {
      if (l.negated) {
        l.negated = false;
        a.del_effects.push_back(std::move(l));
      } else {
        a.add_effects.push_back(std::move(l));
      }
    }
    close();
    return a;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Domain parse_domain(std::string_view text) { return Parser(text).domain(); }
Problem parse_problem(std::string_view text) { return Parser(text).problem(); }
std::vector<PlanStep> parse_plan(std::string_view text) { return Parser(text).plan(); }

std::vector<GroundAction> instantiate_plan(const Domain& d, const std::vector<PlanStep>& steps) {
  std::vector<GroundAction> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(instantiate(d, s.action, s.args));
  return out;
}

}  // namespace utamp
