#include <algorithm>

#include "sky/parser.hpp"

namespace sky {

namespace {

// `not` is reserved for negation and cannot name a predicate or constant.
constexpr const char* kNot = "not";

struct cursor {
  const std::vector<token>& toks;
  std::size_t pos = 0;
  int end_line;
  int end_column;

  bool at_end() const { return pos == toks.size(); }

  const token* peek(std::size_t ahead = 0) const {
    return pos + ahead < toks.size() ? &toks[pos + ahead] : nullptr;
  }

  [[noreturn]] void fail(const std::string& what,
                         std::vector<std::string> expected) const {
    if (const token* t = peek())
      throw parse_error("unexpected '" + t->text + "', expected " + what,
                        t->line, t->column, std::move(expected));
    throw parse_error("unexpected end of input, expected " + what, end_line,
                      end_column, std::move(expected));
  }

  token take() { return toks[pos++]; }

  bool accept_punct(const char* text) {
    const token* t = peek();
    if (t && t->kind == token_kind::punctuation && t->text == text) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect_punct(const char* text) {
    if (!accept_punct(text)) fail(std::string("'") + text + "'", {text});
  }

  token expect(token_kind kind, const char* what) {
    const token* t = peek();
    if (!t || t->kind != kind) fail(what, {what});
    return take();
  }
};

std::string expect_predicate(cursor& cur, const char* what) {
  const token* t = cur.peek();
  if (!t || t->kind != token_kind::identifier) cur.fail(what, {what});
  if (t->text == kNot)
    throw parse_error("'not' is reserved and cannot be used as a name", t->line,
                      t->column, {what});
  return cur.take().text;
}

term parse_term(cursor& cur) {
  const token* t = cur.peek();
  if (!t)
    cur.fail("a term", {"identifier", "variable", "integer"});
  switch (t->kind) {
    case token_kind::identifier:
      if (t->text == kNot)
        throw parse_error("'not' is reserved and cannot be used as a name",
                          t->line, t->column, {"identifier"});
      return make_constant(cur.take().text);
    case token_kind::variable:
      return make_variable(cur.take().text);
    case token_kind::integer:
      return make_constant(cur.take().text);
    default:
      cur.fail("a term", {"identifier", "variable", "integer"});
  }
}

atom parse_atom(cursor& cur) {
  atom a;
  a.predicate = expect_predicate(cur, "predicate name");
  if (cur.accept_punct("(")) {
    a.args.push_back(parse_term(cur));
    while (cur.accept_punct(",")) a.args.push_back(parse_term(cur));
    cur.expect_punct(")");
  }
  return a;
}

literal parse_literal(cursor& cur) {
  literal l;
  const token* t = cur.peek();
  if (t && t->kind == token_kind::identifier && t->text == kNot) {
    cur.take();
    l.negated = true;
  }
  l.a = parse_atom(cur);
  return l;
}

std::vector<literal> parse_body(cursor& cur) {
  std::vector<literal> body;
  body.push_back(parse_literal(cur));
  while (cur.accept_punct(",")) body.push_back(parse_literal(cur));
  return body;
}

std::vector<std::string> parse_predlist(cursor& cur) {
  std::vector<std::string> names;
  names.push_back(expect_predicate(cur, "predicate name"));
  while (cur.accept_punct(",")) names.push_back(expect_predicate(cur, "predicate name"));
  return names;
}

void parse_statement(cursor& cur, std::vector<rule>& rules, directive_sets& ds) {
  const token* t = cur.peek();
  const int line = t->line, column = t->column;

  if (t->kind == token_kind::directive) {
    const std::string kind = cur.take().text;
    if (kind == "#guess") {
      rule r;
      r.kind = rule_kind::guess;
      r.line = line;
      r.column = column;
      r.head = parse_atom(cur);
      if (cur.accept_punct(":-")) r.body = parse_body(cur);
      cur.expect_punct(".");
      rules.push_back(std::move(r));
      return;
    }
    std::vector<std::string> names = parse_predlist(cur);
    cur.expect_punct(".");
    auto& dst = kind == "#minimize" ? ds.minimize : kind == "#fix" ? ds.fix : ds.show;
    dst.insert(dst.end(), names.begin(), names.end());
    return;
  }

  if (t->kind == token_kind::punctuation && t->text == ":-") {
    cur.take();
    rule r;
    r.kind = rule_kind::constraint;
    r.line = line;
    r.column = column;
    r.body = parse_body(cur);
    cur.expect_punct(".");
    rules.push_back(std::move(r));
    return;
  }

  if (t->kind == token_kind::identifier) {
    rule r;
    r.line = line;
    r.column = column;
    r.head = parse_atom(cur);
    if (cur.accept_punct(":-")) {
      r.kind = rule_kind::rule;
      r.body = parse_body(cur);
    } else {
      r.kind = rule_kind::fact;
    }
    cur.expect_punct(".");
    rules.push_back(std::move(r));
    return;
  }

  cur.fail("a statement", {"identifier", "':-'", "#guess", "#minimize", "#fix", "#show"});
}

}  // namespace

program parse_program(std::string_view text) {
  const std::vector<token> toks = tokenize(text);

  int end_line = 1, end_column = 1;
  for (char c : text) {
    if (c == '\n') {
      ++end_line;
      end_column = 1;
    } else {
      ++end_column;
    }
  }

  cursor cur{toks, 0, end_line, end_column};
  std::vector<rule> rules;
  directive_sets ds;
  while (!cur.at_end()) parse_statement(cur, rules, ds);
  return finalize_program(std::move(rules), ds);
}

std::string to_text(const program& p) {
  std::string out;
  for (const rule& r : p.rules) {
    out += render(r);
    out += "\n";
  }
  auto emit_list = [&](const char* directive, const std::set<std::string>& names) {
    if (names.empty()) return;
    out += directive;
    bool first = true;
    for (const std::string& n : names) {
      out += first ? " " : ", ";
      out += n;
      first = false;
    }
    out += ".\n";
  };
  emit_list("#minimize", p.policy.minimized);
  std::set<std::string> explicit_fixed;
  for (const std::string& f : p.policy.fixed)
    if (!p.edb_predicates.count(f)) explicit_fixed.insert(f);
  emit_list("#fix", explicit_fixed);
  emit_list("#show", p.show);
  return out;
}

}  // namespace sky
