#pragma once

// Front end: tokenizer and recursive descent parser for SKY program text.
// parse_program returns a fully validated program; the first syntax error
// stops the parse, semantic violations are collected and thrown together.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sky/ast.hpp"

namespace sky {

enum class token_kind { identifier, variable, integer, punctuation, directive };

struct token {
  token_kind kind = token_kind::identifier;
  std::string text;
  int line = 1;    // 1-based, first character of the lexeme
  int column = 1;
};

class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& message, int line, int column,
              std::vector<std::string> expected = {});

  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

// Comments (`%` to end of line) and whitespace are discarded.
// Throws parse_error on an illegal character or unknown directive.
std::vector<token> tokenize(std::string_view text);

// Throws parse_error (syntax) or validation_error (semantics).
program parse_program(std::string_view text);

// Canonical surface rendering; parse_program(to_text(p)) is structurally
// equal to p.
std::string to_text(const program& p);

}  // namespace sky
