#include <cctype>

#include "sky/parser.hpp"

namespace sky {

parse_error::parse_error(const std::string& message, int line, int column,
                         std::vector<std::string> expected)
    : std::runtime_error(message + " at line " + std::to_string(line) +
                         ", column " + std::to_string(column)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

namespace {

bool ident_start(char c) { return c >= 'a' && c <= 'z'; }
bool var_start(char c) { return c >= 'A' && c <= 'Z'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string printable(char c) {
  if (std::isprint(static_cast<unsigned char>(c))) return std::string(1, c);
  char buf[8];
  std::snprintf(buf, sizeof buf, "\\x%02x", static_cast<unsigned char>(c));
  return buf;
}

}  // namespace

std::vector<token> tokenize(std::string_view text) {
  std::vector<token> out;
  int line = 1, column = 1;
  std::size_t i = 0;
  const std::size_t n = text.size();

  auto advance = [&](std::size_t count = 1) {
    for (std::size_t k = 0; k < count && i < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };

  while (i < n) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance();
      continue;
    }
    if (c == '%') {  // comment to end of line
      while (i < n && text[i] != '\n') advance();
      continue;
    }

    const int tl = line, tc = column;

    if (ident_start(c) || var_start(c)) {
      std::size_t j = i;
      while (j < n && ident_char(text[j])) ++j;
      std::string word(text.substr(i, j - i));
      advance(j - i);
      out.push_back({ident_start(c) ? token_kind::identifier : token_kind::variable,
                     std::move(word), tl, tc});
      continue;
    }

    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j < n && ident_char(text[j]))
        throw parse_error("malformed integer", tl, tc, {"integer"});
      std::string digits(text.substr(i, j - i));
      advance(j - i);
      // canonical decimal: strip leading zeros
      const std::size_t nz = digits.find_first_not_of('0');
      digits = nz == std::string::npos ? "0" : digits.substr(nz);
      out.push_back({token_kind::integer, std::move(digits), tl, tc});
      continue;
    }

    if (c == '#') {
      std::size_t j = i + 1;
      while (j < n && ident_char(text[j])) ++j;
      std::string word(text.substr(i, j - i));
      if (word != "#guess" && word != "#minimize" && word != "#fix" &&
          word != "#show")
        throw parse_error("unknown directive '" + word + "'", tl, tc,
                          {"#guess", "#minimize", "#fix", "#show"});
      advance(j - i);
      out.push_back({token_kind::directive, std::move(word), tl, tc});
      continue;
    }

    if (c == '(' || c == ')' || c == ',' || c == '.') {
      advance();
      out.push_back({token_kind::punctuation, std::string(1, c), tl, tc});
      continue;
    }

    if (c == ':') {
      if (i + 1 < n && text[i + 1] == '-') {
        advance(2);
        out.push_back({token_kind::punctuation, ":-", tl, tc});
        continue;
      }
      throw parse_error("expected ':-'", tl, tc, {":-"});
    }

    throw parse_error("illegal character '" + printable(c) + "'", tl, tc);
  }
  return out;
}

}  // namespace sky
