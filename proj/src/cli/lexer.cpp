#include "lexer.hpp"

#include <cctype>

namespace gq::cli {

std::vector<Token> tokenize(std::string_view source) {
  std::vector<Token> out;
  SourcePosition pos;
  std::size_t i = 0;
  auto advance = [&]() {
    if (source[i] == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
    ++i;
  };
  auto is_digit = [&](std::size_t k) { return k < source.size() && std::isdigit(static_cast<unsigned char>(source[k])); };
  while (i < source.size()) {
    const char c = source[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    if (c == '#') {
      while (i < source.size() && source[i] != '\n') advance();
      continue;
    }
    Token token;
    token.pos = pos;
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      token.kind = TokenKind::Identifier;
      while (i < source.size() && (std::isalnum(static_cast<unsigned char>(source[i])) || source[i] == '_')) advance();
    } else if (is_digit(i) || (c == '.' && is_digit(i + 1))) {
      token.kind = TokenKind::Number;
      while (is_digit(i)) advance();
      if (i < source.size() && source[i] == '.') {
        advance();
        while (is_digit(i)) advance();
      }
      if (i < source.size() && (source[i] == 'e' || source[i] == 'E')) {
        std::size_t k = i + 1;
        if (k < source.size() && (source[k] == '+' || source[k] == '-')) ++k;
        if (is_digit(k)) {
          while (i < k) advance();
          while (is_digit(i)) advance();
        }
      }
    } else if (std::string_view(":;,=()+-*/^").find(c) != std::string_view::npos) {
      token.kind = TokenKind::Punct;
      advance();
    } else {
      throw SyntaxError(std::string("unexpected character '") + c + "'", pos);
    }
    token.text = std::string(source.substr(start, i - start));
    out.push_back(std::move(token));
  }
  Token end;
  end.pos = pos;
  out.push_back(end);
  return out;
}

std::string describe(const Token& token) {
  switch (token.kind) {
    case TokenKind::End: return "end of input";
    case TokenKind::Identifier: return "identifier '" + token.text + "'";
    case TokenKind::Number: return "number " + token.text;
    case TokenKind::Punct: return "'" + token.text + "'";
  }
  return token.text;
}

}  // namespace gq::cli
