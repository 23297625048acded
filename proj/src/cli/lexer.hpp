#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "genquant/error.hpp"

namespace gq::cli {

enum class TokenKind { Identifier, Number, Punct, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  SourcePosition pos;
};

/// Splits source into identifiers, unsigned decimal numbers and the
/// punctuation `: ; , = ( ) + - * / ^`. `#` starts a comment running to the
/// end of the line. Throws SyntaxError on any other character.
std::vector<Token> tokenize(std::string_view source);

std::string describe(const Token& token);

}  // namespace gq::cli
