#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "proofbench/parsers/errors.hpp"

namespace proofbench::parsers {

enum class Tok {
  Ident,
  Number,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  Colon,
  Assign,   // :=
  Eq,       // =
  DotDot,   // ..
  Plus,
  Neg,      // ~
  And,      // /\ .
  Or,       // \/ .
  Imp,      // ->
  Turnstile, // |- or :-
  End,
  Error,    // unlexable input; always the last token
};

const char* tok_name(Tok t);

struct Token {
  Tok kind;
  std::string text; // identifiers without a leading backslash
  std::uint64_t number = 0;
  SourceSpan span;
};

// `//` and `%` start line comments. Lexical errors become a final Error
// token so the parser reports problems in document order. `\name` lexes as identifier `name`.
// Offsets, lines and columns are shifted by the given origin, so text cut
// out of a larger document reports positions in that document.
std::vector<Token> tokenize(std::string_view text, const SourceSpan& origin);

} // namespace proofbench::parsers
