#include "proofbench/parsers/lexer.hpp"

#include <cctype>

namespace proofbench::parsers {

std::string SourceSpan::str() const {
  return (file.empty() ? std::string("<input>") : file) + ":" + std::to_string(line) + ":" + std::to_string(column);
}

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Assign: return "':='";
    case Tok::Eq: return "'='";
    case Tok::DotDot: return "'..'";
    case Tok::Plus: return "'+'";
    case Tok::Neg: return "'~'";
    case Tok::And: return "'/\\'";
    case Tok::Or: return "'\\/'";
    case Tok::Imp: return "'->'";
    case Tok::Turnstile: return "'|-'";
    case Tok::End: return "end of input";
    case Tok::Error: return "invalid character";
  }
  return "?";
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

} // namespace

std::vector<Token> tokenize(std::string_view text, const SourceSpan& origin) {
  std::vector<Token> out;
  std::size_t i = 0, line = origin.line, col = origin.column;
  auto span_at = [&](std::size_t start, std::size_t l, std::size_t c, std::size_t len) {
    return SourceSpan{origin.file, l, c, origin.offset + start, len};
  };
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '%' || (c == '/' && i + 1 < text.size() && text[i + 1] == '/')) {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    std::size_t start = i, l = line, cl = col;
    auto two = [&](char a, char b) { return c == a && i + 1 < text.size() && text[i + 1] == b; };
    auto emit = [&](Tok k, std::size_t len) {
      out.push_back({k, std::string(text.substr(start, len)), 0, span_at(start, l, cl, len)});
      advance(len);
    };
    if (c == '\\' && i + 1 < text.size() && ident_start(text[i + 1])) {
      std::size_t j = i + 1;
      while (j < text.size() && ident_char(text[j])) ++j;
      out.push_back({Tok::Ident, std::string(text.substr(i + 1, j - i - 1)), 0, span_at(start, l, cl, j - i)});
      advance(j - i);
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      emit(Tok::Ident, j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      std::string digits(text.substr(i, j - i));
      if (digits.size() > 18) {
        out.push_back({Tok::Error, digits, 0, span_at(start, l, cl, j - i)});
        return out;
      }
      out.push_back({Tok::Number, digits, std::stoull(digits), span_at(start, l, cl, j - i)});
      advance(j - i);
      continue;
    }
    if (two('/', '\\')) { emit(Tok::And, 2); continue; }
    if (two('\\', '/')) { emit(Tok::Or, 2); continue; }
    if (two('-', '>')) { emit(Tok::Imp, 2); continue; }
    if (two('|', '-') || two(':', '-')) { emit(Tok::Turnstile, 2); continue; }
    if (two(':', '=')) { emit(Tok::Assign, 2); continue; }
    if (two('.', '.')) { emit(Tok::DotDot, 2); continue; }
    switch (c) {
      case '(': emit(Tok::LParen, 1); continue;
      case ')': emit(Tok::RParen, 1); continue;
      case '{': emit(Tok::LBrace, 1); continue;
      case '}': emit(Tok::RBrace, 1); continue;
      case ',': emit(Tok::Comma, 1); continue;
      case ':': emit(Tok::Colon, 1); continue;
      case '=': emit(Tok::Eq, 1); continue;
      case '+': emit(Tok::Plus, 1); continue;
      case '~': emit(Tok::Neg, 1); continue;
      default: break;
    }
    out.push_back({Tok::Error, std::string(1, c), 0, span_at(start, l, cl, 1)});
    return out;
  }
  out.push_back({Tok::End, "", 0, span_at(i, line, col, 0)});
  return out;
}

} // namespace proofbench::parsers
