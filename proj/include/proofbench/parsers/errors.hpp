#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace proofbench::parsers {

struct SourceSpan {
  std::string file;
  std::size_t line = 1;   // 1-based
  std::size_t column = 1; // 1-based
  std::size_t offset = 0;
  std::size_t length = 0;

  std::string str() const;
};

// Base of all errors that point into the input.
struct SourceError : std::runtime_error {
  SourceError(const SourceSpan& s, const std::string& msg) : std::runtime_error(s.str() + ": " + msg), span(s) {}
  SourceSpan span;
};

struct ParseError : SourceError {
  ParseError(const SourceSpan& s, std::string exp, std::string fnd)
      : SourceError(s, "expected " + exp + ", found " + fnd), expected(std::move(exp)), found(std::move(fnd)) {}
  std::string expected;
  std::string found;
};

struct SemanticError : SourceError {
  using SourceError::SourceError;
};

struct SourceTypeError : SourceError {
  using SourceError::SourceError;
};

// Simple XML document does not follow the fixed element structure.
struct StructureError : std::runtime_error {
  StructureError(const std::string& p, const std::string& msg, std::string attr = {})
      : std::runtime_error(p + ": " + msg), path(p), attribute(std::move(attr)) {}
  std::string path;
  std::string attribute; // missing required attribute, if that is the cause
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace proofbench::parsers
