#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "proofbench/calculus/sequent.hpp"
#include "proofbench/parsers/lexer.hpp"

namespace proofbench::parsers {

using kernel::Term;

// Untyped syntax trees; types are assigned once the whole document is read.
struct RawTerm {
  enum class Kind { Ident, Number, Apply, Plus } kind;
  std::string name;
  std::uint64_t number = 0;
  std::vector<RawTerm> args;
  SourceSpan span;
};

struct RawFormula {
  enum class Kind { Atom, Neg, And, Or, Imp, All, Ex, BigAnd, BigOr } kind;
  std::string name;          // atom predicate, binder variable
  std::vector<RawTerm> args; // atom arguments; bounds for BigAnd/BigOr
  bool indexed = false;      // P_{e}
  std::vector<RawFormula> sub;
  SourceSpan span;
};

struct RawSequent {
  std::vector<RawFormula> ant, suc;
  SourceSpan span;
};

// Recursive descent over a token vector. LL(1), no backtracking.
class TokenCursor {
public:
  explicit TokenCursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t k = 0) const;
  bool at(Tok t) const { return peek().kind == t; }
  bool at_ident(const char* word) const { return at(Tok::Ident) && peek().text == word; }
  Token next();
  Token expect(Tok t, const char* what = nullptr);
  Token expect_ident(const char* word);
  [[noreturn]] void error(const std::string& expected) const;

  RawTerm term();
  RawFormula formula();
  RawSequent sequent();

private:
  RawTerm primary();
  RawFormula or_formula();
  RawFormula and_formula();
  RawFormula unary();
  RawFormula atom();
  std::vector<RawTerm> term_args();

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Assigns types to raw syntax. Parameter variables are found document-wide:
// names in BigAnd/BigOr bounds and indices, in sums, and in argument
// positions that elsewhere hold a parameter expression.
class Typer {
public:
  void add(const RawFormula& f);
  void add(const RawSequent& s);
  void add_term(const RawTerm& t, bool param);
  void add_param_name(const std::string& name) { params_.insert(name); }
  // Fixpoint of the position propagation; call once after all add().
  void solve();

  bool is_param(const std::string& name) const { return params_.count(name) > 0; }
  Term term(const RawTerm& t);
  Term param_term(const RawTerm& t);
  Term formula(const RawFormula& f);
  calculus::FSequent sequent(const RawSequent& s);

  // Free variable / constant split for non-parameter identifiers.
  static bool is_variable_name(const std::string& name);

private:
  struct Position {
    std::string functor;
    std::size_t arity, index;
    bool operator<(const Position& o) const {
      return std::tie(functor, arity, index) < std::tie(o.functor, o.arity, o.index);
    }
  };
  bool param_expr(const RawTerm& t) const;
  bool visit(const RawTerm& t, bool param_pos);
  bool visit(const RawFormula& f);
  Term constant(const std::string& name, const kernel::Type& type, const SourceSpan& span);

  std::vector<RawFormula> formulas_;
  std::vector<std::pair<RawTerm, bool>> terms_;
  std::set<std::string> params_;
  std::set<Position> param_positions_;
  std::map<std::string, kernel::Type> signature_;
};

// Standalone: `A, B |- C` or `A :- B`.
calculus::FSequent parse_formula_sequent(std::string_view text, const std::string& file = {});
Term parse_formula(std::string_view text, const std::string& file = {});

} // namespace proofbench::parsers
