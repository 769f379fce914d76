#include "proofbench/parsers/formula.hpp"

#include <array>
#include <cctype>
#include <string_view>

#include "proofbench/kernel/formula.hpp"
#include "proofbench/kernel/param.hpp"

namespace proofbench::parsers {

using namespace kernel;

const Token& TokenCursor::peek(std::size_t k) const {
  std::size_t i = std::min(pos_ + k, toks_.size() - 1);
  return toks_[i];
}

Token TokenCursor::next() {
  Token t = peek();
  if (pos_ < toks_.size() - 1) ++pos_;
  return t;
}

void TokenCursor::error(const std::string& expected) const {
  const Token& t = peek();
  if (t.kind == Tok::Error) {
    bool number = std::isdigit(static_cast<unsigned char>(t.text[0]));
    throw ParseError(t.span, number ? "a number below 10^18" : "a token", number ? t.text : "'" + t.text + "'");
  }
  std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
  throw ParseError(t.span, expected, found);
}

Token TokenCursor::expect(Tok t, const char* what) {
  if (!at(t)) error(what ? what : tok_name(t));
  return next();
}

Token TokenCursor::expect_ident(const char* word) {
  if (!at_ident(word)) error(std::string("'") + word + "'");
  return next();
}

std::vector<RawTerm> TokenCursor::term_args() {
  std::vector<RawTerm> args;
  expect(Tok::LParen);
  if (!at(Tok::RParen)) {
    args.push_back(term());
    while (at(Tok::Comma)) {
      next();
      args.push_back(term());
    }
  }
  expect(Tok::RParen, "',' or ')'");
  return args;
}

RawTerm TokenCursor::primary() {
  if (at(Tok::Number)) {
    Token t = next();
    return RawTerm{RawTerm::Kind::Number, t.text, t.number, {}, t.span};
  }
  if (at(Tok::LParen)) {
    next();
    RawTerm t = term();
    expect(Tok::RParen);
    return t;
  }
  if (!at(Tok::Ident)) error("a term");
  Token id = next();
  if (at(Tok::LParen)) return RawTerm{RawTerm::Kind::Apply, id.text, 0, term_args(), id.span};
  return RawTerm{RawTerm::Kind::Ident, id.text, 0, {}, id.span};
}

RawTerm TokenCursor::term() {
  RawTerm t = primary();
  while (at(Tok::Plus)) {
    Token op = next();
    RawTerm r = primary();
    t = RawTerm{RawTerm::Kind::Plus, "+", 0, {t, r}, op.span};
  }
  return t;
}

RawFormula TokenCursor::formula() {
  RawFormula l = or_formula();
  if (at(Tok::Imp)) {
    Token op = next();
    RawFormula r = formula();
    return RawFormula{RawFormula::Kind::Imp, {}, {}, false, {l, r}, op.span};
  }
  return l;
}

RawFormula TokenCursor::or_formula() {
  RawFormula l = and_formula();
  while (at(Tok::Or)) {
    Token op = next();
    RawFormula r = and_formula();
    l = RawFormula{RawFormula::Kind::Or, {}, {}, false, {l, r}, op.span};
  }
  return l;
}

RawFormula TokenCursor::and_formula() {
  RawFormula l = unary();
  while (at(Tok::And)) {
    Token op = next();
    RawFormula r = unary();
    l = RawFormula{RawFormula::Kind::And, {}, {}, false, {l, r}, op.span};
  }
  return l;
}

RawFormula TokenCursor::unary() {
  if (at(Tok::Neg)) {
    Token op = next();
    return RawFormula{RawFormula::Kind::Neg, {}, {}, false, {unary()}, op.span};
  }
  if (at(Tok::LParen)) {
    next();
    RawFormula f = formula();
    expect(Tok::RParen, "')'");
    return f;
  }
  if (at_ident("all") || at_ident("ex")) {
    Token q = next();
    Token v = expect(Tok::Ident, "a bound variable");
    RawFormula body = unary();
    return RawFormula{q.text == "all" ? RawFormula::Kind::All : RawFormula::Kind::Ex, v.text, {}, false, {body}, q.span};
  }
  if (at_ident("BigAnd") || at_ident("BigOr")) {
    Token q = next();
    expect(Tok::LParen);
    Token v = expect(Tok::Ident, "an index variable");
    expect(Tok::Eq);
    RawTerm lo = term();
    expect(Tok::DotDot);
    RawTerm hi = term();
    expect(Tok::RParen);
    RawFormula body = unary();
    return RawFormula{q.text == "BigAnd" ? RawFormula::Kind::BigAnd : RawFormula::Kind::BigOr, v.text, {lo, hi}, false,
                      {body}, q.span};
  }
  return atom();
}

RawFormula TokenCursor::atom() {
  if (!at(Tok::Ident)) error("a formula");
  Token id = next();
  RawFormula f{RawFormula::Kind::Atom, id.text, {}, false, {}, id.span};
  if (at(Tok::LParen)) {
    f.args = term_args();
  } else if (at(Tok::LBrace) && id.text.size() > 1 && id.text.back() == '_') {
    next();
    f.args.push_back(term());
    expect(Tok::RBrace);
    f.indexed = true;
  }
  return f;
}

RawSequent TokenCursor::sequent() {
  RawSequent s;
  s.span = peek().span;
  auto side = [&](std::vector<RawFormula>& out) {
    out.push_back(formula());
    while (at(Tok::Comma)) {
      next();
      out.push_back(formula());
    }
  };
  if (!at(Tok::Turnstile)) side(s.ant);
  expect(Tok::Turnstile, "',' or '|-'");
  if (!at(Tok::RParen) && !at(Tok::End) && !at(Tok::Comma)) side(s.suc);
  return s;
}

namespace {
constexpr std::array<const char*, 10> kGreekVars{"alpha", "beta",  "gamma", "delta", "epsilon",
                                                  "zeta",  "theta", "eta",   "mu",    "nu"};
} // namespace

bool Typer::is_variable_name(const std::string& name) {
  if (name.empty()) return false;
  if (name[0] >= 'u' && name[0] <= 'z') return true;
  for (std::string_view g : kGreekVars)
    if (name.rfind(g, 0) == 0 && (name.size() == g.size() || !std::isalpha(static_cast<unsigned char>(name[g.size()]))))
      return true;
  return false;
}

void Typer::add(const RawFormula& f) { formulas_.push_back(f); }
void Typer::add(const RawSequent& s) {
  for (const auto& f : s.ant) add(f);
  for (const auto& f : s.suc) add(f);
}
void Typer::add_term(const RawTerm& t, bool param) { terms_.emplace_back(t, param); }

bool Typer::param_expr(const RawTerm& t) const {
  switch (t.kind) {
    case RawTerm::Kind::Number:
    case RawTerm::Kind::Plus: return true;
    case RawTerm::Kind::Ident: return is_param(t.name);
    case RawTerm::Kind::Apply: return false;
  }
  return false;
}

// Returns true if anything changed.
bool Typer::visit(const RawTerm& t, bool param_pos) {
  bool changed = false;
  switch (t.kind) {
    case RawTerm::Kind::Ident:
      if (param_pos) changed |= params_.insert(t.name).second;
      break;
    case RawTerm::Kind::Number:
      break;
    case RawTerm::Kind::Plus:
      for (const auto& a : t.args) changed |= visit(a, true);
      break;
    case RawTerm::Kind::Apply:
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        Position p{t.name, t.args.size(), i};
        if (param_expr(t.args[i])) changed |= param_positions_.insert(p).second;
        changed |= visit(t.args[i], param_positions_.count(p) > 0);
      }
      break;
  }
  return changed;
}

bool Typer::visit(const RawFormula& f) {
  bool changed = false;
  switch (f.kind) {
    case RawFormula::Kind::Atom:
      for (std::size_t i = 0; i < f.args.size(); ++i) {
        Position p{f.name, f.args.size(), i};
        if (param_expr(f.args[i])) changed |= param_positions_.insert(p).second;
        changed |= visit(f.args[i], param_positions_.count(p) > 0);
      }
      break;
    case RawFormula::Kind::BigAnd:
    case RawFormula::Kind::BigOr:
      changed |= params_.insert(f.name).second;
      for (const auto& b : f.args) changed |= visit(b, true);
      break;
    default:
      break;
  }
  for (const auto& s : f.sub) changed |= visit(s);
  return changed;
}

void Typer::solve() {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& f : formulas_) changed |= visit(f);
    for (const auto& [t, p] : terms_) changed |= visit(t, p);
  }
}

Term Typer::constant(const std::string& name, const Type& type, const SourceSpan& span) {
  auto [it, fresh] = signature_.emplace(name, type);
  if (!fresh && !(it->second == type))
    throw SourceTypeError(span, "'" + name + "' used with type " + type.str() + " but earlier with " + it->second.str());
  return Term::constant(name, type);
}

Term Typer::param_term(const RawTerm& t) {
  switch (t.kind) {
    case RawTerm::Kind::Number:
      return param_numeral(t.number);
    case RawTerm::Kind::Ident:
      return param_var(t.name);
    case RawTerm::Kind::Plus: {
      Term a = param_term(t.args[0]), b = param_term(t.args[1]);
      try {
        return param_add(a, b);
      } catch (const TypeError& e) {
        throw SourceTypeError(t.span, e.what());
      }
    }
    case RawTerm::Kind::Apply:
      throw SourceTypeError(t.span, "function term '" + t.name + "' in a parameter position");
  }
  throw SourceTypeError(t.span, "bad parameter expression");
}

Term Typer::term(const RawTerm& t) {
  if (param_expr(t)) return param_term(t);
  switch (t.kind) {
    case RawTerm::Kind::Ident:
      if (is_variable_name(t.name)) {
        if (signature_.count(t.name)) throw SourceTypeError(t.span, "'" + t.name + "' is a constant elsewhere");
        return Term::var(t.name, Type::individual());
      }
      return constant(t.name, Type::individual(), t.span);
    case RawTerm::Kind::Apply: {
      std::vector<Term> args;
      std::vector<Type> tys;
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        bool pp = param_positions_.count(Position{t.name, t.args.size(), i}) > 0;
        args.push_back(pp ? param_term(t.args[i]) : term(t.args[i]));
        tys.push_back(args.back().type());
      }
      return apply_args(constant(t.name, arrows(tys, Type::individual()), t.span), args);
    }
    default:
      return param_term(t);
  }
}

Term Typer::formula(const RawFormula& f) {
  auto sub = [&](std::size_t i) { return formula(f.sub[i]); };
  auto bound = [&]() { return is_param(f.name) ? param_var(f.name) : Term::var(f.name, Type::individual()); };
  switch (f.kind) {
    case RawFormula::Kind::Atom: {
      std::vector<Term> args;
      std::vector<Type> tys;
      for (std::size_t i = 0; i < f.args.size(); ++i) {
        bool pp = param_positions_.count(Position{f.name, f.args.size(), i}) > 0;
        args.push_back(pp ? param_term(f.args[i]) : term(f.args[i]));
        tys.push_back(args.back().type());
      }
      if (f.indexed && !(tys[0] == Type::param()))
        throw SourceTypeError(f.span, "index of '" + f.name + "' is not a parameter");
      return apply_args(constant(f.name, arrows(tys, Type::proposition()), f.span), args);
    }
    case RawFormula::Kind::Neg: return neg(sub(0));
    case RawFormula::Kind::And: return conj(sub(0), sub(1));
    case RawFormula::Kind::Or: return disj(sub(0), sub(1));
    case RawFormula::Kind::Imp: return imp(sub(0), sub(1));
    case RawFormula::Kind::All: return forall(bound(), sub(0));
    case RawFormula::Kind::Ex: return exists(bound(), sub(0));
    case RawFormula::Kind::BigAnd:
    case RawFormula::Kind::BigOr: {
      Term i = param_var(f.name);
      Term lo = param_term(f.args[0]), hi = param_term(f.args[1]);
      return f.kind == RawFormula::Kind::BigAnd ? big_and(i, lo, hi, sub(0)) : big_or(i, lo, hi, sub(0));
    }
  }
  throw SourceTypeError(f.span, "bad formula");
}

calculus::FSequent Typer::sequent(const RawSequent& s) {
  calculus::FSequent r;
  for (const auto& f : s.ant) r.ant.push_back(formula(f));
  for (const auto& f : s.suc) r.suc.push_back(formula(f));
  return r;
}

calculus::FSequent parse_formula_sequent(std::string_view text, const std::string& file) {
  TokenCursor c(tokenize(text, SourceSpan{file, 1, 1, 0, 0}));
  RawSequent raw = c.sequent();
  c.expect(Tok::End, "end of input");
  Typer typer;
  typer.add(raw);
  typer.solve();
  return typer.sequent(raw);
}

Term parse_formula(std::string_view text, const std::string& file) {
  TokenCursor c(tokenize(text, SourceSpan{file, 1, 1, 0, 0}));
  RawFormula raw = c.formula();
  c.expect(Tok::End, "end of input");
  Typer typer;
  typer.add(raw);
  typer.solve();
  return typer.formula(raw);
}

} // namespace proofbench::parsers
