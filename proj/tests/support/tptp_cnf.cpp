#include "tptp_cnf.hpp"

#include <cctype>
#include <stdexcept>

#include "proofbench/kernel/formula.hpp"

namespace proofbench::testing {

using kernel::Term;
using kernel::Type;

namespace {

class Reader {
public:
  explicit Reader(std::string_view s) : s_(s) {}

  std::vector<calculus::FSequent> all() {
    std::vector<calculus::FSequent> out;
    for (skip(); pos_ < s_.size(); skip()) out.push_back(clause());
    return out;
  }

private:
  calculus::FSequent clause() {
    expect_word("cnf");
    expect('(');
    word();
    expect(',');
    word();
    expect(',');
    calculus::FSequent c;
    if (peek() == '$') {
      ++pos_;
      if (word() != "false") fail("expected $false");
    } else {
      for (;;) {
        bool negative = peek() == '~';
        if (negative) ++pos_;
        Term a = atom();
        (negative ? c.ant : c.suc).push_back(a);
        if (peek() != '|') break;
        ++pos_;
      }
    }
    expect(')');
    expect('.');
    return c;
  }

  Term atom() {
    std::string name = word();
    std::vector<Term> args = arguments();
    return kernel::atom(name, args);
  }

  std::vector<Term> arguments() {
    std::vector<Term> args;
    if (peek() != '(') return args;
    ++pos_;
    for (;;) {
      args.push_back(term());
      if (peek() != ',') break;
      ++pos_;
    }
    expect(')');
    return args;
  }

  Term term() {
    std::string name = word();
    if (std::isupper(static_cast<unsigned char>(name[0]))) return Term::var(name, Type::individual());
    std::vector<Term> args = arguments();
    std::vector<Type> types(args.size(), Type::individual());
    return kernel::apply_args(Term::constant(name, kernel::arrows(types, Type::individual())), args);
  }

  std::string word() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected a word");
    return std::string(s_.substr(start, pos_ - start));
  }

  void expect_word(const char* w) {
    if (word() != w) fail(std::string("expected ") + w);
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::runtime_error("tptp cnf at offset " + std::to_string(pos_) + ": " + what);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

} // namespace

std::vector<calculus::FSequent> read_tptp_cnf(std::string_view text) { return Reader(text).all(); }

} // namespace proofbench::testing
