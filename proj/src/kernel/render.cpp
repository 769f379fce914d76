#include "proofbench/kernel/render.hpp"

#include <array>
#include <cctype>

#include "proofbench/kernel/formula.hpp"
#include "proofbench/kernel/param.hpp"

namespace proofbench::kernel {

namespace {

struct Syntax {
  const char* neg;
  const char* land;
  const char* lor;
  const char* to;
  const char* all;
  const char* ex;
  bool latex;
};

constexpr Syntax kPlain{"~", " /\\ ", " \\/ ", " -> ", "all ", "ex ", false};
constexpr Syntax kLatex{"\\neg ", " \\land ", " \\lor ", " \\to ", "\\forall ", "\\exists ", true};

std::string name_of(const std::string& n, const Syntax& sx) { return sx.latex ? latex_name(n) : n; }

std::string term_str(const Term& t, const Syntax& sx);

std::string param_str(const Term& t, const Syntax& sx) {
  ParamShape s = param_shape(t);
  if (!s.base) return std::to_string(s.offset);
  std::string b = name_of(s.base->name(), sx);
  if (s.offset == 0) return b;
  return b + "+" + std::to_string(s.offset);
}

std::string applied(const Term& t, const Syntax& sx) {
  Spine sp = spine(t);
  std::string head = sp.head.is_abs() ? "(" + term_str(sp.head, sx) + ")" : name_of(sp.head.name(), sx);
  if (sp.args.empty()) return head;
  if (sp.head.is_const() && sp.args.size() == 1 && sp.head.name().size() > 1 && sp.head.name().back() == '_')
    return head + "{" + term_str(sp.args[0], sx) + "}";
  std::string out = head + "(";
  for (std::size_t i = 0; i < sp.args.size(); ++i) {
    if (i) out += ",";
    out += term_str(sp.args[i], sx);
  }
  return out + ")";
}

std::string formula_str(const Term& f, const Syntax& sx, int ctx);

std::string term_str(const Term& t, const Syntax& sx) {
  if (t.type() == Type::proposition()) return formula_str(t, sx, 0);
  if (t.type() == Type::param() && is_param_expr(t)) return param_str(t, sx);
  if (t.is_abs()) return std::string(sx.latex ? "\\lambda " : "\\") + name_of(t.bound().name(), sx) + "." + term_str(t.body(), sx);
  return applied(t, sx);
}

// Levels: 1 imp, 2 or, 3 and, 4 unary/atomic.
std::string formula_str(const Term& f, const Syntax& sx, int ctx) {
  FormulaView v = view(f);
  std::string s;
  int level = 4;
  switch (v.kind) {
    case FormulaKind::Atom:
      return applied(f, sx);
    case FormulaKind::Neg:
      s = sx.neg + formula_str(v.left, sx, 4);
      break;
    case FormulaKind::And:
      level = 3;
      s = formula_str(v.left, sx, 3) + sx.land + formula_str(*v.right, sx, 4);
      break;
    case FormulaKind::Or:
      level = 2;
      s = formula_str(v.left, sx, 2) + sx.lor + formula_str(*v.right, sx, 3);
      break;
    case FormulaKind::Imp:
      level = 1;
      s = formula_str(v.left, sx, 2) + sx.to + formula_str(*v.right, sx, 1);
      break;
    case FormulaKind::All:
    case FormulaKind::Ex:
      s = std::string(v.kind == FormulaKind::All ? sx.all : sx.ex) + name_of(v.var->name(), sx) + " " +
          formula_str(v.left, sx, 4);
      break;
    case FormulaKind::BigAnd:
    case FormulaKind::BigOr: {
      bool conj = v.kind == FormulaKind::BigAnd;
      std::string i = name_of(v.var->name(), sx);
      if (sx.latex)
        s = std::string(conj ? "\\bigwedge" : "\\bigvee") + "_{" + i + "=" + param_str(*v.lower, sx) + "}^{" +
            param_str(*v.upper, sx) + "} ";
      else
        s = std::string(conj ? "BigAnd" : "BigOr") + "(" + i + "=" + param_str(*v.lower, sx) + ".." +
            param_str(*v.upper, sx) + ") ";
      s += formula_str(v.left, sx, 4);
      break;
    }
  }
  if (level < ctx) return "(" + s + ")";
  return s;
}

constexpr std::array<const char*, 24> kGreek{
    "alpha", "beta",  "gamma",   "delta", "epsilon", "zeta", "eta", "theta", "iota", "kappa", "lambda", "mu",
    "nu",    "xi",    "omicron", "pi",    "rho",     "sigma", "tau", "upsilon", "phi", "chi",  "psi",    "omega"};

bool is_greek(const std::string& s) {
  for (const char* g : kGreek)
    if (s == g) return true;
  return false;
}

} // namespace

std::string latex_name(const std::string& name) {
  std::string primes;
  std::string n = name;
  while (!n.empty() && n.back() == '\'') {
    primes += '\'';
    n.pop_back();
  }
  std::string base = n, sub;
  auto us = n.rfind('_');
  if (us != std::string::npos && us > 0 && us + 1 < n.size()) {
    base = n.substr(0, us);
    sub = n.substr(us + 1);
  } else {
    std::size_t k = n.size();
    while (k > 0 && std::isdigit(static_cast<unsigned char>(n[k - 1]))) --k;
    if (k > 0 && k < n.size()) {
      base = n.substr(0, k);
      sub = n.substr(k);
    }
  }
  std::string out = is_greek(base) ? "\\" + base : base;
  if (!sub.empty()) out += "_{" + sub + "}";
  return out + primes;
}

std::string plain(const Term& t) { return term_str(t, kPlain); }
std::string latex(const Term& t) { return term_str(t, kLatex); }

} // namespace proofbench::kernel
