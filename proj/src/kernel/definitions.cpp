#include "proofbench/kernel/definitions.hpp"

#include <algorithm>

#include "proofbench/kernel/substitution.hpp"

namespace proofbench::kernel {

const Definition* DefinitionList::find(const std::string& name) const {
  for (const auto& d : items_)
    if (d.abbreviation.name() == name) return &d;
  return nullptr;
}

bool DefinitionList::reaches(const Term& t, const std::string& target, std::vector<std::string>& seen) const {
  for (const auto& c : constants(t)) {
    if (c.name() == target) return true;
    if (std::find(seen.begin(), seen.end(), c.name()) != seen.end()) continue;
    seen.push_back(c.name());
    if (const Definition* d = find(c.name()); d && reaches(d->expansion, target, seen)) return true;
  }
  return false;
}

void DefinitionList::add(const Term& abbreviation, const Term& expansion) {
  if (!abbreviation.is_const()) throw DefinitionError("abbreviation must be a constant");
  const std::string& name = abbreviation.name();
  if (find(name)) throw DefinitionError("duplicate definition of " + name);
  if (!(abbreviation.type() == expansion.type()))
    throw DefinitionError("definition of " + name + " has type " + expansion.type().str() + ", expected " +
                          abbreviation.type().str());
  std::vector<std::string> seen;
  if (reaches(expansion, name, seen)) throw DefinitionError("definition of " + name + " is circular");
  items_.push_back({abbreviation, expansion});
}

namespace {
Term replace_consts(const Term& t, const DefinitionList& defs, bool& changed) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t;
    case Term::Kind::Const:
      if (const Definition* d = defs.find(t.name()); d && d->abbreviation.type() == t.type()) {
        changed = true;
        return d->expansion;
      }
      return t;
    case Term::Kind::App:
      return Term::app(replace_consts(t.fn(), defs, changed), replace_consts(t.arg(), defs, changed));
    case Term::Kind::Abs:
      return Term::abs(t.bound(), replace_consts(t.body(), defs, changed));
  }
  return t;
}
} // namespace

Term DefinitionList::expand(const Term& t) const {
  Term cur = t;
  bool changed = true;
  while (changed) {
    changed = false;
    cur = replace_consts(cur, *this, changed);
  }
  return beta_normalize(cur);
}

} // namespace proofbench::kernel
