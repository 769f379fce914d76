#include "proofbench/calculus/sequent.hpp"

#include "proofbench/kernel/render.hpp"

namespace proofbench::calculus {

bool multiset_equal(const std::vector<Term>& a, const std::vector<Term>& b) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& x : a) {
    bool found = false;
    for (std::size_t i = 0; i < b.size(); ++i)
      if (!used[i] && b[i] == x) {
        used[i] = found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

namespace {
bool sub_multiset(const std::vector<Term>& a, const std::vector<Term>& b) {
  std::vector<bool> used(b.size(), false);
  for (const auto& x : a) {
    bool found = false;
    for (std::size_t i = 0; i < b.size(); ++i)
      if (!used[i] && b[i] == x) {
        used[i] = found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}
} // namespace

FSequent FSequent::operator+(const FSequent& other) const {
  FSequent r = *this;
  r.ant.insert(r.ant.end(), other.ant.begin(), other.ant.end());
  r.suc.insert(r.suc.end(), other.suc.begin(), other.suc.end());
  return r;
}

bool FSequent::sub_multiset_of(const FSequent& other) const {
  return sub_multiset(ant, other.ant) && sub_multiset(suc, other.suc);
}

bool operator==(const FSequent& a, const FSequent& b) {
  return multiset_equal(a.ant, b.ant) && multiset_equal(a.suc, b.suc);
}

FSequent Sequent::formulas() const {
  FSequent r;
  for (const auto& o : ant) r.ant.push_back(o.formula);
  for (const auto& o : suc) r.suc.push_back(o.formula);
  return r;
}

const FormulaOccurrence* Sequent::find(OccId id) const {
  for (const auto& o : ant)
    if (o.id == id) return &o;
  for (const auto& o : suc)
    if (o.id == id) return &o;
  return nullptr;
}

std::optional<Side> Sequent::side_of(OccId id) const {
  for (const auto& o : ant)
    if (o.id == id) return Side::Ant;
  for (const auto& o : suc)
    if (o.id == id) return Side::Suc;
  return std::nullopt;
}

std::vector<OccId> Sequent::ids() const {
  std::vector<OccId> r;
  for (const auto& o : ant) r.push_back(o.id);
  for (const auto& o : suc) r.push_back(o.id);
  return r;
}

namespace {
std::string join(const std::vector<Term>& fs, std::string (*render)(const Term&)) {
  std::string out;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i) out += ", ";
    out += render(fs[i]);
  }
  return out;
}

std::string render_sequent(const FSequent& s, std::string (*render)(const Term&), const char* turnstile) {
  std::string l = join(s.ant, render), r = join(s.suc, render);
  std::string out = l;
  if (!l.empty()) out += " ";
  out += turnstile;
  if (!r.empty()) out += " " + r;
  return out;
}
} // namespace

std::string plain(const FSequent& s) { return render_sequent(s, kernel::plain, "|-"); }
std::string latex(const FSequent& s) { return render_sequent(s, kernel::latex, "\\vdash"); }

} // namespace proofbench::calculus
