#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "proofbench/kernel/term.hpp"

namespace proofbench::calculus {

using kernel::Term;
using OccId = std::uint32_t;

enum class Side { Ant, Suc };

struct FormulaOccurrence {
  OccId id = 0;
  Term formula;
  std::vector<OccId> parents;
};

// Formulas only; equality is multiset equality per side.
struct FSequent {
  std::vector<Term> ant, suc;

  bool empty() const { return ant.empty() && suc.empty(); }
  std::size_t size() const { return ant.size() + suc.size(); }
  // Multiset union.
  FSequent operator+(const FSequent& other) const;
  // True if this is a sub-multiset of other, side by side.
  bool sub_multiset_of(const FSequent& other) const;
  friend bool operator==(const FSequent& a, const FSequent& b);
  friend bool operator!=(const FSequent& a, const FSequent& b) { return !(a == b); }
};

bool multiset_equal(const std::vector<Term>& a, const std::vector<Term>& b);

struct Sequent {
  std::vector<FormulaOccurrence> ant, suc;

  FSequent formulas() const;
  const FormulaOccurrence* find(OccId id) const;
  std::optional<Side> side_of(OccId id) const;
  const std::vector<FormulaOccurrence>& side(Side s) const { return s == Side::Ant ? ant : suc; }
  std::vector<FormulaOccurrence>& side(Side s) { return s == Side::Ant ? ant : suc; }
  std::vector<OccId> ids() const;
  std::size_t size() const { return ant.size() + suc.size(); }
};

// Per-construction counter for occurrence ids.
class IdGen {
public:
  explicit IdGen(OccId start = 1) : next_(start) {}
  OccId next() { return next_++; }
  OccId peek() const { return next_; }

private:
  OccId next_;
};

std::string plain(const FSequent& s);
std::string latex(const FSequent& s);
inline std::string plain(const Sequent& s) { return plain(s.formulas()); }
inline std::string latex(const Sequent& s) { return latex(s.formulas()); }

} // namespace proofbench::calculus
