#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace proofbench::kernel {

struct TypeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Simple types: i (individuals), o (propositions), w (natural-number
// parameters) and arrows.
class Type {
public:
  enum class Kind { Individual, Proposition, Param, Arrow };

  static Type individual() { return Type(Kind::Individual); }
  static Type proposition() { return Type(Kind::Proposition); }
  static Type param() { return Type(Kind::Param); }
  static Type arrow(Type from, Type to);

  Kind kind() const { return kind_; }
  bool is_arrow() const { return kind_ == Kind::Arrow; }
  const Type& from() const;
  const Type& to() const;

  // "i", "o", "w", "(i>o)"
  std::string str() const;

  friend bool operator==(const Type& a, const Type& b);

private:
  explicit Type(Kind k) : kind_(k) {}
  Kind kind_;
  std::shared_ptr<const std::pair<Type, Type>> arrow_;
};

// args_1 > ... > args_n > result
Type arrows(const std::vector<Type>& args, const Type& result);

// Inverse of Type::str(). Throws TypeError on malformed input.
Type parse_type(std::string_view text);

} // namespace proofbench::kernel
