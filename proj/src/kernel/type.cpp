#include "proofbench/kernel/type.hpp"

namespace proofbench::kernel {

Type Type::arrow(Type from, Type to) {
  Type t(Kind::Arrow);
  t.arrow_ = std::make_shared<const std::pair<Type, Type>>(std::move(from), std::move(to));
  return t;
}

const Type& Type::from() const {
  if (!is_arrow()) throw TypeError("from() of non-arrow type " + str());
  return arrow_->first;
}

const Type& Type::to() const {
  if (!is_arrow()) throw TypeError("to() of non-arrow type " + str());
  return arrow_->second;
}

std::string Type::str() const {
  switch (kind_) {
    case Kind::Individual: return "i";
    case Kind::Proposition: return "o";
    case Kind::Param: return "w";
    case Kind::Arrow: return "(" + arrow_->first.str() + ">" + arrow_->second.str() + ")";
  }
  return "?";
}

bool operator==(const Type& a, const Type& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ != Type::Kind::Arrow) return true;
  if (a.arrow_ == b.arrow_) return true;
  return a.arrow_->first == b.arrow_->first && a.arrow_->second == b.arrow_->second;
}

Type arrows(const std::vector<Type>& args, const Type& result) {
  Type t = result;
  for (auto it = args.rbegin(); it != args.rend(); ++it) t = Type::arrow(*it, t);
  return t;
}

namespace {

struct TypeReader {
  std::string_view text;
  size_t pos = 0;

  Type read() {
    if (pos >= text.size()) throw TypeError("unexpected end of type string");
    char c = text[pos++];
    switch (c) {
      case 'i': return Type::individual();
      case 'o': return Type::proposition();
      case 'w': return Type::param();
      case '(': {
        Type from = read();
        expect('>');
        Type to = read();
        expect(')');
        return Type::arrow(from, to);
      }
      default:
        throw TypeError(std::string("bad type character '") + c + "'");
    }
  }

  void expect(char c) {
    if (pos >= text.size() || text[pos] != c)
      throw TypeError(std::string("expected '") + c + "' in type string");
    ++pos;
  }
};

} // namespace

Type parse_type(std::string_view text) {
  TypeReader r{text};
  Type t = r.read();
  if (r.pos != text.size()) throw TypeError("trailing characters in type string");
  return t;
}

} // namespace proofbench::kernel
