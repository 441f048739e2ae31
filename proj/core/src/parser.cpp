#include <cctype>
#include <set>

#include "frobscan/poly.hpp"

namespace frobscan {

namespace {

constexpr uint32_t kMaxExponent = 0x7fffffffu;

class PolyParser {
 public:
  PolyParser(std::string_view text, std::vector<std::string> vars)
      : text_(text), vars_(std::move(vars)) {}

  IntPoly run() {
    skip_ws();
    IntPoly p = parse_expr();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError("unexpected trailing input", pos_);
    return p;
  }

 private:
  IntPoly parse_expr() {
    IntPoly acc = parse_term();
    for (;;) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        acc += parse_term();
      } else if (peek() == '-') {
        ++pos_;
        acc -= parse_term();
      } else {
        return acc;
      }
    }
  }

  IntPoly parse_term() {
    IntPoly acc = parse_factor();
    for (;;) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        acc = acc * parse_factor();
      } else {
        return acc;
      }
    }
  }

  IntPoly parse_factor() {
    IntPoly base = parse_base();
    skip_ws();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    std::size_t at = pos_;
    if (!std::isdigit(peek()))
      throw ParseError("expected an unsigned integer exponent", pos_);
    uint64_t e = 0;
    while (std::isdigit(peek())) {
      e = e * 10 + static_cast<uint64_t>(peek() - '0');
      if (e > kMaxExponent) throw ParseError("exponent overflow", at);
      ++pos_;
    }
    return base.pow(static_cast<uint32_t>(e));
  }

  IntPoly parse_base() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      ++pos_;
      IntPoly inner = parse_expr();
      skip_ws();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (c == '-' || std::isdigit(c)) return parse_int();
    if (std::isalpha(c)) return parse_ident();
    throw ParseError("expected an integer, identifier or '('", pos_);
  }

  IntPoly parse_int() {
    std::size_t at = pos_;
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos_;
      skip_ws();
    }
    if (!std::isdigit(peek())) throw ParseError("expected digits", at);
    std::string digits;
    while (std::isdigit(peek())) digits += text_[pos_++];
    BigInt v(digits);
    return IntPoly::constant(vars_, neg ? BigInt(-v) : v);
  }

  IntPoly parse_ident() {
    std::size_t at = pos_;
    std::string name;
    name += text_[pos_++];
    while (std::isalnum(peek()) || peek() == '_') name += text_[pos_++];
    for (const auto& v : vars_)
      if (v == name) return IntPoly::variable(vars_, name);
    throw ParseError("unknown identifier '" + name + "'", at);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::vector<std::string> vars_;
  std::size_t pos_ = 0;
};

}  // namespace

IntPoly parse_poly(std::string_view text, std::vector<std::string> variables) {
  return PolyParser(text, std::move(variables)).run();
}

UniPoly parse_unipoly(std::string_view text) {
  // collect identifiers first; the grammar allows at most one distinct name here
  std::set<std::string> names;
  for (std::size_t i = 0; i < text.size();) {
    if (std::isalpha(static_cast<unsigned char>(text[i]))) {
      std::size_t j = i + 1;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      names.insert(std::string(text.substr(i, j - i)));
      i = j;
    } else {
      ++i;
    }
  }
  if (names.size() > 1) {
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
    throw Error(ErrorCode::Parse, "univariate expression uses several identifiers: " + list);
  }
  std::string var = names.empty() ? "x" : *names.begin();
  IntPoly p = parse_poly(text, {var});
  auto u = UniPoly::from_intpoly(p);
  if (!u) throw Error(ErrorCode::Internal, "single-variable parse produced multivariate result");
  return *u;
}

}  // namespace frobscan
