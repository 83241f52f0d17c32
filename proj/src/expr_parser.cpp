#include "qfrob/expr_parser.hpp"

#include <cctype>

namespace qfrob {

namespace {

class Parser {
 public:
  Parser(const std::string& s, std::string var) : s_(s), var_(std::move(var)) {}

  RatFunc parse() {
    RatFunc r = expr();
    skip();
    if (i_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[i_] + "'", i_);
    return r;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  RatFunc expr() {
    RatFunc acc = term();
    for (;;) {
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  RatFunc term() {
    RatFunc acc = unary();
    for (;;) {
      if (eat('*')) {
        acc = acc * unary();
      } else if (eat('/')) {
        std::size_t at = i_;
        RatFunc d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  RatFunc unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  RatFunc power() {
    RatFunc base = atom();
    if (!eat('^')) return base;
    skip();
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) throw ParseError("exponent must be a nonnegative integer literal", start);
    if (i_ - start > 9) throw ParseError("exponent too large", start);
    unsigned long e = std::stoul(s_.substr(start, i_ - start));
    if (base == RatFunc::monomial(BigRat(1), 1, var_)) return RatFunc::monomial(BigRat(1), e, var_);
    RatFunc r(BigRat(1), var_);
    RatFunc x = base;
    while (e) {
      if (e & 1) r = r * x;
      e >>= 1;
      if (e) x = x * x;
    }
    return r;
  }

  RatFunc atom() {
    skip();
    if (i_ >= s_.size()) throw ParseError("unexpected end of input", i_);
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      RatFunc r = expr();
      if (!eat(')')) throw ParseError("expected ')'", i_);
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return RatFunc(BigRat(BigInt(s_.substr(start, i_ - start))), var_);
    }
    if (s_.compare(i_, var_.size(), var_) == 0) {
      i_ += var_.size();
      return RatFunc::monomial(BigRat(1), 1, var_);
    }
    throw ParseError(std::string("unexpected '") + c + "'", i_);
  }

  const std::string& s_;
  std::string var_;
  std::size_t i_ = 0;
};

}  // namespace

RatFunc parse_expression(const std::string& text, const std::string& var) {
  if (text.find_first_not_of(" \t\n") == std::string::npos) throw ParseError("empty expression", 0);
  return Parser(text, var).parse();
}

}  // namespace qfrob
