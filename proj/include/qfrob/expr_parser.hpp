#pragma once

#include <stdexcept>
#include <string>

#include "qfrob/ratfunc.hpp"

namespace qfrob {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::invalid_argument(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// integers, q, + - * / ^ and parentheses; exponents are nonnegative integer literals
RatFunc parse_expression(const std::string& text, const std::string& var = "q");

}  // namespace qfrob
