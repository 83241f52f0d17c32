#pragma once

#include <string>
#include <vector>

#include "qfrob/arith.hpp"
#include "qfrob/cyclo.hpp"

namespace qfrob {

// Reduced element of Q(t).
//
// Internally a value is scale * core(t) * prod_d Phi_d(t)^{e_d}, core primitive
// with positive leading coefficient and coprime to every Phi_d with e_d < 0.
// Values whose denominator is not a product of cyclotomic polynomials keep an
// explicit primitive denominator instead (then the exponent map is empty).
// numerator()/denominator() give the canonical reduced pair.
class RatFunc {
 public:
  RatFunc() : var_("t"), scale_(0), num_{1} {}
  explicit RatFunc(const BigRat& c, std::string var = "t");
  explicit RatFunc(const IntPoly& p);

  // num/den in lowest terms; throws ArithError on den = 0
  static RatFunc normalize(const IntPoly& num, const IntPoly& den);
  static RatFunc from_cyclotomic(const BigRat& scale, const CycloExps& exps, const std::string& var = "t");
  // 1 - t^k
  static RatFunc one_minus_power(std::uint64_t k, const std::string& var = "t");
  // c * t^k
  static RatFunc monomial(const BigRat& c, std::uint64_t k, const std::string& var = "t");
  static RatFunc sum(const std::vector<RatFunc>& terms);

  const std::string& var() const { return var_; }
  bool is_zero() const { return scale_ == 0; }
  bool is_one() const;
  bool is_generic() const { return den_.size() > 1; }
  // true when the value is scale * prod Phi_d^{e_d}
  bool is_pure() const { return !is_generic() && num_.size() == 1; }

  // canonical view: scale > 0 for nonzero values, the sign lives in numerator()
  BigRat scale() const { return abs(scale_); }
  // internal signed factor in front of core() * prod Phi_d^{e_d}
  const BigRat& coef() const { return scale_; }
  const std::vector<BigInt>& core() const { return num_; }
  const CycloExps& cyclo() const { return cyc_; }
  const std::vector<BigInt>& generic_den() const { return den_; }

  IntPoly numerator() const;    // primitive
  IntPoly denominator() const;  // primitive, positive leading coefficient
  std::size_t numerator_degree() const;
  std::size_t denominator_degree() const;

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  bool operator==(const RatFunc& o) const;
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  RatFunc inverse() const;
  RatFunc scaled(const BigRat& c) const;
  RatFunc mul_monomial(std::uint64_t k) const;  // * t^k
  RatFunc substitute(std::uint64_t k) const;    // t -> t^k
  // value at t = 1; throws ArithError on a pole
  BigRat eval_at_one() const;

  std::string to_string() const;

 private:
  static RatFunc make_fast(BigRat scale, std::vector<BigInt> num, CycloExps exps, std::string var);
  static RatFunc make_generic(const BigRat& scale, const IntPoly& num, const IntPoly& den);
  void cancel();
  void expand(IntPoly& n, IntPoly& d) const;

  std::string var_;
  BigRat scale_;
  std::vector<BigInt> num_;
  CycloExps cyc_;
  std::vector<BigInt> den_{1};
};

void require_same_var(const RatFunc& a, const RatFunc& b);

inline RatFunc ratfunc_normalize(const IntPoly& num, const IntPoly& den) { return RatFunc::normalize(num, den); }

}  // namespace qfrob
