#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qfrob {

using BigInt = mpz_class;
using BigRat = mpq_class;

// thrown on any malformed argument (variable mismatch, non-prime p, ...)
class ArithError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---- small integer helpers -------------------------------------------------

bool is_prime(std::uint64_t n);
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);
int mobius(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);

// p-adic valuation; v_p(0) is reported as -1 by the int version, callers check zero first
long padic_val(const BigInt& x, unsigned long p);
long padic_val(const BigRat& x, unsigned long p);
BigInt ipow(const BigInt& base, unsigned long e);
BigInt mod_floor(const BigInt& x, const BigInt& m);
// inverse of x modulo m, throws if not invertible
BigInt mod_inverse(const BigInt& x, const BigInt& m);
BigInt binomial(const BigInt& n, unsigned long k);

// ---- IntPoly ---------------------------------------------------------------

class IntPoly {
 public:
  IntPoly() : var_("q") {}
  explicit IntPoly(std::string var) : var_(std::move(var)) {}
  IntPoly(std::vector<BigInt> coeffs, std::string var);

  static IntPoly constant(const BigInt& c, const std::string& var = "q");
  static IntPoly monomial(const BigInt& c, std::size_t k, const std::string& var = "q");
  // 1 - u^k
  static IntPoly one_minus_power(std::size_t k, const std::string& var = "q");

  const std::string& var() const { return var_; }
  const std::vector<BigInt>& coeffs() const { return c_; }
  std::vector<BigInt>& mutable_coeffs() { return c_; }
  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  std::size_t size() const { return c_.size(); }
  BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }
  const BigInt& lead() const { return c_.back(); }

  BigInt eval(const BigInt& x) const;
  BigRat eval(const BigRat& x) const;
  BigInt content() const;  // nonnegative gcd of the coefficients
  IntPoly primitive_part() const;  // positive leading coefficient
  IntPoly with_var(const std::string& v) const;

  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const BigInt& c);

  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(IntPoly a, const BigInt& c) { return a *= c; }
  friend IntPoly operator*(const BigInt& c, IntPoly a) { return a *= c; }
  IntPoly operator-() const;
  bool operator==(const IntPoly& o) const { return var_ == o.var_ && c_ == o.c_; }
  bool operator!=(const IntPoly& o) const { return !(*this == o); }

  std::string to_string() const;

  void normalize();

 private:
  std::string var_;
  std::vector<BigInt> c_;
};

void require_same_var(const IntPoly& a, const IntPoly& b);

IntPoly poly_add(const IntPoly& a, const IntPoly& b);
IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
IntPoly poly_neg(const IntPoly& a);

// raw coefficient-vector product; picks schoolbook or Kronecker substitution
std::vector<BigInt> coeff_mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b);

// exact quotient a / b over Z; throws ArithError if b does not divide a
IntPoly poly_exact_div(const IntPoly& a, const IntPoly& b);
// pseudo-remainder lc(b)^(deg a - deg b + 1) a mod b
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b);
// gcd over Z[u] (primitive PRS), positive leading coefficient; gcd(0,0) = 0
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);

IntPoly cyclotomic(std::uint64_t p, const std::string& var = "q");
// the full d-th cyclotomic polynomial Phi_d
IntPoly cyclotomic_poly(std::uint64_t d, const std::string& var = "q");
IntPoly q_bracket(std::size_t n, const std::string& var = "q");
std::vector<BigInt> taylor_at_one(const IntPoly& P);
IntPoly poly_substitute(const IntPoly& P, std::size_t k);
// sum a_i (1-u)^i back to a polynomial
IntPoly from_taylor_at_one(const std::vector<BigInt>& a, const std::string& var = "q");

// ---- RatPoly ---------------------------------------------------------------

class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<BigRat> coeffs);
  explicit RatPoly(const IntPoly& p);

  const std::vector<BigRat>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }

  friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  bool operator==(const RatPoly& o) const { return c_ == o.c_; }

  // quotient and remainder, b != 0
  static std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);
  // clears denominators: returns (c, P) with this = c * P, P primitive integral
  std::pair<BigRat, std::vector<BigInt>> split_content() const;

 private:
  void normalize();
  std::vector<BigRat> c_;
};

}  // namespace qfrob
