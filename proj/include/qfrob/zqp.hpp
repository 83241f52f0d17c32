#pragma once

#include <map>
#include <string>
#include <vector>

#include "qfrob/arith.hpp"
#include "qfrob/madic.hpp"
#include "qfrob/ratfunc.hpp"

namespace qfrob {

// Residue of Z_{q,p} modulo m^N, stored as digits a_i mod p^{N-i} of
// sum a_i (1-u)^i. The basis variable u is q, or t = q^{1/b}.
class ZqpElement {
 public:
  ZqpElement() = default;
  ZqpElement(const MAdicContext& ctx, unsigned N, std::vector<BigInt> digits, std::string var = "q");
  static ZqpElement zero(const MAdicContext& ctx, unsigned N, const std::string& var = "q");
  static ZqpElement one(const MAdicContext& ctx, unsigned N, const std::string& var = "q");
  static ZqpElement integer(const BigInt& c, const MAdicContext& ctx, unsigned N, const std::string& var = "q");

  const MAdicContext& ctx() const { return ctx_; }
  unsigned precision() const { return N_; }
  const std::string& var() const { return var_; }
  const std::vector<BigInt>& digits() const { return a_; }
  bool is_zero() const;
  bool is_unit() const;
  // min v_p(a_i) + i over nonzero digits; INFINITY when the residue is 0
  Valuation valuation() const;

  ZqpElement operator-() const;
  friend ZqpElement operator+(const ZqpElement& x, const ZqpElement& y);
  friend ZqpElement operator-(const ZqpElement& x, const ZqpElement& y);
  friend ZqpElement operator*(const ZqpElement& x, const ZqpElement& y);
  ZqpElement& operator+=(const ZqpElement& o) { return *this = *this + o; }
  ZqpElement& operator-=(const ZqpElement& o) { return *this = *this - o; }
  ZqpElement& operator*=(const ZqpElement& o) { return *this = *this * o; }
  bool operator==(const ZqpElement& o) const;
  bool operator!=(const ZqpElement& o) const { return !(*this == o); }

  ZqpElement with_precision(unsigned N) const;  // N <= precision()
  ZqpElement pow(unsigned long e) const;
  std::string to_string() const;

  // test helpers; both lose one unit of precision
  ZqpElement div_one_minus_u() const;
  ZqpElement div_p() const;

 private:
  void canonicalize();
  MAdicContext ctx_;
  unsigned N_ = 1;
  std::string var_ = "q";
  std::vector<BigInt> a_;
};

struct PadicDigits {
  BigInt a;
  BigInt b;
  unsigned long p = 2;
  std::vector<unsigned long> s;
  // beta_n = sum_{k <= n} s_k p^k
  BigInt partial(std::size_t n) const;
};

void require_compatible(const ZqpElement& x, const ZqpElement& y);

ZqpElement reduce(const IntPoly& P, unsigned N, const MAdicContext& ctx);
ZqpElement reduce_coeffs(const std::vector<BigInt>& c, unsigned N, const MAdicContext& ctx, const std::string& var);
// u^k for a nonnegative integer k (possibly huge)
ZqpElement reduce_monomial(const BigInt& k, unsigned N, const MAdicContext& ctx, const std::string& var = "q");
ZqpElement zqp_add(const ZqpElement& x, const ZqpElement& y);
ZqpElement zqp_mul(const ZqpElement& x, const ZqpElement& y);
ZqpElement zqp_invert(const ZqpElement& x);
ZqpElement zqp_frobenius(const ZqpElement& x);
BigInt zqp_ev(const ZqpElement& x);

PadicDigits padic_digits(const BigInt& a, const BigInt& b, unsigned long p, std::size_t k);
// the partial sum of q^beta through j = N, in the given basis variable
ZqpElement q_power_beta(const PadicDigits& beta, unsigned N, const MAdicContext& ctx, const std::string& var = "q");

// t-backend value pushed into the completion; the result uses basis variable `var`
// (t itself, or q with t = q^{1/b}). Throws if X is not in Z[t]_m.
ZqpElement embed(const RatFunc& X, unsigned N, const MAdicContext& ctx, const std::string& var);
// rewrite a t-basis element in the q basis
ZqpElement t_to_q_basis(const ZqpElement& x);

// prod (1 - u^k)^{m_k}, evaluated without ever inverting a non-unit.
// Throws ArithError if the product is not in Z_{q,p}.
ZqpElement zqp_from_factors(const std::map<std::uint64_t, long>& factors, unsigned N, const MAdicContext& ctx,
                            const std::string& var);

}  // namespace qfrob
