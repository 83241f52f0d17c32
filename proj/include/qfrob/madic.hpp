#pragma once

#include <optional>
#include <string>

#include "qfrob/arith.hpp"
#include "qfrob/ratfunc.hpp"

namespace qfrob {

// thrown when p ≢ 1 mod b but an operation needs the root variable t = q^{1/b}
class HypothesisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct MAdicContext {
  unsigned long p = 2;
  unsigned long b = 1;
  bool hyp_ok = true;

  MAdicContext() = default;
  MAdicContext(unsigned long p_, unsigned long b_ = 1);
  // name of the working variable: q when b = 1, else t with q = t^b
  std::string var() const { return b == 1 ? "q" : "t"; }
  void require_hyp() const;
  bool operator==(const MAdicContext& o) const { return p == o.p && b == o.b; }
  bool operator!=(const MAdicContext& o) const { return !(*this == o); }
};

// nonnegative or negative integer, or +infinity (value of zero)
class Valuation {
 public:
  Valuation() = default;  // infinity
  explicit Valuation(long v) : v_(v) {}
  static Valuation infinity() { return Valuation(); }

  bool is_infinite() const { return !v_.has_value(); }
  long value() const;
  std::string to_string() const;

  friend bool operator==(const Valuation& a, const Valuation& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Valuation& a, const Valuation& b) { return !(a == b); }
  friend bool operator<(const Valuation& a, const Valuation& b);
  friend bool operator<=(const Valuation& a, const Valuation& b) { return !(b < a); }
  friend bool operator>(const Valuation& a, const Valuation& b) { return b < a; }
  friend bool operator>=(const Valuation& a, const Valuation& b) { return !(a < b); }
  friend Valuation operator+(const Valuation& a, const Valuation& b);
  friend Valuation operator-(const Valuation& a, const Valuation& b);  // finite b only
  bool at_least(long n) const { return is_infinite() || *v_ >= n; }

 private:
  std::optional<long> v_;
};

Valuation vmin(const Valuation& a, const Valuation& b);

// min_i v_p(a_i) + i over the (1-u)-expansion, with an early exit
Valuation valuation_coeffs(const std::vector<BigInt>& c, unsigned long p);
Valuation valuation_poly(const IntPoly& P, const MAdicContext& ctx);
Valuation valuation_ratfunc(const RatFunc& X, const MAdicContext& ctx);
// m-adic valuation of Phi_d: 1 for d = 1 or a power of p, else 0
long cyclotomic_valuation(std::uint64_t d, unsigned long p);

bool is_in_localization(const RatFunc& X, const MAdicContext& ctx);
bool check_mod_m_power(const RatFunc& X, long s, const MAdicContext& ctx);
// phi_p(q) with q = u^b
RatFunc phi_p_of_q(const MAdicContext& ctx);
bool check_mod_cyclotomic(const RatFunc& X, const MAdicContext& ctx);
bool product_identity_check(unsigned j, const MAdicContext& ctx);

}  // namespace qfrob
