#include "qfrob/madic.hpp"

#include <numeric>

namespace qfrob {

MAdicContext::MAdicContext(unsigned long p_, unsigned long b_) : p(p_), b(b_) {
  if (!is_prime(p)) throw ArithError("p = " + std::to_string(p) + " is not prime");
  if (b == 0) throw ArithError("b must be positive");
  if (std::gcd(p, b) != 1) throw ArithError("gcd(p, b) must be 1");
  hyp_ok = (p % b) == 1 % b;
}

void MAdicContext::require_hyp() const {
  if (!hyp_ok)
    throw HypothesisError("p = " + std::to_string(p) + " is not congruent to 1 modulo b = " + std::to_string(b));
}

long Valuation::value() const {
  if (!v_) throw std::logic_error("valuation is infinite");
  return *v_;
}

std::string Valuation::to_string() const { return v_ ? std::to_string(*v_) : "INFINITY"; }

bool operator<(const Valuation& a, const Valuation& b) {
  if (a.is_infinite()) return false;
  if (b.is_infinite()) return true;
  return *a.v_ < *b.v_;
}

Valuation operator+(const Valuation& a, const Valuation& b) {
  if (a.is_infinite() || b.is_infinite()) return Valuation::infinity();
  return Valuation(*a.v_ + *b.v_);
}

Valuation operator-(const Valuation& a, const Valuation& b) {
  if (b.is_infinite()) throw std::logic_error("subtracting an infinite valuation");
  if (a.is_infinite()) return a;
  return Valuation(*a.v_ - *b.v_);
}

Valuation vmin(const Valuation& a, const Valuation& b) { return b < a ? b : a; }

Valuation valuation_coeffs(const std::vector<BigInt>& c, unsigned long p) {
  std::vector<BigInt> P = c;
  while (!P.empty() && P.back() == 0) P.pop_back();
  Valuation best = Valuation::infinity();
  for (long i = 0; !P.empty(); ++i) {
    if (!best.is_infinite() && i >= best.value()) break;
    BigInt a = 0;
    for (const auto& x : P) a += x;
    if (a != 0) best = vmin(best, Valuation(padic_val(a, p) + i));
    // P <- (P - a) / (1 - u)
    std::size_t n = P.size();
    if (n == 1) break;
    std::vector<BigInt> Q(n - 1);
    Q[n - 2] = P[n - 1];
    for (std::size_t k = n - 2; k > 0; --k) Q[k - 1] = P[k] + Q[k];
    for (auto& x : Q) mpz_neg(x.get_mpz_t(), x.get_mpz_t());
    P = std::move(Q);
    while (!P.empty() && P.back() == 0) P.pop_back();
  }
  return best;
}

Valuation valuation_poly(const IntPoly& P, const MAdicContext& ctx) { return valuation_coeffs(P.coeffs(), ctx.p); }

long cyclotomic_valuation(std::uint64_t d, unsigned long p) {
  if (d == 1) return 1;
  return prime_power_base(d) == p ? 1 : 0;
}

Valuation valuation_ratfunc(const RatFunc& X, const MAdicContext& ctx) {
  if (X.is_zero()) return Valuation::infinity();
  long v = padic_val(X.coef(), ctx.p);
  v += valuation_coeffs(X.core(), ctx.p).value();
  for (auto& [d, e] : X.cyclo().entries()) v += e * cyclotomic_valuation(d, ctx.p);
  if (X.is_generic()) v -= valuation_coeffs(X.generic_den(), ctx.p).value();
  return Valuation(v);
}

bool is_in_localization(const RatFunc& X, const MAdicContext& ctx) {
  if (X.is_zero()) return true;
  if (padic_val(X.coef(), ctx.p) < 0) return false;
  for (auto& [d, e] : X.cyclo().entries())
    if (e < 0 && cyclotomic_valuation(d, ctx.p) > 0) return false;
  if (X.is_generic()) {
    BigInt d1 = 0;
    for (const auto& c : X.generic_den()) d1 += c;
    if (mpz_divisible_ui_p(d1.get_mpz_t(), ctx.p)) return false;
  }
  return true;
}

bool check_mod_m_power(const RatFunc& X, long s, const MAdicContext& ctx) {
  return valuation_ratfunc(X, ctx).at_least(s);
}

RatFunc phi_p_of_q(const MAdicContext& ctx) {
  CycloExps e;
  e.add_one_minus_power(ctx.p * ctx.b, 1);
  e.add_one_minus_power(ctx.b, -1);
  return RatFunc::from_cyclotomic(BigRat(1), e, ctx.var());
}

bool check_mod_cyclotomic(const RatFunc& X, const MAdicContext& ctx) {
  if (X.is_zero()) return true;
  RatFunc phi = phi_p_of_q(ctx);
  if (phi.var() != X.var()) phi = RatFunc::from_cyclotomic(BigRat(1), phi.cyclo(), X.var());
  return is_in_localization(X / phi, ctx);
}

bool product_identity_check(unsigned j, const MAdicContext& ctx) {
  if (j == 0) throw ArithError("product_identity_check: j must be positive");
  IntPoly lhs = IntPoly::one_minus_power(1, "q");
  std::size_t pk = 1;
  IntPoly phi = cyclotomic(ctx.p, "q");
  for (unsigned i = 0; i < j; ++i) {
    lhs = lhs * poly_substitute(phi, pk);
    pk *= ctx.p;
  }
  return lhs == IntPoly::one_minus_power(pk, "q");
}

}  // namespace qfrob
