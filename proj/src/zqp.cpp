#include "qfrob/zqp.hpp"

#include <sstream>

namespace qfrob {

void require_compatible(const ZqpElement& x, const ZqpElement& y) {
  if (x.ctx() != y.ctx()) throw ArithError("ZqpElement context mismatch");
  if (x.var() != y.var()) throw ArithError("ZqpElement basis mismatch: " + x.var() + " vs " + y.var());
}

ZqpElement::ZqpElement(const MAdicContext& ctx, unsigned N, std::vector<BigInt> digits, std::string var)
    : ctx_(ctx), N_(N), var_(std::move(var)), a_(std::move(digits)) {
  if (N == 0) throw ArithError("precision must be positive");
  canonicalize();
}

void ZqpElement::canonicalize() {
  a_.resize(N_);
  BigInt m = 1;
  for (unsigned i = 0; i < N_; ++i) m *= ctx_.p;
  // m = p^{N-i} walking downwards
  for (unsigned i = 0; i < N_; ++i) {
    mpz_fdiv_r(a_[i].get_mpz_t(), a_[i].get_mpz_t(), m.get_mpz_t());
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), ctx_.p);
  }
}

ZqpElement ZqpElement::zero(const MAdicContext& ctx, unsigned N, const std::string& var) {
  return ZqpElement(ctx, N, {}, var);
}

ZqpElement ZqpElement::one(const MAdicContext& ctx, unsigned N, const std::string& var) {
  return ZqpElement(ctx, N, {BigInt(1)}, var);
}

ZqpElement ZqpElement::integer(const BigInt& c, const MAdicContext& ctx, unsigned N, const std::string& var) {
  return ZqpElement(ctx, N, {c}, var);
}

bool ZqpElement::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

bool ZqpElement::is_unit() const { return !mpz_divisible_ui_p(a_[0].get_mpz_t(), ctx_.p); }

Valuation ZqpElement::valuation() const {
  Valuation best = Valuation::infinity();
  for (unsigned i = 0; i < N_; ++i)
    if (a_[i] != 0) best = vmin(best, Valuation(padic_val(a_[i], ctx_.p) + static_cast<long>(i)));
  return best;
}

ZqpElement ZqpElement::operator-() const {
  ZqpElement r = *this;
  for (auto& x : r.a_) x = -x;
  r.canonicalize();
  return r;
}

ZqpElement operator+(const ZqpElement& x, const ZqpElement& y) {
  require_compatible(x, y);
  unsigned N = std::min(x.N_, y.N_);
  std::vector<BigInt> d(N);
  for (unsigned i = 0; i < N; ++i) d[i] = x.a_[i] + y.a_[i];
  return ZqpElement(x.ctx_, N, std::move(d), x.var_);
}

ZqpElement operator-(const ZqpElement& x, const ZqpElement& y) {
  require_compatible(x, y);
  unsigned N = std::min(x.N_, y.N_);
  std::vector<BigInt> d(N);
  for (unsigned i = 0; i < N; ++i) d[i] = x.a_[i] - y.a_[i];
  return ZqpElement(x.ctx_, N, std::move(d), x.var_);
}

ZqpElement operator*(const ZqpElement& x, const ZqpElement& y) {
  require_compatible(x, y);
  unsigned N = std::min(x.N_, y.N_);
  std::vector<BigInt> d(N);
  for (unsigned i = 0; i < N; ++i) {
    if (x.a_[i] == 0) continue;
    for (unsigned j = 0; i + j < N; ++j) mpz_addmul(d[i + j].get_mpz_t(), x.a_[i].get_mpz_t(), y.a_[j].get_mpz_t());
  }
  return ZqpElement(x.ctx_, N, std::move(d), x.var_);
}

bool ZqpElement::operator==(const ZqpElement& o) const {
  if (ctx_ != o.ctx_ || var_ != o.var_) return false;
  unsigned N = std::min(N_, o.N_);
  return with_precision(N).a_ == o.with_precision(N).a_;
}

ZqpElement ZqpElement::with_precision(unsigned N) const {
  if (N > N_) throw ArithError("cannot raise precision");
  if (N == N_) return *this;
  return ZqpElement(ctx_, N, std::vector<BigInt>(a_.begin(), a_.begin() + N), var_);
}

ZqpElement ZqpElement::pow(unsigned long e) const {
  ZqpElement r = one(ctx_, N_, var_), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

std::string ZqpElement::to_string() const {
  std::ostringstream os;
  os << "[";
  for (unsigned i = 0; i < N_; ++i) os << (i ? ", " : "") << a_[i];
  os << "] mod m^" << N_;
  return os.str();
}

ZqpElement ZqpElement::div_one_minus_u() const {
  if (N_ < 2) throw ArithError("precision too small to divide");
  if (a_[0] != 0) throw ArithError("element is not divisible by 1 - u");
  return ZqpElement(ctx_, N_ - 1, std::vector<BigInt>(a_.begin() + 1, a_.end()), var_);
}

ZqpElement ZqpElement::div_p() const {
  if (N_ < 2) throw ArithError("precision too small to divide");
  std::vector<BigInt> d(N_ - 1);
  for (unsigned i = 0; i + 1 < N_; ++i) {
    if (!mpz_divisible_ui_p(a_[i].get_mpz_t(), ctx_.p)) throw ArithError("element is not divisible by p");
    mpz_divexact_ui(d[i].get_mpz_t(), a_[i].get_mpz_t(), ctx_.p);
  }
  return ZqpElement(ctx_, N_ - 1, std::move(d), var_);
}

ZqpElement reduce_coeffs(const std::vector<BigInt>& c, unsigned N, const MAdicContext& ctx, const std::string& var) {
  // the first N Taylor coefficients at u = 1, one synthetic division each
  std::vector<BigInt> P = c;
  std::vector<BigInt> d(N);
  for (unsigned i = 0; i < N && !P.empty(); ++i) {
    BigInt a = 0;
    for (const auto& x : P) a += x;
    d[i] = (i % 2) ? BigInt(-a) : a;
    std::size_t n = P.size();
    if (n == 1) break;
    std::vector<BigInt> Q(n - 1);
    Q[n - 2] = P[n - 1];
    for (std::size_t k = n - 2; k > 0; --k) Q[k - 1] = P[k] + Q[k];
    P = std::move(Q);
  }
  return ZqpElement(ctx, N, std::move(d), var);
}

ZqpElement reduce(const IntPoly& P, unsigned N, const MAdicContext& ctx) {
  return reduce_coeffs(P.coeffs(), N, ctx, P.var());
}

ZqpElement reduce_monomial(const BigInt& k, unsigned N, const MAdicContext& ctx, const std::string& var) {
  if (k < 0) throw ArithError("reduce_monomial: negative exponent");
  std::vector<BigInt> d(N);
  for (unsigned i = 0; i < N; ++i) {
    d[i] = binomial(k, i);
    if (i % 2) d[i] = -d[i];
  }
  return ZqpElement(ctx, N, std::move(d), var);
}

ZqpElement zqp_add(const ZqpElement& x, const ZqpElement& y) { return x + y; }
ZqpElement zqp_mul(const ZqpElement& x, const ZqpElement& y) { return x * y; }

ZqpElement zqp_invert(const ZqpElement& x) {
  if (!x.is_unit()) throw ArithError("zqp_invert: element is not a unit");
  const MAdicContext& ctx = x.ctx();
  BigInt pp(ctx.p);
  ZqpElement y = ZqpElement::integer(mod_inverse(x.digits()[0], pp), ctx, x.precision(), x.var());
  ZqpElement two = ZqpElement::integer(2, ctx, x.precision(), x.var());
  unsigned iters = 1;
  for (unsigned n = 1; n < x.precision(); n *= 2) ++iters;
  for (unsigned it = 0; it < iters; ++it) y = y * (two - x * y);
  return y;
}

ZqpElement zqp_frobenius(const ZqpElement& x) {
  const MAdicContext& ctx = x.ctx();
  unsigned N = x.precision();
  ZqpElement y = ZqpElement::one(ctx, N, x.var()) - reduce_monomial(BigInt(ctx.p), N, ctx, x.var());
  ZqpElement r = ZqpElement::zero(ctx, N, x.var());
  for (unsigned i = N; i-- > 0;) r = r * y + ZqpElement::integer(x.digits()[i], ctx, N, x.var());
  return r;
}

BigInt zqp_ev(const ZqpElement& x) { return x.digits()[0]; }

BigInt PadicDigits::partial(std::size_t n) const {
  BigInt r = 0, pk = 1;
  for (std::size_t k = 0; k <= n && k < s.size(); ++k) {
    r += pk * s[k];
    pk *= p;
  }
  return r;
}

PadicDigits padic_digits(const BigInt& a, const BigInt& b, unsigned long p, std::size_t k) {
  if (b <= 0) throw ArithError("padic_digits: b must be positive");
  if (mpz_divisible_ui_p(b.get_mpz_t(), p)) throw ArithError("padic_digits: p divides b");
  PadicDigits out;
  out.a = a;
  out.b = b;
  out.p = p;
  BigInt pp(p);
  BigInt binv = mod_inverse(b, pp);
  BigInt cur = a;
  for (std::size_t n = 0; n < k; ++n) {
    BigInt s = mod_floor(cur * binv, pp);
    out.s.push_back(s.get_ui());
    cur = (cur - s * b) / pp;  // exact
  }
  return out;
}

ZqpElement q_power_beta(const PadicDigits& beta, unsigned N, const MAdicContext& ctx, const std::string& var) {
  PadicDigits digits = beta;
  if (digits.s.size() < N + 1) digits = padic_digits(beta.a, beta.b, beta.p, N + 1);
  // exponents are in q; in the t basis q = t^b
  BigInt mult = var == "t" ? BigInt(ctx.b) : BigInt(1);
  ZqpElement one = ZqpElement::one(ctx, N, var);
  ZqpElement r = reduce_monomial(mult * digits.partial(0), N, ctx, var);
  BigInt pj = 1;
  for (unsigned j = 1; j <= N; ++j) {
    pj *= ctx.p;
    if (digits.s[j] == 0) continue;
    ZqpElement qb = reduce_monomial(mult * digits.partial(j - 1), N, ctx, var);
    ZqpElement step = reduce_monomial(mult * pj * digits.s[j], N, ctx, var) - one;
    r = r + qb * step;
  }
  return r;
}

ZqpElement t_to_q_basis(const ZqpElement& x) {
  if (x.var() == "q") return x;
  const MAdicContext& ctx = x.ctx();
  unsigned N = x.precision();
  ZqpElement T = q_power_beta(padic_digits(1, BigInt(ctx.b), ctx.p, N + 1), N, ctx, "q");
  ZqpElement X = ZqpElement::one(ctx, N, "q") - T;
  ZqpElement r = ZqpElement::zero(ctx, N, "q");
  for (unsigned i = N; i-- > 0;) r = r * X + ZqpElement::integer(x.digits()[i], ctx, N, "q");
  return r;
}

namespace {

// truncated power series in y modulo p^M
using YSeries = std::vector<BigInt>;

YSeries ys_mul(const YSeries& a, const YSeries& b, const BigInt& mod) {
  std::size_t K = a.size();
  YSeries r(K);
  for (std::size_t i = 0; i < K; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < K; ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  for (auto& x : r) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
  return r;
}

// inverse of a series with constant term 1
YSeries ys_inv(const YSeries& a, const BigInt& mod) {
  std::size_t K = a.size();
  YSeries r(K);
  r[0] = 1;
  for (std::size_t n = 1; n < K; ++n) {
    BigInt s = 0;
    for (std::size_t j = 1; j <= n; ++j) mpz_addmul(s.get_mpz_t(), a[j].get_mpz_t(), r[n - j].get_mpz_t());
    r[n] = mod_floor(-s, mod);
  }
  return r;
}

YSeries ys_pow(YSeries a, long e, const BigInt& mod) {
  if (e < 0) {
    a = ys_inv(a, mod);
    e = -e;
  }
  YSeries r(a.size());
  r[0] = 1;
  while (e) {
    if (e & 1) r = ys_mul(r, a, mod);
    e >>= 1;
    if (e) a = ys_mul(a, a, mod);
  }
  return r;
}

}  // namespace

ZqpElement zqp_from_factors(const std::map<std::uint64_t, long>& factors, unsigned N, const MAdicContext& ctx,
                            const std::string& var) {
  // 1 - u^k = x S_k(x) with x = 1 - u; writing x = p y, S_k(p y) = k V_k(y)
  // where V_k = sum (-1)^i C(k-1, i) p^i/(i+1) y^i has p-integral
  // coefficients and constant term 1, so it is invertible.
  const unsigned long p = ctx.p;
  long c = 0, nu = 0;
  for (auto& [k, m] : factors) {
    if (k == 0) throw ArithError("zqp_from_factors: factor 1 - u^0 = 0");
    c += m;
    nu += m * padic_val(BigInt(static_cast<unsigned long>(k)), p);
  }
  if (c < 0) throw ArithError("not in Z_{q,p}: pole at u = 1");
  std::vector<BigInt> d(N);
  if (static_cast<long>(N) <= c) {
    if (nu < 0) throw ArithError("not in Z_{q,p}: negative p-adic part");
    return ZqpElement(ctx, N, std::move(d), var);
  }
  long K = static_cast<long>(N) - c;
  long M = std::max(1L, static_cast<long>(N) - c - nu) + 1;
  BigInt mod = ipow(BigInt(p), static_cast<unsigned long>(M));
  BigInt unit_num = 1, unit_den = 1;
  YSeries W(K);
  W[0] = 1;
  std::vector<BigInt> ip(K);  // p^{i - v_p(i+1)} / unit(i+1) mod p^M
  for (long i = 0; i < K; ++i) {
    BigInt ii(i + 1);
    long v = padic_val(ii, p);
    BigInt u = ii / ipow(BigInt(p), v);
    ip[i] = mod_floor(ipow(BigInt(p), i - v) * mod_inverse(u, mod), mod);
  }
  for (auto& [k, m] : factors) {
    BigInt kk(static_cast<unsigned long>(k));
    long v = padic_val(kk, p);
    BigInt u = kk / ipow(BigInt(p), v);
    BigInt up = ipow(u, static_cast<unsigned long>(m > 0 ? m : -m));
    if (m > 0)
      unit_num = mod_floor(unit_num * up, mod);
    else
      unit_den = mod_floor(unit_den * up, mod);
    YSeries V(K);
    for (long i = 0; i < K; ++i) {
      BigInt t = binomial(kk - 1, static_cast<unsigned long>(i)) * ip[i];
      if (i % 2) t = -t;
      V[i] = mod_floor(t, mod);
    }
    W = ys_mul(W, ys_pow(V, m, mod), mod);
  }
  BigInt u0 = mod_floor(unit_num * mod_inverse(unit_den, mod), mod);
  BigInt pn = ipow(BigInt(p), static_cast<unsigned long>(N));
  for (long i = 0; i < K; ++i) {
    BigInt w = mod_floor(u0 * W[i], mod);
    long shift = nu - i;
    if (shift >= 0) {
      w *= ipow(BigInt(p), static_cast<unsigned long>(shift));
    } else {
      BigInt q = ipow(BigInt(p), static_cast<unsigned long>(-shift));
      if (!mpz_divisible_p(w.get_mpz_t(), q.get_mpz_t())) throw ArithError("not in Z_{q,p}: non-integral digit");
      mpz_divexact(w.get_mpz_t(), w.get_mpz_t(), q.get_mpz_t());
    }
    d[c + i] = w;
  }
  return ZqpElement(ctx, N, std::move(d), var);
}

ZqpElement embed(const RatFunc& X, unsigned N, const MAdicContext& ctx, const std::string& var) {
  if (X.var() == "t" && var == "q") return t_to_q_basis(embed(X, N, ctx, "t"));
  if (X.var() != var) throw ArithError("embed: cannot map basis " + X.var() + " to " + var);
  if (X.is_zero()) return ZqpElement::zero(ctx, N, var);
  // scale * core * prod Phi_d^{e_d}, the last through (1 - u^e) factors
  std::map<std::uint64_t, long> fac;
  long sign_exp = 0;
  for (auto& [e, m] : mobius_aggregate(X.cyclo())) {
    fac[e] += m;
    sign_exp += m;
  }
  const BigRat& s = X.coef();
  long vs = padic_val(s, ctx.p);
  if (vs < 0) throw ArithError("not in Z_{q,p}: scale has negative p-adic valuation");
  BigInt mod = ipow(BigInt(ctx.p), N);
  BigInt sc = mod_floor(BigInt(s.get_num()) * mod_inverse(BigInt(s.get_den()), mod), mod);
  if (sign_exp % 2) sc = -sc;
  ZqpElement r = zqp_from_factors(fac, N, ctx, var) * ZqpElement::integer(sc, ctx, N, var);
  if (X.core().size() > 1) r = r * reduce_coeffs(X.core(), N, ctx, var);
  if (X.is_generic()) {
    ZqpElement den = reduce_coeffs(X.generic_den(), N, ctx, var);
    if (!den.is_unit()) throw ArithError("not in Z_{q,p}: denominator is not a unit");
    r = r * zqp_invert(den);
  }
  return r;
}

}  // namespace qfrob
