#include "qfrob/qseries.hpp"

namespace qfrob {

Residue::Residue(const BigInt& v, unsigned long p, unsigned M) : p_(p), M_(M) {
  mod_ = ipow(BigInt(p), M);
  v_ = mod_floor(v, mod_);
}

Residue Residue::operator-() const { return Residue(-v_, p_, M_); }

namespace {
void same_ring(const Residue& a, const Residue& b) {
  if (a.modulus() != b.modulus()) throw ArithError("residues modulo different powers");
}
}  // namespace

Residue operator+(const Residue& a, const Residue& b) {
  same_ring(a, b);
  return Residue(a.v_ + b.v_, a.p_, a.M_);
}
Residue operator-(const Residue& a, const Residue& b) {
  same_ring(a, b);
  return Residue(a.v_ - b.v_, a.p_, a.M_);
}
Residue operator*(const Residue& a, const Residue& b) {
  same_ring(a, b);
  return Residue(a.v_ * b.v_, a.p_, a.M_);
}

Residue Residue::inverse() const {
  BigInt r;
  if (mod_ == 1) return *this;
  if (!mpz_invert(r.get_mpz_t(), v_.get_mpz_t(), mod_.get_mpz_t())) throw ArithError("residue is not a unit");
  return Residue(r, p_, M_);
}

Fp::Fp(long long v, unsigned long p) : p_(p) {
  long long m = v % static_cast<long long>(p);
  if (m < 0) m += static_cast<long long>(p);
  v_ = static_cast<std::uint64_t>(m);
}

Fp Fp::inverse() const {
  if (v_ == 0) throw ArithError("zero has no inverse in F_p");
  BigInt r = mod_inverse(BigInt(static_cast<unsigned long>(v_)), BigInt(p_));
  return Fp(r.get_si(), p_);
}

Fp to_fp(const BigRat& x, unsigned long p) {
  BigInt P(p);
  BigInt d = x.get_den() % P;
  if (d == 0) throw ArithError("rational " + x.get_str() + " is not p-integral");
  BigInt v = mod_floor(BigInt(x.get_num() * mod_inverse(d, P)), P);
  return Fp(v.get_si(), p);
}

Residue to_residue(const BigRat& x, unsigned long p, unsigned M) {
  BigInt mod = ipow(BigInt(p), M);
  if (x.get_den() % p == 0) throw ArithError("rational " + x.get_str() + " is not p-integral");
  BigInt inv = mod == 1 ? BigInt(0) : mod_inverse(BigInt(x.get_den()), mod);
  return Residue(x.get_num() * inv, p, M);
}

RatFunc coeff_like(const RatFunc& proto, long c) { return RatFunc(BigRat(c), proto.var()); }
ZqpElement coeff_like(const ZqpElement& proto, long c) {
  return ZqpElement::integer(BigInt(c), proto.ctx(), proto.precision(), proto.var());
}
BigRat coeff_like(const BigRat&, long c) { return BigRat(c); }
Residue coeff_like(const Residue& proto, long c) { return Residue(BigInt(c), proto.prime(), proto.precision()); }
Fp coeff_like(const Fp& proto, long c) { return Fp(c, proto.prime()); }

RatFunc coeff_inverse(const RatFunc& x) { return x.inverse(); }
ZqpElement coeff_inverse(const ZqpElement& x) { return zqp_invert(x); }
BigRat coeff_inverse(const BigRat& x) {
  if (x == 0) throw ArithError("division by zero");
  BigRat r = 1 / x;
  r.canonicalize();
  return r;
}
Residue coeff_inverse(const Residue& x) { return x.inverse(); }
Fp coeff_inverse(const Fp& x) { return x.inverse(); }

std::string coeff_to_string(const RatFunc& x) { return x.to_string(); }
std::string coeff_to_string(const ZqpElement& x) { return x.to_string(); }
std::string coeff_to_string(const BigRat& x) { return x.get_str(); }
std::string coeff_to_string(const Residue& x) { return x.to_string(); }
std::string coeff_to_string(const Fp& x) { return x.to_string(); }

RatFunc coeff_dot(const std::vector<const RatFunc*>& a, const std::vector<const RatFunc*>& b, const RatFunc& proto) {
  if (a.empty()) return coeff_like(proto, 0);
  std::vector<RatFunc> terms;
  terms.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) terms.push_back((*a[k]) * (*b[k]));
  if (terms.size() == 1) return terms[0];
  return RatFunc::sum(terms);
}

namespace {

// exponent of u carried by q in the element's basis
unsigned long q_exponent(const ZqpElement& x) { return x.var() == "q" ? 1 : x.ctx().b; }

// [n]_{u^k} as a product of cyclotomic factors
RatFunc bracket(std::uint64_t n, std::uint64_t k, const std::string& var) {
  if (n == 0) return RatFunc(BigRat(0), var);
  CycloExps e;
  e.add_one_minus_power(n * k, 1);
  e.add_one_minus_power(k, -1);
  return RatFunc::from_cyclotomic(BigRat(1), e, var);
}

}  // namespace

RSeries sigma_q(const RSeries& f, const MAdicContext& ctx) {
  std::vector<RatFunc> c;
  for (std::size_t n = 0; n < f.degree_bound(); ++n) c.push_back(f[n].mul_monomial(ctx.b * n));
  return RSeries(std::move(c), f.proto());
}

ZSeries sigma_q(const ZSeries& f) {
  std::vector<ZqpElement> c;
  const auto& P = f.proto();
  for (std::size_t n = 0; n < f.degree_bound(); ++n) {
    if (f[n].is_zero() || n == 0) {
      c.push_back(f[n]);
      continue;
    }
    c.push_back(f[n] * reduce_monomial(BigInt(static_cast<unsigned long>(n * q_exponent(P))), P.precision(), P.ctx(),
                                       P.var()));
  }
  return ZSeries(std::move(c), P);
}

RSeries delta_q(const RSeries& f, const MAdicContext& ctx) {
  std::vector<RatFunc> c;
  for (std::size_t n = 0; n < f.degree_bound(); ++n)
    c.push_back(f[n].is_zero() ? f[n] : f[n] * bracket(n, ctx.b, f.proto().var()));
  return RSeries(std::move(c), f.proto());
}

ZSeries delta_q(const ZSeries& f) {
  std::vector<ZqpElement> c;
  const auto& P = f.proto();
  unsigned long k = q_exponent(P);
  for (std::size_t n = 0; n < f.degree_bound(); ++n) {
    if (n == 0) {
      c.push_back(coeff_like(P, 0));
    } else if (f[n].is_zero()) {
      c.push_back(f[n]);
    } else {
      std::map<std::uint64_t, long> fac;
      fac[n * k] += 1;
      fac[k] -= 1;
      std::erase_if(fac, [](const auto& kv) { return kv.second == 0; });
      c.push_back(f[n] * zqp_from_factors(fac, P.precision(), P.ctx(), P.var()));
    }
  }
  return ZSeries(std::move(c), P);
}

namespace {
template <class C, class Fn>
TruncSeries<C> spread(const TruncSeries<C>& f, std::uint64_t step, std::size_t out_D, Fn apply) {
  if (out_D == 0) out_D = f.degree_bound() * step;
  if (out_D > f.degree_bound() * step) throw ArithError("Frobenius image is only known below degree D p^h");
  auto r = TruncSeries<C>::zero(out_D, f.proto());
  for (std::size_t n = 0; n < f.degree_bound() && n * step < out_D; ++n)
    if (!coeff_is_zero(f[n])) r[n * step] = apply(f[n]);
  return r;
}
}  // namespace

RSeries frobenius_series(const RSeries& f, unsigned h, const MAdicContext& ctx, std::size_t out_D) {
  std::uint64_t ph = 1;
  for (unsigned i = 0; i < h; ++i) ph *= ctx.p;
  return spread(f, ph, out_D, [&](const RatFunc& x) { return x.substitute(ph); });
}

ZSeries frobenius_series(const ZSeries& f, unsigned h, std::size_t out_D) {
  std::uint64_t ph = 1;
  for (unsigned i = 0; i < h; ++i) ph *= f.proto().ctx().p;
  return spread(f, ph, out_D, [&](const ZqpElement& x) {
    ZqpElement y = x;
    for (unsigned i = 0; i < h; ++i) y = zqp_frobenius(y);
    return y;
  });
}

QSeries frobenius_series(const QSeries& f, unsigned long p, unsigned h, std::size_t out_D) {
  std::uint64_t ph = 1;
  for (unsigned i = 0; i < h; ++i) ph *= p;
  return spread(f, ph, out_D, [](const BigRat& x) { return x; });
}

QSeries ev_series(const RSeries& f) {
  std::vector<BigRat> c;
  for (std::size_t n = 0; n < f.degree_bound(); ++n) {
    try {
      c.push_back(f[n].eval_at_one());
    } catch (const ArithError&) {
      throw ArithError("specialization pole at " + f.proto().var() + " = 1 in the coefficient of z^" +
                       std::to_string(n));
    }
  }
  return QSeries(std::move(c), BigRat(0));
}

ResSeries ev_series(const ZSeries& f) {
  const auto& P = f.proto();
  std::vector<Residue> c;
  for (auto& x : f.coeffs()) c.emplace_back(zqp_ev(x), P.ctx().p, P.precision());
  return ResSeries(std::move(c), Residue(BigInt(0), P.ctx().p, P.precision()));
}

Valuation gauss_valuation(const RSeries& f, const MAdicContext& ctx) {
  Valuation v = Valuation::infinity();
  for (auto& x : f.coeffs()) v = vmin(v, valuation_ratfunc(x, ctx));
  return v;
}

Valuation gauss_valuation(const ZSeries& f) {
  Valuation v = Valuation::infinity();
  for (auto& x : f.coeffs()) v = vmin(v, x.valuation());
  return v;
}

RSeries f_alpha_series(std::size_t D, const Family& fam) {
  fam.ctx.require_hyp();
  std::vector<RatFunc> c;
  c.reserve(D);
  RatFunc cur(BigRat(1), fam.var());
  for (std::size_t n = 0; n < D; ++n) {
    if (n > 0) {
      CycloExps e;
      e.add_one_minus_power(fam.a + fam.b * (n - 1), 1);
      e.add_one_minus_power(fam.b * n, -1);
      cur = cur * RatFunc::from_cyclotomic(BigRat(1), e, fam.var());
    }
    c.push_back(cur);
  }
  return RSeries(std::move(c), RatFunc(BigRat(0), fam.var()));
}

ZSeries f_alpha_series_zqp(std::size_t D, const Family& fam, unsigned N) {
  fam.ctx.require_hyp();
  std::vector<ZqpElement> c;
  for (std::size_t n = 0; n < D; ++n) c.push_back(pochhammer_zqp(fam, -1, n, N));
  return ZSeries(std::move(c), ZqpElement::zero(fam.ctx, N, fam.var()));
}

namespace {
std::size_t checked_ps(unsigned s, const Family& fam, std::size_t cap) {
  std::size_t ps = 1;
  for (unsigned i = 0; i < s; ++i) {
    ps *= fam.ctx.p;
    if (ps > cap) throw ArithError("p^s exceeds the degree cap " + std::to_string(cap));
  }
  return ps;
}
}  // namespace

RSeries partial_sum_F_s(unsigned s, const Family& fam, std::size_t out_D, std::size_t cap) {
  std::size_t ps = checked_ps(s, fam, cap);
  auto f = f_alpha_series(ps, fam);
  return f.extend_polynomial(std::max(out_D, ps));
}

ZSeries partial_sum_F_s_zqp(unsigned s, const Family& fam, unsigned N, std::size_t out_D, std::size_t cap) {
  std::size_t ps = checked_ps(s, fam, cap);
  auto f = f_alpha_series_zqp(ps, fam, N);
  return f.extend_polynomial(std::max(out_D, ps));
}

QSeries series_rational(const std::vector<BigRat>& c) { return QSeries(c, BigRat(0)); }

FpSeries to_fp_series(const QSeries& f, unsigned long p) {
  std::vector<Fp> c;
  for (auto& x : f.coeffs()) c.push_back(to_fp(x, p));
  return FpSeries(std::move(c), Fp(0, p));
}

ZSeries embed_series(const RSeries& f, unsigned N, const MAdicContext& ctx) {
  std::vector<ZqpElement> c;
  for (auto& x : f.coeffs()) c.push_back(embed(x, N, ctx, f.proto().var()));
  return ZSeries(std::move(c), ZqpElement::zero(ctx, N, f.proto().var()));
}

}  // namespace qfrob
