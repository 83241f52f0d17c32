#include "qfrob/congruence.hpp"

#include <algorithm>

namespace qfrob {

std::string to_string(CertificateKind k) {
  return k == CertificateKind::ExactDivisibility ? "exact-divisibility" : "valuation-bound";
}

namespace {

std::uint64_t upow(std::uint64_t p, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= p;
  return r;
}

// factors of B^{(i)}(n) / B^{(i+1)}(floor(n/p))
FactorMap dwork_ratio(const Family& fam, int i, std::uint64_t n) {
  return pochhammer_factors(fam, i, n) + (-pochhammer_factors(fam, i + 1, n / fam.ctx.p));
}

std::string param(long v) { return std::to_string(v); }

}  // namespace

bool check_dwork_condition1(const Family& fam, int i, std::uint64_t n) {
  return is_in_localization(ratfunc_from_factors(dwork_ratio(fam, i, n), fam.var()), fam.ctx);
}

bool check_dwork_condition2(const Family& fam, int i, std::uint64_t n, std::uint64_t m, unsigned s) {
  if (m == 0) return true;
  unsigned N = s + 1;
  std::uint64_t shift = m * upow(fam.ctx.p, s + 1);
  auto X = zqp_from_factors(dwork_ratio(fam, i, n + shift), N, fam.ctx, fam.var());
  auto Y = zqp_from_factors(dwork_ratio(fam, i, n), N, fam.ctx, fam.var());
  return (X - Y).is_zero();
}

bool check_dwork_condition2_exact(const Family& fam, int i, std::uint64_t n, std::uint64_t m, unsigned s) {
  std::uint64_t shift = m * upow(fam.ctx.p, s + 1);
  RatFunc X = ratfunc_from_factors(dwork_ratio(fam, i, n + shift), fam.var());
  RatFunc Y = ratfunc_from_factors(dwork_ratio(fam, i, n), fam.var());
  return check_mod_m_power(X - Y, s + 1, fam.ctx);
}

bool check_dwork_condition3(const Family& fam, int i, std::uint64_t n) {
  return is_in_localization(pochhammer_value(fam, i, n), fam.ctx);
}

bool check_dwork_condition4(const Family& fam, int i) {
  RatFunc b0 = pochhammer_value(fam, i, 0);
  return b0.is_one() && valuation_ratfunc(b0, fam.ctx) == Valuation(0);
}

CongruenceReport check_dwork_conclusion(const Family& fam, std::uint64_t r, unsigned s, std::size_t D) {
  fam.ctx.require_hyp();
  std::uint64_t p = fam.ctx.p;
  std::uint64_t ps = upow(p, s);
  if (D == 0) D = (r + 1) * ps * p;
  CongruenceReport rep;
  rep.identity = "dwork-conclusion";
  rep.parameters = {{"p", param(p)}, {"alpha", fam.alpha().get_str()}, {"r", param(r)}, {"s", param(s)},
                    {"D", param(D)}};
  RatFunc Bsr = pochhammer_value(fam, s, r);
  if (Bsr.is_zero()) throw ArithError("B^(s)(r) vanished");

  auto f = f_alpha_series(D, fam);
  auto Ff = frobenius_series(f_alpha_series((D + p - 1) / p + 1, fam), 1, fam.ctx, D);
  RatFunc zero(BigRat(0), fam.var());
  auto P1 = RSeries::zero(D, zero);
  for (std::uint64_t k = r * ps; k < (r + 1) * ps; ++k)
    if (p * k < D) P1[p * k] = pochhammer_value(fam, 0, k);
  auto P2 = RSeries::zero(D, zero);
  for (std::uint64_t k = r * ps * p; k < (r + 1) * ps * p; ++k)
    if (k < D) P2[k] = f[k];
  auto diff = series_sub(series_mul(f, P1), series_mul(Ff, P2));

  rep.pass = true;
  RatFunc Binv = Bsr.inverse();
  for (std::size_t j = 0; j < D; ++j) {
    CoefficientCertificate c;
    c.index = j;
    c.kind = CertificateKind::ValuationBound;
    c.residual_valuation = valuation_ratfunc(diff[j] * Binv, fam.ctx);
    c.pass = c.residual_valuation.at_least(s + 1);
    rep.pass = rep.pass && c.pass;
    rep.coefficients.push_back(c);
  }
  return rep;
}

DworkReport check_dwork(const Family& fam, std::uint64_t n_max, std::uint64_t m_max, unsigned s_max, int i_max,
                        unsigned r_max, unsigned conclusion_s_max) {
  fam.ctx.require_hyp();
  DworkReport rep;
  rep.fam = fam;
  rep.n_max = n_max;
  rep.m_max = m_max;
  rep.s_max = s_max;
  rep.i_max = i_max;
  rep.r_max = r_max;
  rep.conclusion_s_max = conclusion_s_max;
  auto add = [&](int cond, int i, std::uint64_t n, std::uint64_t m, unsigned s, bool ok) {
    rep.cells.push_back({cond, i, n, m, s, ok});
    if (!ok)
      rep.failing.push_back("condition " + std::to_string(cond) + " i=" + std::to_string(i) + " n=" +
                            std::to_string(n) + " m=" + std::to_string(m) + " s=" + std::to_string(s));
  };
  for (int i = -1; i <= i_max; ++i) {
    add(4, i, 0, 0, 0, check_dwork_condition4(fam, i));
    for (std::uint64_t n = 0; n <= n_max; ++n) {
      add(1, i, n, 0, 0, check_dwork_condition1(fam, i, n));
      add(3, i, n, 0, 0, check_dwork_condition3(fam, i, n));
      for (unsigned s = 0; s <= s_max; ++s)
        for (std::uint64_t m = 0; m <= m_max; ++m) add(2, i, n, m, s, check_dwork_condition2(fam, i, n, m, s));
    }
  }
  for (std::uint64_t r = 0; r <= r_max; ++r)
    for (unsigned s = 0; s <= conclusion_s_max; ++s) {
      rep.conclusion.push_back(check_dwork_conclusion(fam, r, s));
      if (!rep.conclusion.back().pass)
        rep.failing.push_back("conclusion r=" + std::to_string(r) + " s=" + std::to_string(s));
    }
  rep.pass = rep.failing.empty();
  return rep;
}

CongruenceReport check_truncation_congruence(const Family& fam, unsigned s, std::size_t D, bool replace_with_F_s,
                                             unsigned N) {
  fam.ctx.require_hyp();
  if (N == 0) N = s + 1;
  std::uint64_t p = fam.ctx.p;
  CongruenceReport rep;
  rep.identity = replace_with_F_s ? "truncation-congruence-control" : "truncation-congruence";
  rep.parameters = {{"p", param(p)}, {"alpha", fam.alpha().get_str()}, {"s", param(s)}, {"D", param(D)},
                    {"precision", param(N)}};
  auto f = f_alpha_series_zqp(D, fam, N);
  std::size_t small = (D + p - 1) / p;
  // F_k as a polynomial known to the given length
  auto partial = [&](std::uint64_t k, std::size_t len) {
    auto g = f.truncate(std::min<std::size_t>(k, D));
    return g.extend_polynomial(len).truncate(len);
  };
  std::uint64_t ps = upow(p, s);
  auto FFs = frobenius_series(partial(ps, small), 1, D);
  auto Ff = frobenius_series(f.truncate(small), 1, D);
  auto right = partial(replace_with_F_s ? ps : ps * p, D);
  auto diff = series_sub(series_mul(f, FFs), series_mul(Ff, right));
  rep.pass = true;
  for (std::size_t j = 0; j < D; ++j) {
    CoefficientCertificate c;
    c.index = j;
    c.kind = CertificateKind::ValuationBound;
    c.residual_valuation = diff[j].valuation();
    c.pass = c.residual_valuation.at_least(s + 1);
    rep.pass = rep.pass && c.pass;
    rep.coefficients.push_back(c);
  }
  return rep;
}

CongruenceReport check_cyclotomic_congruence(const Family& fam, std::size_t D) {
  fam.ctx.require_hyp();
  std::uint64_t p = fam.ctx.p;
  CongruenceReport rep;
  rep.identity = "cyclotomic-congruence";
  rep.parameters = {{"p", param(p)}, {"alpha", fam.alpha().get_str()}, {"D", param(D)}};
  auto f = f_alpha_series(D, fam);
  rep.pass = true;
  for (std::size_t j = 0; j < D; ++j) {
    std::uint64_t n = j / p, r = j % p;
    RatFunc diff = f[j] - pochhammer_value(fam, 0, n) * f[r];
    CoefficientCertificate c;
    c.index = j;
    c.residual_valuation = valuation_ratfunc(diff, fam.ctx);
    if (check_mod_cyclotomic(diff, fam.ctx)) {
      c.kind = CertificateKind::ExactDivisibility;
      c.pass = true;
    } else {
      // weaker fallback: the difference is at least in m
      c.kind = CertificateKind::ValuationBound;
      c.pass = c.residual_valuation.at_least(1);
      rep.fallbacks.push_back(j);
    }
    rep.pass = rep.pass && c.pass;
    rep.coefficients.push_back(c);
  }
  return rep;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

// [z^k] g(z^P)
std::uint64_t spread_coeff(const FpSeries& g, std::uint64_t k, std::uint64_t P) {
  if (k % P) return 0;
  std::uint64_t idx = k / P;
  if (idx >= g.degree_bound()) throw ArithError("series too short for the requested window");
  return g[idx].value();
}

}  // namespace

bool relation_holds(const LucasRelation& rel, const FpSeries& g, std::size_t D) {
  std::uint64_t p = rel.p;
  for (std::size_t m = 0; m < D; ++m) {
    std::uint64_t acc = 0;
    std::uint64_t P = 1;
    for (std::size_t i = 0; i < rel.a.size(); ++i) {
      for (std::size_t j = 0; j < rel.a[i].size() && j <= m; ++j)
        if (rel.a[i][j]) acc = (acc + mulmod(rel.a[i][j], spread_coeff(g, m - j, P), p)) % p;
      P *= upow(p, rel.h);
    }
    if (acc) return false;
  }
  return true;
}

FpSeries reduced_hypergeometric(const Family& fam, std::size_t length) {
  return to_fp_series(ev_series(f_alpha_series(length, fam)), fam.ctx.p);
}

LucasRelation recover_p_lucas(const Family& fam, std::size_t D) {
  fam.ctx.require_hyp();
  std::uint64_t p = fam.ctx.p;
  auto g = reduced_hypergeometric(fam, std::max<std::size_t>(D, p));
  LucasRelation rel;
  rel.p = p;
  rel.h = 1;
  rel.terms = 2;
  rel.degree = p - 1;
  rel.a.assign(2, std::vector<std::uint64_t>(p, 0));
  rel.a[0][0] = 1;
  // A_p(1, z) = ev(F_1) mod p
  for (std::size_t j = 0; j < p; ++j) rel.a[1][j] = (p - g[j].value()) % p;
  rel.solve_window = 0;
  rel.verified_degree = D;
  rel.verified = relation_holds(rel, g, D);
  return rel;
}

std::optional<LucasRelation> find_relation(const FpSeries& g, unsigned h, std::size_t r, std::size_t d,
                                           std::size_t D) {
  if (g.degree_bound() == 0) throw ArithError("empty series");
  if (h == 0) throw ArithError("the Frobenius step h must be positive");
  std::uint64_t p = g[0].prime();
  std::size_t U = (r + 1) * (d + 1);
  if (D == 0) D = 2 * U;
  if (D < U) throw ArithError("solving window smaller than the number of unknowns");
  if (g.degree_bound() < D) throw ArithError("series shorter than the solving window");

  // columns in reverse order so that pivots sit on high indices and the free
  // unknowns are the low ones
  std::vector<std::vector<std::uint64_t>> M(D, std::vector<std::uint64_t>(U, 0));
  std::uint64_t step = upow(p, h);
  for (std::size_t m = 0; m < D; ++m) {
    std::uint64_t P = 1;
    for (std::size_t i = 0; i <= r; ++i) {
      for (std::size_t j = 0; j <= d && j <= m; ++j) M[m][U - 1 - (i * (d + 1) + j)] = spread_coeff(g, m - j, P);
      P *= step;
    }
  }
  std::vector<std::size_t> pivcol;
  std::size_t row = 0;
  for (std::size_t c = 0; c < U && row < D; ++c) {
    std::size_t piv = row;
    while (piv < D && M[piv][c] == 0) ++piv;
    if (piv == D) continue;
    std::swap(M[piv], M[row]);
    std::uint64_t inv = powmod(M[row][c], p - 2, p);
    for (auto& x : M[row]) x = mulmod(x, inv, p);
    for (std::size_t k = 0; k < D; ++k) {
      if (k == row || M[k][c] == 0) continue;
      std::uint64_t f = M[k][c];
      for (std::size_t j = c; j < U; ++j) M[k][j] = (M[k][j] + p - mulmod(f, M[row][j], p)) % p;
    }
    pivcol.push_back(c);
    ++row;
  }
  std::vector<bool> is_piv(U, false);
  for (auto c : pivcol) is_piv[c] = true;

  std::optional<std::vector<std::uint64_t>> best;
  std::vector<std::size_t> best_support;
  for (std::size_t fcol = 0; fcol < U; ++fcol) {
    if (is_piv[fcol]) continue;
    std::vector<std::uint64_t> x(U, 0);  // in reversed column order
    x[fcol] = 1;
    for (std::size_t k = 0; k < pivcol.size(); ++k) x[pivcol[k]] = (p - M[k][fcol]) % p;
    std::vector<std::uint64_t> v(U);
    for (std::size_t c = 0; c < U; ++c) v[U - 1 - c] = x[c];
    std::vector<std::size_t> support;
    for (std::size_t c = 0; c < U; ++c)
      if (v[c]) support.push_back(c);
    if (!best || support < best_support) {
      best = v;
      best_support = support;
    }
  }
  if (!best) return std::nullopt;

  auto& v = *best;
  std::uint64_t lead = powmod(v[best_support.front()], p - 2, p);
  for (auto& x : v) x = mulmod(x, lead, p);
  LucasRelation rel;
  rel.p = p;
  rel.h = h;
  rel.terms = r + 1;
  rel.degree = d;
  rel.a.assign(r + 1, std::vector<std::uint64_t>(d + 1, 0));
  for (std::size_t i = 0; i <= r; ++i)
    for (std::size_t j = 0; j <= d; ++j) rel.a[i][j] = v[i * (d + 1) + j];
  rel.solve_window = D;
  rel.verified_degree = g.degree_bound() >= 2 * D ? 2 * D : D;
  rel.verified = relation_holds(rel, g, rel.verified_degree);
  if (!rel.verified) return std::nullopt;
  return rel;
}

}  // namespace qfrob
