#include "qfrob/frobenius.hpp"

namespace qfrob {

namespace {

void require_square(const RMatrix& X) {
  for (auto& row : X.e)
    if (row.size() != X.dim()) throw ArithError("matrix is not square");
}

void require_same_dim(const RMatrix& X, const RMatrix& Y) {
  require_square(X);
  require_square(Y);
  if (X.dim() != Y.dim()) throw ArithError("matrix dimension mismatch");
}

const std::string& matrix_var(const RMatrix& X) { return X.e.at(0).at(0).proto().var(); }

RatFunc q_minus_one(const MAdicContext& ctx, const std::string& var) {
  return -RatFunc::one_minus_power(ctx.b, var);
}

}  // namespace

RSeries zpoly_series(const ZPoly& P, std::size_t D, const std::string& var) {
  auto f = RSeries::zero(D, RatFunc(BigRat(0), var));
  for (std::size_t k = 0; k < P.size() && k < D; ++k) f[k] = P[k];
  return f;
}

RSeries zpoly_times_series(const ZPoly& P, const RSeries& f) {
  std::size_t D = f.degree_bound();
  auto r = RSeries::zero(D, f.proto());
  for (std::size_t n = 0; n < D; ++n) {
    std::vector<RatFunc> terms;
    for (std::size_t k = 0; k < P.size() && k <= n; ++k)
      if (!P[k].is_zero() && !f[n - k].is_zero()) terms.push_back(P[k] * f[n - k]);
    if (!terms.empty()) r[n] = RatFunc::sum(terms);
  }
  return r;
}

namespace {
ZPoly zpoly_mul(const ZPoly& P, const ZPoly& Q) {
  if (P.empty() || Q.empty()) return {};
  ZPoly r(P.size() + Q.size() - 1, RatFunc(BigRat(0), P[0].var()));
  for (std::size_t i = 0; i < P.size(); ++i)
    for (std::size_t j = 0; j < Q.size(); ++j)
      if (!P[i].is_zero() && !Q[j].is_zero()) r[i + j] += P[i] * Q[j];
  return r;
}
}  // namespace

ZPoly zpoly_frobenius(const ZPoly& P, unsigned h, const MAdicContext& ctx) {
  if (P.empty()) return {};
  std::uint64_t ph = 1;
  for (unsigned i = 0; i < h; ++i) ph *= ctx.p;
  ZPoly r((P.size() - 1) * ph + 1, RatFunc(BigRat(0), P[0].var()));
  for (std::size_t k = 0; k < P.size(); ++k) r[k * ph] = P[k].substitute(ph);
  return r;
}

RMatrix rational_matrix_series(const RationalMatrix& A, std::size_t D) {
  RMatrix R;
  for (auto& row : A.num) {
    R.e.emplace_back();
    for (auto& P : row) R.e.back().push_back(rational_z_series(P, A.den, D));
  }
  return R;
}

RMatrix matrix_from_scalar(const RSeries& f) { return RMatrix{{{f}}}; }

RMatrix identity_matrix(std::size_t n, std::size_t D, const std::string& var) {
  RatFunc zero(BigRat(0), var), one(BigRat(1), var);
  RMatrix I;
  I.e.assign(n, std::vector<RSeries>(n, RSeries::zero(D, zero)));
  for (std::size_t i = 0; i < n; ++i) I(i, i) = RSeries::constant(D, one);
  return I;
}

RMatrix mat_mul(const RMatrix& X, const RMatrix& Y) {
  require_same_dim(X, Y);
  std::size_t n = X.dim();
  RMatrix R;
  R.e.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RSeries s = series_mul(X(i, 0), Y(0, j));
      for (std::size_t k = 1; k < n; ++k) s = series_add(s, series_mul(X(i, k), Y(k, j)));
      R.e[i].push_back(std::move(s));
    }
  return R;
}

RMatrix mat_sub(const RMatrix& X, const RMatrix& Y) {
  require_same_dim(X, Y);
  RMatrix R = X;
  for (std::size_t i = 0; i < X.dim(); ++i)
    for (std::size_t j = 0; j < X.dim(); ++j) R(i, j) = series_sub(X(i, j), Y(i, j));
  return R;
}

RMatrix mat_scale(const RMatrix& X, const RatFunc& c) {
  RMatrix R = X;
  for (auto& row : R.e)
    for (auto& x : row) x = series_scale(x, c);
  return R;
}

RMatrix mat_sigma(const RMatrix& X, const MAdicContext& ctx) {
  RMatrix R = X;
  for (auto& row : R.e)
    for (auto& x : row) x = sigma_q(x, ctx);
  return R;
}

RMatrix mat_frobenius(const RMatrix& X, unsigned h, const MAdicContext& ctx) {
  RMatrix R = X;
  for (auto& row : R.e)
    for (auto& x : row) x = frobenius_series(x, h, ctx, x.degree_bound());
  return R;
}

std::vector<RSeries> mat_apply(const RMatrix& X, const std::vector<RSeries>& v) {
  if (v.size() != X.dim()) throw ArithError("vector length does not match the matrix");
  std::vector<RSeries> r;
  for (std::size_t i = 0; i < X.dim(); ++i) {
    RSeries s = series_mul(X(i, 0), v[0]);
    for (std::size_t k = 1; k < X.dim(); ++k) s = series_add(s, series_mul(X(i, k), v[k]));
    r.push_back(std::move(s));
  }
  return r;
}

RatFunc constant_term_det(const RMatrix& X) {
  require_square(X);
  std::size_t n = X.dim();
  if (n == 0) return RatFunc(BigRat(1));
  std::vector<std::vector<RatFunc>> m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i].push_back(X(i, j).degree_bound() ? X(i, j)[0] : RatFunc(BigRat(0), matrix_var(X)));
  RatFunc det(BigRat(1), matrix_var(X));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c].is_zero()) ++piv;
    if (piv == n) return RatFunc(BigRat(0), matrix_var(X));
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det = det * m[c][c];
    RatFunc inv = m[c][c].inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      RatFunc k = m[r][c] * inv;
      for (std::size_t j = c; j < n; ++j) m[r][j] = m[r][j] - k * m[c][j];
    }
  }
  return det;
}

RMatrix companion_matrix(const QDiffOperatorSigma& L) {
  std::size_t n = L.order();
  if (n == 0) throw ArithError("operator of order 0");
  std::size_t D = L.a[0].degree_bound();
  const std::string& var = L.a[0].proto().var();
  RMatrix C;
  C.e.assign(n, std::vector<RSeries>(n, RSeries::zero(D, RatFunc(BigRat(0), var))));
  for (std::size_t i = 0; i + 1 < n; ++i) C(i, i + 1) = RSeries::constant(D, RatFunc(BigRat(1), var));
  for (std::size_t j = 0; j < n; ++j) C(n - 1, j) = series_neg(L.a[n - 1 - j]);
  return C;
}

RMatrix associated_matrix(const QDiffOperatorDelta& L, const MAdicContext& ctx) {
  std::size_t n = L.order();
  if (n == 0) throw ArithError("operator of order 0");
  std::size_t D = L.b[0].degree_bound();
  const std::string& var = L.b[0].proto().var();
  QDiffOperatorSigma shape;
  shape.a = L.b;
  RMatrix C = companion_matrix(shape);
  RMatrix B = mat_scale(C, q_minus_one(ctx, var));
  for (std::size_t i = 0; i < n; ++i)
    B(i, i) = series_add(B(i, i), RSeries::constant(D, RatFunc(BigRat(1), var)));
  return B;
}

QDiffOperatorSigma delta_to_sigma(const QDiffOperatorDelta& L, const MAdicContext& ctx) {
  std::size_t n = L.order();
  if (n == 0) return {};
  std::size_t D = L.b[0].degree_bound();
  const std::string& var = L.b[0].proto().var();
  RatFunc qm1 = q_minus_one(ctx, var);
  auto bcoef = [&](std::size_t i) {
    return i == 0 ? RSeries::constant(D, RatFunc(BigRat(1), var)) : L.b[i - 1];
  };
  QDiffOperatorSigma S;
  // a_j = sum_{i <= j} b_i (q-1)^i C(n-i, n-j) (-1)^{j-i}
  for (std::size_t j = 1; j <= n; ++j) {
    RSeries acc = RSeries::zero(D, RatFunc(BigRat(0), var));
    RatFunc qpow(BigRat(1), var);
    for (std::size_t i = 0; i <= j; ++i) {
      BigInt c = binomial(n - i, n - j);
      if ((j - i) % 2) c = -c;
      acc = series_add(acc, series_scale(bcoef(i), qpow.scaled(BigRat(c))));
      qpow = qpow * qm1;
    }
    S.a.push_back(std::move(acc));
  }
  return S;
}

QDiffOperatorDelta sigma_to_delta(const QDiffOperatorSigma& L, const MAdicContext& ctx) {
  std::size_t n = L.order();
  if (n == 0) return {};
  std::size_t D = L.a[0].degree_bound();
  const std::string& var = L.a[0].proto().var();
  RatFunc qm1_inv = q_minus_one(ctx, var).inverse();
  auto acoef = [&](std::size_t i) {
    return i == 0 ? RSeries::constant(D, RatFunc(BigRat(1), var)) : L.a[i - 1];
  };
  QDiffOperatorDelta R;
  // b_i = (q-1)^{-i} sum_{k=n-i}^{n} C(k, n-i) a_{n-k}
  RatFunc scale(BigRat(1), var);
  for (std::size_t i = 1; i <= n; ++i) {
    scale = scale * qm1_inv;
    RSeries acc = RSeries::zero(D, RatFunc(BigRat(0), var));
    for (std::size_t k = n - i; k <= n; ++k)
      acc = series_add(acc, series_scale(acoef(n - k), RatFunc(BigRat(binomial(k, n - i)), var)));
    R.b.push_back(series_scale(acc, scale));
  }
  return R;
}

RSeries rational_z_series(const std::vector<RatFunc>& num, const std::vector<RatFunc>& den, std::size_t D) {
  if (num.empty() || den.empty()) throw ArithError("empty polynomial in z");
  RSeries N(num, num[0]);
  RSeries Dn(den, den[0]);
  N = N.extend_polynomial(std::max(D, num.size())).truncate(D);
  Dn = Dn.extend_polynomial(std::max(D, den.size())).truncate(D);
  return series_mul(N, invert_series(Dn));
}

RSeries order1_A(const Family& fam, std::size_t D) {
  const std::string& v = fam.var();
  std::vector<RatFunc> num{RatFunc(BigRat(1), v), RatFunc(BigRat(-1), v)};
  std::vector<RatFunc> den{RatFunc(BigRat(1), v), RatFunc::monomial(BigRat(-1), fam.a, v)};
  return rational_z_series(num, den, D);
}

RationalMatrix order1_A_rational(const Family& fam) {
  const std::string& v = fam.var();
  RationalMatrix A;
  A.num = {{ZPoly{RatFunc(BigRat(1), v), RatFunc(BigRat(-1), v)}}};
  A.den = ZPoly{RatFunc(BigRat(1), v), RatFunc::monomial(BigRat(-1), fam.a, v)};
  return A;
}

RSeries order1_transition_matrix(const Family& fam, std::size_t D) {
  fam.ctx.require_hyp();
  std::size_t p = fam.ctx.p;
  auto f = f_alpha_series(D, fam);
  auto small = f_alpha_series((D + p - 1) / p + 1, fam);
  auto Ff = frobenius_series(small, 1, fam.ctx, D);
  return series_mul(f, invert_series(Ff));
}

FrobeniusCertificate check_frobenius_structure(const RMatrix& A, const RMatrix& H, unsigned h,
                                               const MAdicContext& ctx, CheckMode mode, long threshold,
                                               const std::string& description) {
  require_same_dim(A, H);
  FrobeniusCertificate cert;
  cert.operator_description = description;
  cert.h = h;
  cert.H = H;
  cert.D = std::min(A.degree_bound(), H.degree_bound());
  cert.mode = mode;
  cert.threshold = threshold;
  std::size_t n = A.dim();
  cert.residual_valuation.assign(n, std::vector<Valuation>(n));
  cert.residual_zero.assign(n, std::vector<bool>(n, false));
  cert.h0_invertible = !constant_term_det(H).is_zero();
  RMatrix R = mat_sub(mat_mul(mat_sigma(H, ctx), mat_frobenius(A, h, ctx)), mat_mul(A, H));
  bool ok = cert.h0_invertible;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cert.residual_zero[i][j] = R(i, j).is_zero();
      cert.residual_valuation[i][j] = gauss_valuation(R(i, j), ctx);
      if (mode == CheckMode::Exact)
        ok = ok && cert.residual_zero[i][j];
      else
        ok = ok && cert.residual_valuation[i][j].at_least(threshold);
    }
  cert.pass = ok;
  return cert;
}

namespace {

// den coefficients in Z_{q,p} and den(0) a unit, so den den^F has Gauss norm 1 and is invertible
bool unit_denominator(const ZPoly& den, const MAdicContext& ctx) {
  if (den.empty() || den[0].is_zero()) return false;
  for (auto& c : den)
    if (!is_in_localization(c, ctx)) return false;
  return valuation_ratfunc(den[0], ctx) == Valuation(0);
}

void require_rational_shape(const RationalMatrix& A, const RMatrix& H) {
  require_square(H);
  for (auto& row : A.num)
    if (row.size() != A.dim()) throw ArithError("matrix is not square");
  if (A.dim() != H.dim()) throw ArithError("matrix dimension mismatch");
  if (A.den.empty() || A.den[0].is_zero()) throw ArithError("denominator must have a nonzero constant term");
}

}  // namespace

FrobeniusCertificate check_frobenius_structure(const RationalMatrix& A, const RMatrix& H, unsigned h,
                                               const MAdicContext& ctx, CheckMode mode, long threshold,
                                               const std::string& description) {
  require_rational_shape(A, H);
  if (mode == CheckMode::Valuation && !unit_denominator(A.den, ctx))
    return check_frobenius_structure(rational_matrix_series(A, H.degree_bound()), H, h, ctx, mode, threshold,
                                     description);
  FrobeniusCertificate cert;
  cert.operator_description = description;
  cert.h = h;
  cert.H = H;
  cert.D = H.degree_bound();
  cert.mode = mode;
  cert.threshold = threshold;
  cert.cleared_denominators = true;
  std::size_t n = A.dim();
  cert.residual_valuation.assign(n, std::vector<Valuation>(n));
  cert.residual_zero.assign(n, std::vector<bool>(n, false));
  cert.h0_invertible = !constant_term_det(H).is_zero();

  // den sigma_q(H) num^F - den^F num H
  ZPoly denF = zpoly_frobenius(A.den, h, ctx);
  RMatrix S = mat_sigma(H, ctx);
  bool ok = cert.h0_invertible;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RSeries r = RSeries::zero(cert.D, H(0, 0).proto());
      for (std::size_t k = 0; k < n; ++k) {
        r = series_add(r, zpoly_times_series(zpoly_mul(A.den, zpoly_frobenius(A.num[k][j], h, ctx)), S(i, k)));
        r = series_sub(r, zpoly_times_series(zpoly_mul(denF, A.num[i][k]), H(k, j)));
      }
      cert.residual_zero[i][j] = r.is_zero();
      cert.residual_valuation[i][j] = gauss_valuation(r, ctx);
      if (mode == CheckMode::Exact)
        ok = ok && cert.residual_zero[i][j];
      else
        ok = ok && cert.residual_valuation[i][j].at_least(threshold);
    }
  cert.pass = ok;
  return cert;
}

bool check_semilinear_action(const RationalMatrix& A, const RMatrix& H, const std::vector<RSeries>& fvec, unsigned h,
                             const MAdicContext& ctx) {
  require_rational_shape(A, H);
  if (fvec.size() != A.dim()) throw ArithError("solution vector length does not match the matrix");
  auto solves = [&](const std::vector<RSeries>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      RSeries lhs = zpoly_times_series(A.den, sigma_q(v[i], ctx));
      RSeries rhs = RSeries::zero(lhs.degree_bound(), lhs.proto());
      for (std::size_t k = 0; k < v.size(); ++k) rhs = series_add(rhs, zpoly_times_series(A.num[i][k], v[k]));
      std::size_t D = std::min(lhs.degree_bound(), rhs.degree_bound());
      if (!(lhs.truncate(D) == rhs.truncate(D))) return false;
    }
    return true;
  };
  if (!solves(fvec)) throw PreconditionError("the given vector does not satisfy sigma_q(f) = A f");
  std::vector<RSeries> Ff;
  for (auto& f : fvec) Ff.push_back(frobenius_series(f, h, ctx, f.degree_bound()));
  return solves(mat_apply(H, Ff));
}

bool check_semilinear_action(const RMatrix& A, const RMatrix& H, const std::vector<RSeries>& fvec, unsigned h,
                             const MAdicContext& ctx) {
  require_same_dim(A, H);
  if (fvec.size() != A.dim()) throw ArithError("solution vector length does not match the matrix");
  auto solves = [&](const std::vector<RSeries>& v) {
    auto Av = mat_apply(A, v);
    for (std::size_t i = 0; i < v.size(); ++i) {
      auto s = sigma_q(v[i], ctx);
      std::size_t D = std::min(s.degree_bound(), Av[i].degree_bound());
      if (!(s.truncate(D) == Av[i].truncate(D))) return false;
    }
    return true;
  };
  if (!solves(fvec)) throw PreconditionError("the given vector does not satisfy sigma_q(f) = A f");
  std::vector<RSeries> Ff;
  for (auto& f : fvec) Ff.push_back(frobenius_series(f, h, ctx, f.degree_bound()));
  return solves(mat_apply(H, Ff));
}

QSeries differential_residual(const QSeries& G, const BigRat& alpha, unsigned long p, const QSeries* B) {
  std::size_t D = G.degree_bound();
  std::vector<BigRat> b(D, BigRat(0));
  if (B) {
    for (std::size_t n = 0; n < D && n < B->degree_bound(); ++n) b[n] = (*B)[n];
  } else {
    for (std::size_t n = 1; n < D; ++n) b[n] = alpha;
  }
  QSeries Bs(b, BigRat(0));
  std::vector<BigRat> bp(D, BigRat(0));
  for (std::size_t n = 0; n * p < D; ++n) bp[n * p] = b[n];
  QSeries Bp(bp, BigRat(0));
  std::vector<BigRat> dG;
  for (std::size_t n = 0; n < D; ++n) dG.push_back(G[n] * BigRat(static_cast<long>(n)));
  QSeries r = series_sub(QSeries(dG, BigRat(0)), series_mul(Bs, G));
  r = series_add(r, series_scale(series_mul(G, Bp), BigRat(static_cast<long>(p))));
  return r;
}

QSeries sigma_residual_ev(const RSeries& A, const RSeries& G, const MAdicContext& ctx) {
  std::size_t D = std::min(A.degree_bound(), G.degree_bound());
  RSeries R = series_sub(series_mul(sigma_q(G, ctx), frobenius_series(A, 1, ctx, D)), series_mul(A, G));
  return ev_series(series_scale(R, q_minus_one(ctx, G.proto().var()).inverse()));
}

ConfluenceReport check_confluence_order1(const Family& fam, std::size_t D) {
  fam.ctx.require_hyp();
  ConfluenceReport rep;
  rep.D = D;
  unsigned long p = fam.ctx.p;
  RSeries H = order1_transition_matrix(fam, D);
  RSeries A = order1_A(fam, D);
  QSeries Hbar = ev_series(H);
  QSeries res = differential_residual(Hbar, fam.alpha(), p);
  rep.residual = res.coeffs();
  rep.identity_holds = res.is_zero();
  rep.ev_matches = sigma_residual_ev(A, H, fam.ctx) == res;

  // G = H + z is not a Frobenius matrix; both residuals are nonzero and must still agree
  RSeries G = H;
  if (D > 1) G[1] = G[1] + RatFunc(BigRat(1), fam.var());
  QSeries Gbar = ev_series(G);
  rep.perturbed_ev_matches = sigma_residual_ev(A, G, fam.ctx) == differential_residual(Gbar, fam.alpha(), p);

  std::vector<BigRat> b(D, BigRat(0));
  for (std::size_t n = 1; n < D; ++n) b[n] = fam.alpha();
  if (D > 1) b[1] += 1;
  QSeries Bz(b, BigRat(0));
  rep.perturbed_B_fails = !differential_residual(Hbar, fam.alpha(), p, &Bz).is_zero();

  rep.pass = rep.identity_holds && rep.ev_matches && rep.perturbed_ev_matches && rep.perturbed_B_fails;
  return rep;
}

}  // namespace qfrob
