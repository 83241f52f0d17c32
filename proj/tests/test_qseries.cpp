#include <doctest.h>

#include <random>

#include "qfrob/qseries.hpp"

using namespace qfrob;

namespace {
IntPoly P(std::vector<long> c, const std::string& v = "q") {
  std::vector<BigInt> b;
  for (long x : c) b.emplace_back(x);
  return IntPoly(b, v);
}

RatFunc R(std::vector<long> c, const std::string& v = "q") { return RatFunc(P(c, v)); }
RatFunc K(long c, const std::string& v = "q") { return RatFunc(BigRat(c), v); }

RSeries S(std::vector<RatFunc> c) {
  auto proto = c.front();
  return RSeries(std::move(c), proto);
}

RSeries random_series(std::mt19937_64& rng, std::size_t D, const std::string& v) {
  std::vector<RatFunc> c;
  for (std::size_t n = 0; n < D; ++n) {
    std::vector<long> a(1 + rng() % 3);
    for (auto& x : a) x = static_cast<long>(rng() % 11) - 5;
    RatFunc x = R(a, v);
    if (rng() % 3 == 0) x = x / R({1, 1}, v);
    c.push_back(x);
  }
  return S(c);
}
}  // namespace

TEST_CASE("series ring examples") {
  auto one = RSeries::constant(5, K(1));
  auto f = S({K(2), R({1, 1}), K(0), R({0, 0, 3}), K(-1)});
  CHECK(series_mul(f, one) == f);
  auto a = S({K(1), K(1), K(0), K(0)}), b = S({K(1), K(-1), K(0), K(0)});
  CHECK(series_mul(a, b) == S({K(1), K(0), K(-1), K(0)}));
  CHECK(series_add(f, one.truncate(3)).degree_bound() == 3);
  CHECK_THROWS(series_add(a, S({K(1, "t"), K(0, "t"), K(0, "t"), K(0, "t")})));
  Family fam(5, BigRat(1, 2));
  auto fa = f_alpha_series(12, fam);
  CHECK(series_mul(fa, invert_series(fa)) == RSeries::constant(12, K(1, "t")));
}

TEST_CASE("series inversion") {
  auto g = invert_series(S({K(1), K(-1), K(0), K(0), K(0)}));
  CHECK(g == S({K(1), K(1), K(1), K(1), K(1)}));
  CHECK(invert_series(RSeries::constant(4, K(1))) == RSeries::constant(4, K(1)));
  CHECK_THROWS(invert_series(S({K(0), K(1)})));
  Family fam(5, BigRat(1, 2));
  auto inv = invert_series(f_alpha_series(8, fam));
  CHECK(inv[1] == -(K(1, "t") / R({1, 1}, "t")));
  // zqp coefficients: a non-unit constant term is rejected
  MAdicContext c5(5);
  ZSeries z({reduce(P({5}), 3, c5), reduce(P({1}), 3, c5)}, reduce(P({0}), 3, c5));
  CHECK_THROWS(invert_series(z));
}

TEST_CASE("sigma_q and delta_q examples") {
  MAdicContext c5(5);
  auto z = S({K(0), K(1), K(0)});
  CHECK(sigma_q(z, c5) == S({K(0), R({0, 1}), K(0)}));
  CHECK(sigma_q(RSeries::constant(3, R({3, 1})), c5) == RSeries::constant(3, R({3, 1})));
  CHECK(delta_q(z, c5) == z);
  CHECK(delta_q(RSeries::constant(3, K(1)), c5).is_zero());

  Family fam(5, BigRat(1, 2));
  std::size_t D = 20;
  auto f = f_alpha_series(D, fam);
  // q = t^2 and q^alpha = t
  auto A_num = S(std::vector<RatFunc>{K(1, "t"), K(-1, "t")}).extend_polynomial(D);
  auto A_den = S(std::vector<RatFunc>{K(1, "t"), -R({0, 1}, "t")}).extend_polynomial(D);
  auto lhs = series_mul(sigma_q(f, fam.ctx), A_den);
  CHECK(lhs == series_mul(A_num, f));
  CHECK(sigma_q(f, fam.ctx) == series_mul(series_mul(A_num, invert_series(A_den)), f));
}

TEST_CASE("delta_q commutes with ev") {
  Family fam(7, BigRat(1, 3));
  auto f = f_alpha_series(15, fam);
  auto lhs = ev_series(delta_q(f, fam.ctx));
  auto ef = ev_series(f);
  for (std::size_t n = 0; n < 15; ++n) CHECK(lhs[n] == BigRat(static_cast<long>(n)) * ef[n]);
}

TEST_CASE("frobenius_series examples") {
  MAdicContext c5(5);
  auto z = S({K(0), K(1)});
  auto Fz = frobenius_series(z, 1, c5);
  CHECK(Fz.degree_bound() == 10);
  for (std::size_t n = 0; n < 10; ++n) CHECK(Fz[n] == (n == 5 ? K(1) : K(0)));
  CHECK_THROWS(frobenius_series(z, 1, c5, 11));

  Family fam(5, BigRat(1, 2));
  auto w = S({K(0, "t"), R({0, 1}, "t")});
  auto Fw = frobenius_series(w, 1, fam.ctx);
  CHECK(Fw[5] == RatFunc::monomial(BigRat(1), 5, "t"));

  auto f = f_alpha_series(10, fam);
  for (unsigned h : {1u, 2u}) {
    auto lhs = ev_series(frobenius_series(f, h, fam.ctx));
    auto rhs = frobenius_series(ev_series(f), 5, h);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("ev_series examples") {
  Family fam(5, BigRat(1, 2));
  auto e = ev_series(f_alpha_series(10, fam));
  CHECK(e[0] == 1);
  CHECK(e[1] == BigRat(1, 2));
  CHECK(e[2] == BigRat(3, 8));
  CHECK(ev_series(RSeries::constant(3, K(1)))[0] == 1);
  CHECK(ev_series(RSeries::constant(3, K(1)))[1] == 0);
  CHECK_THROWS_AS(ev_series(S({K(1), K(1) / R({1, -1})})), ArithError);
}

TEST_CASE("gauss valuation") {
  MAdicContext c5(5);
  CHECK(gauss_valuation(S({K(5), K(5)}), c5) == Valuation(1));
  CHECK(gauss_valuation(RSeries::zero(4, K(0)), c5).is_infinite());
  CHECK(gauss_valuation(S({K(0), R({1, -1}), K(0), K(25)}), c5) == Valuation(1));
  CHECK(gauss_valuation(embed_series(S({K(0), R({1, -1}), K(0), K(25)}), 4, c5)) == Valuation(1));
}

TEST_CASE("pochhammer ratios") {
  Family fam(5, BigRat(1, 2));
  CHECK(pochhammer_ratio(-1, 0, fam).value.is_one());
  CHECK(pochhammer_ratio(-1, 1, fam).value == K(1, "t") / R({1, 1}, "t"));
  CHECK(pochhammer_ratio(0, 1, fam).value == K(1, "t") / R({1, 0, 0, 0, 0, 1}, "t"));
  CHECK_THROWS_AS(pochhammer_ratio(-1, 1, Family(5, BigRat(1, 3))), HypothesisError);
  // B^{(i)}(n) is the (i+1)-fold Frobenius image of B^{(-1)}(n)
  for (std::uint64_t n = 0; n < 8; ++n)
    CHECK(pochhammer_value(fam, 1, n) == pochhammer_value(fam, -1, n).substitute(25));
}

TEST_CASE("f_alpha coefficients") {
  for (auto [p, alpha] : {std::pair{5ul, BigRat(1, 2)}, std::pair{7ul, BigRat(2, 3)}, std::pair{3ul, BigRat(1)}}) {
    Family fam(p, alpha);
    auto f = f_alpha_series(11, fam);
    CHECK(f[0].is_one());
    auto e = ev_series(f);
    for (std::uint64_t n = 0; n <= 10; ++n) CHECK(e[n] == rising_ratio(alpha, n));
  }
  CHECK(f_alpha_series(3, Family(5, BigRat(1, 2)))[1] == K(1, "t") / R({1, 1}, "t"));
  CHECK_THROWS_AS(f_alpha_series(3, Family(5, BigRat(1, 3))), HypothesisError);
}

TEST_CASE("partial sums F_s") {
  Family fam(5, BigRat(1, 2));
  auto F0 = partial_sum_F_s(0, fam);
  CHECK(F0.degree_bound() == 1);
  CHECK(F0[0].is_one());
  auto F1 = partial_sum_F_s(1, fam, 8);
  for (std::uint64_t n = 0; n < 5; ++n) CHECK(F1[n] == pochhammer_value(fam, -1, n));
  for (std::uint64_t n = 5; n < 8; ++n) CHECK(F1[n].is_zero());
  CHECK_THROWS(partial_sum_F_s(3, fam, 0, 100));
}

TEST_CASE("operator identities on random series") {
  std::mt19937_64 rng(3);
  MAdicContext c5(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = random_series(rng, 7, "q"), g = random_series(rng, 7, "q");
    auto qm1 = R({-1, 1});
    CHECK(series_sub(sigma_q(f, c5), f) == series_scale(delta_q(f, c5), qm1));
    CHECK(sigma_q(series_mul(f, g), c5) == series_mul(sigma_q(f, c5), sigma_q(g, c5)));
    CHECK(sigma_q(series_add(f, g), c5) == series_add(sigma_q(f, c5), sigma_q(g, c5)));
    CHECK(frobenius_series(series_mul(f, g), 1, c5) ==
          series_mul(frobenius_series(f, 1, c5), frobenius_series(g, 1, c5)));
    for (unsigned h : {1u, 2u})
      CHECK(ev_series(frobenius_series(f, h, c5)) == frobenius_series(ev_series(f), 5, h));
  }
}

TEST_CASE("divisibility by the Frobenius image of the quotient term") {
  for (auto [p, alpha] : {std::pair{5ul, BigRat(1, 2)}, std::pair{7ul, BigRat(1, 3)}, std::pair{5ul, BigRat(1)}}) {
    Family fam(p, alpha);
    for (std::uint64_t n = 0; n <= 3 * p; ++n) {
      auto x = pochhammer_value(fam, -1, n) / pochhammer_value(fam, -1, n / p).substitute(p);
      CHECK(is_in_localization(x, fam.ctx));
    }
  }
}

TEST_CASE("zqp series backend agrees with the exact one") {
  Family fam(7, BigRat(1, 3));
  auto f = f_alpha_series(30, fam);
  for (unsigned N = 1; N <= 4; ++N) {
    auto z = f_alpha_series_zqp(30, fam, N);
    CHECK(z == embed_series(f, N, fam.ctx));
    CHECK(sigma_q(z) == embed_series(sigma_q(f, fam.ctx), N, fam.ctx));
    CHECK(delta_q(z) == embed_series(delta_q(f, fam.ctx), N, fam.ctx));
    CHECK(frobenius_series(z, 1) == embed_series(frobenius_series(f, 1, fam.ctx), N, fam.ctx));
  }
}

TEST_CASE("prime field and residue coefficients") {
  CHECK(to_fp(BigRat(1, 2), 5).value() == 3);
  CHECK_THROWS(to_fp(BigRat(1, 5), 5));
  CHECK(to_residue(BigRat(1, 2), 5, 3).value() == 63);
  CHECK(Fp(3, 7).inverse() * Fp(3, 7) == Fp(1, 7));
  auto r = to_residue(BigRat(7), 5, 2);
  CHECK(r.inverse() * r == to_residue(BigRat(1), 5, 2));
  auto g = to_fp_series(series_rational({BigRat(1), BigRat(1, 2), BigRat(3, 8)}), 5);
  CHECK(g[2].value() == 1);
}
