#include <doctest.h>

#include <random>

#include "qfrob/madic.hpp"
#include "qfrob/pochhammer.hpp"
#include "qfrob/zqp.hpp"

using namespace qfrob;

namespace {
IntPoly P(std::vector<long> c, const std::string& v = "q") {
  std::vector<BigInt> b;
  for (long x : c) b.emplace_back(x);
  return IntPoly(b, v);
}

IntPoly random_poly(std::mt19937_64& rng, unsigned long p, std::size_t maxdeg = 8) {
  std::vector<BigInt> c(1 + rng() % (maxdeg + 1));
  for (auto& x : c) {
    long v = static_cast<long>(rng() % 41) - 20;
    // bias towards p-divisible coefficients so higher valuations show up
    if (rng() % 3 == 0) v *= static_cast<long>(p);
    x = v;
  }
  return IntPoly(c, "q");
}

std::vector<BigInt> D(std::vector<long> c) {
  std::vector<BigInt> b;
  for (long x : c) b.emplace_back(x);
  return b;
}
}  // namespace

TEST_CASE("valuation_poly examples") {
  MAdicContext c5(5);
  CHECK(valuation_poly(P({5}), c5) == Valuation(1));
  CHECK(valuation_poly(P({1, -1}), c5) == Valuation(1));
  CHECK(valuation_poly(P({0}), c5).is_infinite());
  CHECK(valuation_poly(IntPoly::one_minus_power(25), c5) == Valuation(3));
  CHECK(valuation_poly(IntPoly::one_minus_power(9), MAdicContext(3)) == Valuation(3));
}

TEST_CASE("valuation_ratfunc examples") {
  MAdicContext c5(5);
  RatFunc one_minus_q(P({1, -1}));
  RatFunc five(BigRat(5), "q");
  CHECK(valuation_ratfunc(one_minus_q / five, c5) == Valuation(0));
  CHECK(valuation_ratfunc(RatFunc::one_minus_power(5, "q") / five, c5) == Valuation(1));
  CHECK(valuation_ratfunc(RatFunc(BigRat(1), "q"), c5) == Valuation(0));
  CHECK(valuation_ratfunc(RatFunc(BigRat(0), "q"), c5).is_infinite());
  CHECK(valuation_ratfunc(five.inverse(), c5) == Valuation(-1));
}

TEST_CASE("localization membership") {
  MAdicContext c5(5);
  auto x = RatFunc(P({1, -1}, "t")) / RatFunc(P({1, 0, -1}, "t"));
  CHECK(is_in_localization(x, c5));
  CHECK_FALSE(is_in_localization(RatFunc(BigRat(1, 5)), c5));
  CHECK(is_in_localization(RatFunc(cyclotomic(5)) / RatFunc(P({1, 1})), c5));
  CHECK_FALSE(is_in_localization(RatFunc(P({1})) / RatFunc(P({1, -1})), c5));
}

TEST_CASE("m-power and cyclotomic congruence predicates") {
  MAdicContext c5(5);
  CHECK(check_mod_m_power(RatFunc(P({5, -5})), 2, c5));
  CHECK_FALSE(check_mod_m_power(RatFunc(P({1, -1})), 2, c5));
  CHECK(check_mod_m_power(RatFunc(P({0})), 7, c5));
  CHECK(check_mod_cyclotomic(RatFunc(cyclotomic(5) * P({1, 1})), c5));
  CHECK_FALSE(check_mod_cyclotomic(RatFunc(P({1, -1})), c5));
  CHECK(check_mod_cyclotomic(RatFunc::one_minus_power(5, "q"), c5));
}

TEST_CASE("product identity self-test") {
  CHECK(product_identity_check(1, MAdicContext(5)));
  CHECK(product_identity_check(3, MAdicContext(2)));
  CHECK(product_identity_check(2, MAdicContext(3)));
}

TEST_CASE("context validation") {
  CHECK_THROWS_AS(MAdicContext(4), ArithError);
  CHECK_THROWS_AS(MAdicContext(5, 5), ArithError);
  CHECK(MAdicContext(7, 3).hyp_ok);
  CHECK_FALSE(MAdicContext(5, 3).hyp_ok);
  CHECK_THROWS_AS(MAdicContext(5, 3).require_hyp(), HypothesisError);
}

TEST_CASE("valuation properties on random polynomials") {
  std::mt19937_64 rng(11);
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
    MAdicContext ctx(p);
    for (int trial = 0; trial < 60; ++trial) {
      IntPoly A = random_poly(rng, p), B = random_poly(rng, p);
      if (A.is_zero() || B.is_zero()) continue;
      Valuation va = valuation_poly(A, ctx), vb = valuation_poly(B, ctx);
      CHECK(valuation_poly(A * B, ctx) == va + vb);
      CHECK(valuation_poly(A + B, ctx) >= vmin(va, vb));
      // ev contraction
      BigInt at1 = A.eval(BigInt(1));
      if (at1 != 0) CHECK(Valuation(padic_val(at1, p)) >= va);
      // Frobenius contraction
      CHECK(valuation_poly(poly_substitute(A, p), ctx) >= va);
      // membership oracle straight from the m^n basis
      auto a = taylor_at_one(A);
      for (long n = 0; n <= 6; ++n) {
        bool member = true;
        for (long i = 0; i < n && i < static_cast<long>(a.size()); ++i)
          if (a[i] % ipow(BigInt(p), static_cast<unsigned long>(n - i)) != 0) member = false;
        CHECK(va.at_least(n) == member);
      }
    }
  }
}

TEST_CASE("reduce examples") {
  MAdicContext c5(5);
  CHECK(reduce(P({0, 1}), 3, c5).digits() == D({1, 24, 0}));
  CHECK(reduce(P({0}), 3, c5).is_zero());
  CHECK(reduce(cyclotomic(5), 2, c5).digits() == D({5, 0}));
}

TEST_CASE("zqp ring examples") {
  MAdicContext c5(5);
  auto x = reduce(P({3, 1, 4}), 4, c5);
  CHECK(x * ZqpElement::one(c5, 4) == x);
  auto u = reduce(P({1, -1}), 4, c5);
  CHECK((u * u).digits() == D({0, 0, 1, 0}));
  CHECK((reduce(P({5}), 2, c5) * reduce(P({1, -1}), 2, c5)).is_zero());
  // precision is the minimum of the operands
  CHECK((x + reduce(P({1}), 2, c5)).precision() == 2);
  CHECK_THROWS(x + reduce(P({1}), 4, MAdicContext(7)));
}

TEST_CASE("zqp inversion") {
  MAdicContext c5(5);
  CHECK(zqp_invert(ZqpElement::one(c5, 5)) == ZqpElement::one(c5, 5));
  auto y = reduce(P({1, 1}), 4, c5);
  CHECK(zqp_invert(y) * y == ZqpElement::one(c5, 4));
  CHECK_THROWS(zqp_invert(reduce(P({5}), 4, c5)));
  CHECK_THROWS(zqp_invert(reduce(P({1, -1}), 4, c5)));
}

TEST_CASE("p-adic digits") {
  auto d = padic_digits(BigInt(1), BigInt(2), 5, 3);
  CHECK(d.s == std::vector<unsigned long>{3, 2, 2});
  CHECK(padic_digits(BigInt(0), BigInt(3), 7, 4).s == std::vector<unsigned long>{0, 0, 0, 0});
  CHECK(padic_digits(BigInt(1), BigInt(1), 5, 3).s == std::vector<unsigned long>{1, 0, 0});
  CHECK_THROWS(padic_digits(BigInt(1), BigInt(5), 5, 3));
  for (std::size_t k = 1; k <= 6; ++k) {
    auto e = padic_digits(BigInt(2), BigInt(3), 7, k);
    CHECK(mod_floor(3 * e.partial(k - 1) - 2, ipow(BigInt(7), k)) == 0);
  }
}

TEST_CASE("q_power_beta") {
  MAdicContext c5(5);
  CHECK(q_power_beta(padic_digits(BigInt(1), BigInt(1), 5, 6), 4, c5) == reduce(P({0, 1}), 4, c5));
  auto half = q_power_beta(padic_digits(BigInt(1), BigInt(2), 5, 6), 4, c5);
  CHECK(half * half == reduce(P({0, 1}), 4, c5));
  // the t-backend image of t with q = t^2
  MAdicContext c52(5, 2);
  auto half2 = q_power_beta(padic_digits(BigInt(1), BigInt(2), 5, 6), 4, c52);
  CHECK(half2.digits() == half.digits());
  CHECK(embed(RatFunc(P({0, 1}, "t")), 4, c52, "q") == half2);
  CHECK(zqp_ev(half) == 1);
  // F(q^beta) = q^{beta p}
  auto five_halves = q_power_beta(padic_digits(BigInt(5), BigInt(2), 5, 8), 4, c5);
  CHECK(zqp_frobenius(half) == five_halves);
  CHECK(zqp_ev(zqp_frobenius(half)) == 1);
}

TEST_CASE("digit series is a root of q^a") {
  for (auto [p, a, b] : {std::tuple{5ul, 1l, 2l}, std::tuple{7ul, 2l, 3l}, std::tuple{13ul, 5l, 4l}}) {
    MAdicContext ctx(p);
    for (unsigned N = 1; N <= 8; ++N) {
      auto r = q_power_beta(padic_digits(BigInt(a), BigInt(b), p, N + 2), N, ctx);
      CHECK(r.pow(static_cast<unsigned long>(b)) == reduce(IntPoly::monomial(BigInt(1), a), N, ctx));
    }
  }
}

TEST_CASE("frobenius and ev on random elements") {
  std::mt19937_64 rng(5);
  for (unsigned long p : {3ul, 5ul, 7ul}) {
    MAdicContext ctx(p);
    for (int trial = 0; trial < 30; ++trial) {
      auto A = random_poly(rng, p), B = random_poly(rng, p);
      unsigned N = 1 + rng() % 6;
      auto x = reduce(A, N, ctx), y = reduce(B, N, ctx);
      CHECK(reduce(A * B, N, ctx) == x * y);
      CHECK(reduce(A + B, N, ctx) == x + y);
      CHECK(zqp_frobenius(x) == reduce(poly_substitute(A, p), N, ctx));
      CHECK(zqp_ev(zqp_frobenius(x)) == zqp_ev(x));
      auto diff = zqp_frobenius(x) - x.pow(p);
      CHECK(diff.digits()[0] % p == 0);
      CHECK(zqp_frobenius(x).valuation() >= x.valuation());
    }
  }
}

TEST_CASE("division helpers lose one unit of precision") {
  MAdicContext c5(5);
  auto x = reduce(P({1, -1}) * P({2, 7, 1}), 4, c5);
  auto y = x.div_one_minus_u();
  CHECK(y.precision() == 3);
  CHECK(y == reduce(P({2, 7, 1}), 3, c5));
  auto z = reduce(P({10, 5}), 3, c5).div_p();
  CHECK(z == reduce(P({2, 1}), 2, c5));
}

TEST_CASE("zqp_from_factors matches the exact backend") {
  MAdicContext c5(5);
  FactorMap f{{1, 1}, {5, 2}, {10, -1}, {2, -1}};
  auto exact = ratfunc_from_factors(f, "q");
  for (unsigned N = 1; N <= 5; ++N) CHECK(zqp_from_factors(f, N, c5, "q") == embed(exact, N, c5, "q"));
  // (1-q)/(1-q^5) has a pole in the completion
  CHECK_THROWS(zqp_from_factors(FactorMap{{1, 1}, {5, -1}, {2, -2}}, 3, c5, "q"));
}

TEST_CASE("pochhammer values agree across backends") {
  for (auto [p, alpha] : {std::pair{5ul, BigRat(1, 2)}, std::pair{7ul, BigRat(1, 3)}, std::pair{7ul, BigRat(2, 3)},
                          std::pair{5ul, BigRat(1)}}) {
    Family fam(p, alpha);
    for (std::uint64_t n = 0; n <= 12; ++n)
      for (unsigned N = 1; N <= 5; ++N) {
        auto exact = embed(pochhammer_value(fam, -1, n), N, fam.ctx, fam.var());
        CHECK(pochhammer_zqp(fam, -1, n, N) == exact);
      }
  }
}

TEST_CASE("pochhammer from the digit series of q^alpha") {
  // p = 13, alpha = 1/2: every q-bracket [k] with k <= 12 is a unit, so the
  // quotient prod [alpha + k] / prod [k + 1] only inverts units
  Family fam(13, BigRat(1, 2));
  const MAdicContext& cq = fam.ctx;
  for (unsigned N = 1; N <= 5; ++N) {
    auto qa = q_power_beta(padic_digits(BigInt(1), BigInt(2), 13, N + 3), N + 1, cq);
    auto val = ZqpElement::one(cq, N);
    for (std::uint64_t n = 1; n <= 12; ++n) {
      auto num = (ZqpElement::one(cq, N + 1) - qa * reduce(IntPoly::monomial(BigInt(1), n - 1), N + 1, cq))
                     .div_one_minus_u();
      auto den = reduce(q_bracket(n), N, cq);
      val = val * num * zqp_invert(den);
      CHECK(t_to_q_basis(embed(pochhammer_value(fam, -1, n), N, fam.ctx, "t")) == val);
    }
  }
}
