#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfrob/madic.hpp"
#include "qfrob/pochhammer.hpp"
#include "qfrob/ratfunc.hpp"
#include "qfrob/zqp.hpp"

namespace qfrob {

// element of Z / p^M
class Residue {
 public:
  Residue() = default;
  Residue(const BigInt& v, unsigned long p, unsigned M);
  const BigInt& value() const { return v_; }
  const BigInt& modulus() const { return mod_; }
  unsigned long prime() const { return p_; }
  unsigned precision() const { return M_; }
  bool is_zero() const { return v_ == 0; }
  Residue operator-() const;
  friend Residue operator+(const Residue& a, const Residue& b);
  friend Residue operator-(const Residue& a, const Residue& b);
  friend Residue operator*(const Residue& a, const Residue& b);
  bool operator==(const Residue& o) const { return v_ == o.v_ && mod_ == o.mod_; }
  Residue inverse() const;
  std::string to_string() const { return v_.get_str(); }

 private:
  BigInt v_ = 0, mod_ = 1;
  unsigned long p_ = 2;
  unsigned M_ = 0;
};

// element of F_p
class Fp {
 public:
  Fp() = default;
  Fp(long long v, unsigned long p);
  std::uint64_t value() const { return v_; }
  unsigned long prime() const { return p_; }
  bool is_zero() const { return v_ == 0; }
  Fp operator-() const { return Fp(p_ - v_, p_); }
  friend Fp operator+(Fp a, Fp b) { return Fp(static_cast<long long>((a.v_ + b.v_) % a.p_), a.p_); }
  friend Fp operator-(Fp a, Fp b) { return Fp(static_cast<long long>((a.v_ + a.p_ - b.v_) % a.p_), a.p_); }
  friend Fp operator*(Fp a, Fp b) {
    return Fp(static_cast<long long>(static_cast<unsigned __int128>(a.v_) * b.v_ % a.p_), a.p_);
  }
  bool operator==(const Fp& o) const { return v_ == o.v_ && p_ == o.p_; }
  Fp inverse() const;
  std::string to_string() const { return std::to_string(v_); }

 private:
  std::uint64_t v_ = 0;
  unsigned long p_ = 2;
};

// reduction of a p-integral rational
Fp to_fp(const BigRat& x, unsigned long p);
Residue to_residue(const BigRat& x, unsigned long p, unsigned M);

// coefficient plumbing, one overload set per domain
inline bool coeff_is_zero(const RatFunc& x) { return x.is_zero(); }
inline bool coeff_is_zero(const ZqpElement& x) { return x.is_zero(); }
inline bool coeff_is_zero(const BigRat& x) { return x == 0; }
inline bool coeff_is_zero(const Residue& x) { return x.is_zero(); }
inline bool coeff_is_zero(const Fp& x) { return x.is_zero(); }

RatFunc coeff_like(const RatFunc& proto, long c);
ZqpElement coeff_like(const ZqpElement& proto, long c);
BigRat coeff_like(const BigRat& proto, long c);
Residue coeff_like(const Residue& proto, long c);
Fp coeff_like(const Fp& proto, long c);

RatFunc coeff_inverse(const RatFunc& x);
ZqpElement coeff_inverse(const ZqpElement& x);
BigRat coeff_inverse(const BigRat& x);
Residue coeff_inverse(const Residue& x);
Fp coeff_inverse(const Fp& x);

std::string coeff_to_string(const RatFunc& x);
std::string coeff_to_string(const ZqpElement& x);
std::string coeff_to_string(const BigRat& x);
std::string coeff_to_string(const Residue& x);
std::string coeff_to_string(const Fp& x);

// sum of products sum_k a_k * b_k
RatFunc coeff_dot(const std::vector<const RatFunc*>& a, const std::vector<const RatFunc*>& b, const RatFunc& proto);
template <class C>
C coeff_dot(const std::vector<const C*>& a, const std::vector<const C*>& b, const C& proto) {
  C s = coeff_like(proto, 0);
  for (std::size_t k = 0; k < a.size(); ++k) s = s + (*a[k]) * (*b[k]);
  return s;
}

// f = sum_{n < D} c_n z^n + O(z^D)
template <class C>
class TruncSeries {
 public:
  TruncSeries() = default;
  // proto fixes the coefficient context (variable, prime, precision)
  TruncSeries(std::vector<C> c, C proto) : c_(std::move(c)), proto_(coeff_like(proto, 0)) {}
  static TruncSeries zero(std::size_t D, const C& proto) {
    return TruncSeries(std::vector<C>(D, coeff_like(proto, 0)), proto);
  }
  static TruncSeries constant(std::size_t D, const C& c) {
    auto f = zero(D, c);
    if (D > 0) f.c_[0] = c;
    return f;
  }

  std::size_t degree_bound() const { return c_.size(); }
  const C& operator[](std::size_t n) const { return c_.at(n); }
  C& operator[](std::size_t n) { return c_.at(n); }
  const std::vector<C>& coeffs() const { return c_; }
  const C& proto() const { return proto_; }
  bool is_zero() const {
    for (auto& x : c_)
      if (!coeff_is_zero(x)) return false;
    return true;
  }
  TruncSeries truncate(std::size_t D) const {
    if (D > c_.size()) throw ArithError("cannot extend a truncated series");
    return TruncSeries(std::vector<C>(c_.begin(), c_.begin() + D), proto_);
  }
  // coefficients past the end are known to be zero (finite sums)
  TruncSeries extend_polynomial(std::size_t D) const {
    std::vector<C> c = c_;
    c.resize(std::max(D, c.size()), coeff_like(proto_, 0));
    c.resize(D, coeff_like(proto_, 0));
    return TruncSeries(std::move(c), proto_);
  }
  bool operator==(const TruncSeries& o) const { return c_ == o.c_; }
  std::string to_string(std::size_t max_terms = 8) const {
    std::string s;
    for (std::size_t n = 0; n < c_.size() && n < max_terms; ++n) {
      if (coeff_is_zero(c_[n])) continue;
      if (!s.empty()) s += " + ";
      s += "(" + coeff_to_string(c_[n]) + ")";
      if (n > 0) s += "*z^" + std::to_string(n);
    }
    if (s.empty()) s = "0";
    return s + " + O(z^" + std::to_string(c_.size()) + ")";
  }

 private:
  std::vector<C> c_;
  C proto_{};
};

using RSeries = TruncSeries<RatFunc>;
using ZSeries = TruncSeries<ZqpElement>;
using QSeries = TruncSeries<BigRat>;
using ResSeries = TruncSeries<Residue>;
using FpSeries = TruncSeries<Fp>;

template <class C>
TruncSeries<C> series_add(const TruncSeries<C>& f, const TruncSeries<C>& g) {
  std::size_t D = std::min(f.degree_bound(), g.degree_bound());
  std::vector<C> c;
  c.reserve(D);
  for (std::size_t n = 0; n < D; ++n) c.push_back(f[n] + g[n]);
  return TruncSeries<C>(std::move(c), f.proto());
}

template <class C>
TruncSeries<C> series_neg(const TruncSeries<C>& f) {
  std::vector<C> c;
  for (auto& x : f.coeffs()) c.push_back(-x);
  return TruncSeries<C>(std::move(c), f.proto());
}

template <class C>
TruncSeries<C> series_sub(const TruncSeries<C>& f, const TruncSeries<C>& g) {
  return series_add(f, series_neg(g));
}

template <class C>
TruncSeries<C> series_scale(const TruncSeries<C>& f, const C& k) {
  std::vector<C> c;
  for (auto& x : f.coeffs()) c.push_back(coeff_is_zero(x) ? x : x * k);
  return TruncSeries<C>(std::move(c), f.proto());
}

template <class C>
TruncSeries<C> series_mul(const TruncSeries<C>& f, const TruncSeries<C>& g) {
  std::size_t D = std::min(f.degree_bound(), g.degree_bound());
  std::vector<std::size_t> nf, ng;
  for (std::size_t i = 0; i < D; ++i) {
    if (!coeff_is_zero(f[i])) nf.push_back(i);
    if (!coeff_is_zero(g[i])) ng.push_back(i);
  }
  std::vector<C> c;
  c.reserve(D);
  for (std::size_t n = 0; n < D; ++n) {
    std::vector<const C*> a, b;
    for (auto i : nf) {
      if (i > n) break;
      if (!coeff_is_zero(g[n - i])) {
        a.push_back(&f[i]);
        b.push_back(&g[n - i]);
      }
    }
    c.push_back(coeff_dot(a, b, f.proto()));
  }
  return TruncSeries<C>(std::move(c), f.proto());
}

template <class C>
TruncSeries<C> invert_series(const TruncSeries<C>& f) {
  std::size_t D = f.degree_bound();
  if (D == 0) return f;
  if (coeff_is_zero(f[0])) throw ArithError("series constant term is not invertible");
  C g0 = coeff_inverse(f[0]);
  std::vector<std::size_t> nz;
  for (std::size_t j = 1; j < D; ++j)
    if (!coeff_is_zero(f[j])) nz.push_back(j);
  std::vector<C> g;
  g.reserve(D);
  g.push_back(g0);
  for (std::size_t n = 1; n < D; ++n) {
    std::vector<const C*> a, b;
    for (auto j : nz) {
      if (j > n) break;
      if (!coeff_is_zero(g[n - j])) {
        a.push_back(&f[j]);
        b.push_back(&g[n - j]);
      }
    }
    C s = coeff_dot(a, b, f.proto());
    g.push_back(coeff_is_zero(s) ? s : -(g0 * s));
  }
  return TruncSeries<C>(std::move(g), f.proto());
}

// c_n -> c_n q^n
RSeries sigma_q(const RSeries& f, const MAdicContext& ctx);
ZSeries sigma_q(const ZSeries& f);
// c_n -> c_n [n]_q
RSeries delta_q(const RSeries& f, const MAdicContext& ctx);
ZSeries delta_q(const ZSeries& f);
// z^n -> z^{n p^h} with F_q^h on coefficients; out_D defaults to D p^h,
// the range where the result is still exact
RSeries frobenius_series(const RSeries& f, unsigned h, const MAdicContext& ctx, std::size_t out_D = 0);
ZSeries frobenius_series(const ZSeries& f, unsigned h, std::size_t out_D = 0);
QSeries frobenius_series(const QSeries& f, unsigned long p, unsigned h, std::size_t out_D = 0);
// t -> 1; ArithError naming the z-degree on a pole
QSeries ev_series(const RSeries& f);
ResSeries ev_series(const ZSeries& f);
// min coefficient valuation of the truncation
Valuation gauss_valuation(const RSeries& f, const MAdicContext& ctx);
Valuation gauss_valuation(const ZSeries& f);

// sum of B^{(-1)}(n) z^n for n < D
RSeries f_alpha_series(std::size_t D, const Family& fam);
ZSeries f_alpha_series_zqp(std::size_t D, const Family& fam, unsigned N);
// F_s = sum_{n < p^s} B^{(-1)}(n) z^n, padded with zeros to out_D (>= p^s)
RSeries partial_sum_F_s(unsigned s, const Family& fam, std::size_t out_D = 0, std::size_t cap = 100000);
ZSeries partial_sum_F_s_zqp(unsigned s, const Family& fam, unsigned N, std::size_t out_D = 0,
                            std::size_t cap = 100000);

QSeries series_rational(const std::vector<BigRat>& c);
FpSeries to_fp_series(const QSeries& f, unsigned long p);
ZSeries embed_series(const RSeries& f, unsigned N, const MAdicContext& ctx);

}  // namespace qfrob
