#include "qfrob/arith.hpp"

#include <algorithm>
#include <sstream>

namespace qfrob {

// ---- small integer helpers -------------------------------------------------

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % d == 0) return n == d;
  }
  using u128 = unsigned __int128;
  auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
      if (e & 1) r = mulmod(r, a, m);
      a = mulmod(a, a, m);
      e >>= 1;
    }
    return r;
  };
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic witness set for 64-bit inputs
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> ds{1};
  for (auto [pr, e] : factorize(n)) {
    std::size_t cur = ds.size();
    std::uint64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= pr;
      for (std::size_t i = 0; i < cur; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

int mobius(std::uint64_t n) {
  int m = 1;
  for (auto [pr, e] : factorize(n)) {
    (void)pr;
    if (e > 1) return 0;
    m = -m;
  }
  return m;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t r = n;
  for (auto [pr, e] : factorize(n)) {
    (void)e;
    r = r / pr * (pr - 1);
  }
  return r;
}

long padic_val(const BigInt& x, unsigned long p) {
  if (x == 0) return -1;
  BigInt t;
  BigInt pp(p);
  return static_cast<long>(mpz_remove(t.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t()));
}

long padic_val(const BigRat& x, unsigned long p) {
  return padic_val(BigInt(x.get_num()), p) - padic_val(BigInt(x.get_den()), p);
}

BigInt ipow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

BigInt mod_floor(const BigInt& x, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

BigInt mod_inverse(const BigInt& x, const BigInt& m) {
  BigInt r;
  if (m == 1) return 0;
  if (!mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()))
    throw ArithError("element is not invertible modulo " + m.get_str());
  return r;
}

BigInt binomial(const BigInt& n, unsigned long k) {
  if (n.fits_ulong_p() && n >= 0) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n.get_ui(), k);
    return r;
  }
  BigInt r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

// ---- IntPoly ---------------------------------------------------------------

IntPoly::IntPoly(std::vector<BigInt> coeffs, std::string var) : var_(std::move(var)), c_(std::move(coeffs)) {
  normalize();
}

IntPoly IntPoly::constant(const BigInt& c, const std::string& var) {
  return IntPoly(std::vector<BigInt>{c}, var);
}

IntPoly IntPoly::monomial(const BigInt& c, std::size_t k, const std::string& var) {
  std::vector<BigInt> v(k + 1);
  v[k] = c;
  return IntPoly(std::move(v), var);
}

IntPoly IntPoly::one_minus_power(std::size_t k, const std::string& var) {
  if (k == 0) return IntPoly(var);
  std::vector<BigInt> v(k + 1);
  v[0] = 1;
  v[k] = -1;
  return IntPoly(std::move(v), var);
}

void IntPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

BigInt IntPoly::eval(const BigInt& x) const {
  BigInt r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

BigRat IntPoly::eval(const BigRat& x) const {
  BigRat r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + BigRat(*it);
  return r;
}

BigInt IntPoly::content() const {
  BigInt g = 0;
  for (const auto& c : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (c_.empty()) return *this;
  BigInt g = content();
  if (c_.back() < 0) g = -g;
  IntPoly r(var_);
  r.c_.resize(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) mpz_divexact(r.c_[i].get_mpz_t(), c_[i].get_mpz_t(), g.get_mpz_t());
  return r;
}

IntPoly IntPoly::with_var(const std::string& v) const {
  IntPoly r = *this;
  r.var_ = v;
  return r;
}

void require_same_var(const IntPoly& a, const IntPoly& b) {
  if (a.var() != b.var()) throw ArithError("variable mismatch: " + a.var() + " vs " + b.var());
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  require_same_var(*this, o);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  normalize();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  require_same_var(*this, o);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  normalize();
  return *this;
}

IntPoly& IntPoly::operator*=(const BigInt& c) {
  if (c == 0) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= c;
  return *this;
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

namespace {

std::size_t max_bits(const std::vector<BigInt>& v) {
  std::size_t b = 0;
  for (const auto& x : v) b = std::max(b, mpz_sizeinbase(x.get_mpz_t(), 2));
  return b;
}

// packs |c_i| of the given sign into w-limb slots
void pack(const std::vector<BigInt>& v, std::size_t w, int sign, BigInt& out) {
  std::vector<mp_limb_t> buf(v.size() * w, 0);
  bool any = false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    int s = sgn(v[i]);
    if (s != sign) continue;
    any = true;
    std::size_t n = mpz_size(v[i].get_mpz_t());
    for (std::size_t j = 0; j < n; ++j) buf[i * w + j] = mpz_getlimbn(v[i].get_mpz_t(), j);
  }
  if (!any) {
    out = 0;
    return;
  }
  mpz_import(out.get_mpz_t(), buf.size(), -1, sizeof(mp_limb_t), 0, 0, buf.data());
}

std::vector<BigInt> kronecker_mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  std::size_t bits = max_bits(a) + max_bits(b) + 2;
  std::size_t m = std::min(a.size(), b.size());
  while (m) {
    ++bits;
    m >>= 1;
  }
  std::size_t w = (bits + 1 + 63) / 64;
  BigInt ap, an, bp, bn;
  pack(a, w, 1, ap);
  pack(a, w, -1, an);
  pack(b, w, 1, bp);
  pack(b, w, -1, bn);
  BigInt A = ap - an, B = bp - bn;
  BigInt P = A * B;
  std::size_t outlen = a.size() + b.size() - 1;
  std::vector<BigInt> out(outlen);
  int psign = sgn(P);
  if (psign == 0) return out;
  if (psign < 0) P = -P;
  std::size_t nl = mpz_size(P.get_mpz_t());
  std::vector<mp_limb_t> buf(std::max(nl, outlen * w) + w, 0);
  for (std::size_t j = 0; j < nl; ++j) buf[j] = mpz_getlimbn(P.get_mpz_t(), j);
  BigInt half, full, slot;
  mpz_setbit(half.get_mpz_t(), w * 64 - 1);
  mpz_setbit(full.get_mpz_t(), w * 64);
  int carry = 0;
  for (std::size_t k = 0; k < outlen; ++k) {
    mpz_import(slot.get_mpz_t(), w, -1, sizeof(mp_limb_t), 0, 0, buf.data() + k * w);
    if (carry) slot += 1;
    if (slot >= half) {
      slot -= full;
      carry = 1;
    } else {
      carry = 0;
    }
    out[k] = psign > 0 ? slot : BigInt(-slot);
  }
  return out;
}

}  // namespace

std::vector<BigInt> coeff_mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  if (a.empty() || b.empty()) return {};
  if (std::min(a.size(), b.size()) >= 24) {
    auto r = kronecker_mul(a, b);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }
  std::vector<BigInt> r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  require_same_var(a, b);
  return IntPoly(coeff_mul(a.coeffs(), b.coeffs()), a.var());
}

IntPoly poly_add(const IntPoly& a, const IntPoly& b) { return a + b; }
IntPoly poly_mul(const IntPoly& a, const IntPoly& b) { return a * b; }
IntPoly poly_neg(const IntPoly& a) { return -a; }

std::string IntPoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const BigInt& c = c_[i];
    if (c == 0) continue;
    BigInt a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << a;
    } else {
      if (a != 1) os << a << "*";
      os << var_;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

IntPoly poly_exact_div(const IntPoly& a, const IntPoly& b) {
  require_same_var(a, b);
  if (b.is_zero()) throw ArithError("division by zero polynomial");
  if (a.is_zero()) return IntPoly(a.var());
  if (a.degree() < b.degree()) throw ArithError("inexact polynomial division");
  std::vector<BigInt> r = a.coeffs();
  const auto& bc = b.coeffs();
  std::size_t db = bc.size() - 1;
  std::vector<BigInt> q(r.size() - db);
  BigInt rem;
  for (std::size_t k = q.size(); k-- > 0;) {
    BigInt& top = r[k + db];
    if (top == 0) continue;
    mpz_tdiv_qr(q[k].get_mpz_t(), rem.get_mpz_t(), top.get_mpz_t(), bc[db].get_mpz_t());
    if (rem != 0) throw ArithError("inexact polynomial division");
    for (std::size_t j = 0; j <= db; ++j) mpz_submul(r[k + j].get_mpz_t(), q[k].get_mpz_t(), bc[j].get_mpz_t());
  }
  for (std::size_t i = 0; i < db; ++i)
    if (r[i] != 0) throw ArithError("inexact polynomial division");
  return IntPoly(std::move(q), a.var());
}

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  require_same_var(a, b);
  if (b.is_zero()) throw ArithError("pseudo-remainder by zero");
  std::vector<BigInt> r = a.coeffs();
  const auto& bc = b.coeffs();
  long db = b.degree();
  const BigInt& lc = bc.back();
  while (static_cast<long>(r.size()) - 1 >= db && !r.empty()) {
    std::size_t dr = r.size() - 1;
    BigInt top = r.back();
    for (auto& x : r) x *= lc;
    std::size_t shift = dr - static_cast<std::size_t>(db);
    for (std::size_t j = 0; j < bc.size(); ++j) mpz_submul(r[shift + j].get_mpz_t(), top.get_mpz_t(), bc[j].get_mpz_t());
    r.pop_back();
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
  return IntPoly(std::move(r), a.var());
}

IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
  require_same_var(a, b);
  if (a.is_zero()) return b.primitive_part() * (b.is_zero() ? BigInt(1) : b.content());
  if (b.is_zero()) return a.primitive_part() * a.content();
  BigInt c;
  mpz_gcd(c.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
  IntPoly x = a.primitive_part(), y = b.primitive_part();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    IntPoly r = pseudo_remainder(x, y);
    x = std::move(y);
    y = r.is_zero() ? r : r.primitive_part();
  }
  return x.primitive_part() * c;
}

IntPoly cyclotomic(std::uint64_t p, const std::string& var) {
  if (!is_prime(p)) throw ArithError("cyclotomic: " + std::to_string(p) + " is not prime");
  return q_bracket(p, var);
}

IntPoly cyclotomic_poly(std::uint64_t d, const std::string& var) {
  if (d == 0) throw ArithError("cyclotomic_poly: d must be positive");
  // product of (u^e - 1)^{mu(d/e)}: multiply the + factors, divide the - ones
  std::vector<BigInt> c{1};
  std::vector<std::uint64_t> neg;
  for (auto e : divisors(d)) {
    int mu = mobius(d / e);
    if (mu == 1) {
      std::vector<BigInt> n(c.size() + e);
      for (std::size_t i = 0; i < c.size(); ++i) {
        n[i + e] += c[i];
        n[i] -= c[i];
      }
      c = std::move(n);
    } else if (mu == -1) {
      neg.push_back(e);
    }
  }
  for (auto e : neg) {
    // c = (u^e - 1) * q  =>  q_i = q_{i-e} - c_i
    std::size_t qlen = c.size() - e;
    std::vector<BigInt> q(qlen);
    for (std::size_t i = 0; i < qlen; ++i) {
      q[i] = -c[i];
      if (i >= e) q[i] += q[i - e];
    }
    c = std::move(q);
  }
  return IntPoly(std::move(c), var);
}

IntPoly q_bracket(std::size_t n, const std::string& var) {
  return IntPoly(std::vector<BigInt>(n, BigInt(1)), var);
}

std::vector<BigInt> taylor_at_one(const IntPoly& P) {
  // P(1+y) by repeated synthetic division, then a_i = (-1)^i b_i
  std::vector<BigInt> c = P.coeffs();
  std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) c[j - 1] += c[j];
  for (std::size_t i = 1; i < n; i += 2) c[i] = -c[i];
  return c;
}

IntPoly from_taylor_at_one(const std::vector<BigInt>& a, const std::string& var) {
  // Horner in x = 1 - u
  IntPoly x(std::vector<BigInt>{1, -1}, var);
  IntPoly r(var);
  for (auto it = a.rbegin(); it != a.rend(); ++it) r = r * x + IntPoly::constant(*it, var);
  return r;
}

IntPoly poly_substitute(const IntPoly& P, std::size_t k) {
  if (k == 0) throw ArithError("poly_substitute: k must be positive");
  if (P.is_zero() || k == 1) return P;
  std::vector<BigInt> c(static_cast<std::size_t>(P.degree()) * k + 1);
  for (std::size_t i = 0; i < P.size(); ++i) c[i * k] = P.coeffs()[i];
  return IntPoly(std::move(c), P.var());
}

// ---- RatPoly ---------------------------------------------------------------

RatPoly::RatPoly(std::vector<BigRat> coeffs) : c_(std::move(coeffs)) { normalize(); }

RatPoly::RatPoly(const IntPoly& p) {
  c_.reserve(p.size());
  for (const auto& x : p.coeffs()) c_.emplace_back(x);
}

void RatPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
  std::vector<BigRat> r(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return RatPoly(std::move(r));
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) {
  std::vector<BigRat> r(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
  return RatPoly(std::move(r));
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return RatPoly();
  std::vector<BigRat> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  return RatPoly(std::move(r));
}

std::pair<RatPoly, RatPoly> RatPoly::divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw ArithError("RatPoly division by zero");
  std::vector<BigRat> r = a.c_;
  if (a.degree() < b.degree()) return {RatPoly(), a};
  std::size_t db = b.c_.size() - 1;
  std::vector<BigRat> q(r.size() - db);
  for (std::size_t k = q.size(); k-- > 0;) {
    q[k] = r[k + db] / b.c_[db];
    if (q[k] == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) r[k + j] -= q[k] * b.c_[j];
  }
  r.resize(db);
  return {RatPoly(std::move(q)), RatPoly(std::move(r))};
}

std::pair<BigRat, std::vector<BigInt>> RatPoly::split_content() const {
  if (c_.empty()) return {BigRat(0), {}};
  BigInt l = 1;
  for (const auto& x : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<BigInt> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i].get_num() * (l / c_[i].get_den());
  IntPoly p(v, "q");
  BigInt g = p.content();
  if (v.back() < 0) g = -g;
  for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  BigRat c(g, l);
  c.canonicalize();
  return {c, v};
}

}  // namespace qfrob
