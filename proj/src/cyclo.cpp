#include "qfrob/cyclo.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

namespace qfrob {

namespace {

constexpr std::uint64_t kMod = (1ULL << 61) - 1;

inline std::uint64_t addm(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= kMod ? s - kMod : s;
}
inline std::uint64_t subm(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kMod - b; }

// cached divisor lists with their Moebius values, since the same d recur constantly
struct DivInfo {
  std::vector<std::uint64_t> plus, minus;  // e | d with mu(d/e) = +1 / -1
};

const DivInfo& div_info(std::uint64_t d) {
  static std::mutex mu;
  static std::unordered_map<std::uint64_t, DivInfo> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  DivInfo info;
  for (auto e : divisors(d)) {
    int m = mobius(d / e);
    if (m == 1) info.plus.push_back(e);
    if (m == -1) info.minus.push_back(e);
  }
  return cache.emplace(d, std::move(info)).first->second;
}

const std::vector<std::uint64_t>& cached_divisors(std::uint64_t k) {
  static std::mutex mu;
  static std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  return cache.emplace(k, divisors(k)).first->second;
}

void mul_tpm1_mod(std::vector<std::uint64_t>& c, std::size_t e) {
  std::size_t n = c.size();
  c.resize(n + e, 0);
  for (std::size_t i = n + e; i-- > 0;) {
    std::uint64_t hi = i >= e ? c[i - e] : 0;
    std::uint64_t lo = i < n ? c[i] : 0;
    c[i] = subm(hi, lo);
  }
}

bool div_tpm1_mod(std::vector<std::uint64_t>& c, std::size_t e) {
  std::size_t n = c.size();
  if (n == 0) return true;
  if (n <= e) return std::all_of(c.begin(), c.end(), [](auto x) { return x == 0; });
  for (std::size_t i = 0; i < n; ++i) c[i] = subm(i >= e ? c[i - e] : 0, c[i]);
  for (std::size_t i = n - e; i < n; ++i)
    if (c[i] != 0) return false;
  c.resize(n - e);
  return true;
}

void trim_mod(std::vector<std::uint64_t>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

bool divisible_mod(std::vector<std::uint64_t> r, std::uint64_t d) {
  const DivInfo& info = div_info(d);
  trim_mod(r);
  if (r.empty()) return true;
  for (auto e : info.minus) mul_tpm1_mod(r, e);
  for (auto e : info.plus)
    if (!div_tpm1_mod(r, e)) return false;
  return true;
}

}  // namespace

// ---- CycloExps -------------------------------------------------------------

CycloExps CycloExps::from_unsorted(const std::vector<Entry>& entries) {
  std::vector<Entry> v = entries;
  std::sort(v.begin(), v.end());
  CycloExps r;
  for (auto& [d, e] : v) {
    if (!r.v_.empty() && r.v_.back().first == d)
      r.v_.back().second += e;
    else
      r.v_.emplace_back(d, e);
  }
  std::erase_if(r.v_, [](const Entry& x) { return x.second == 0; });
  return r;
}

CycloExps exps_of_factors(const std::map<std::uint64_t, long>& factors) {
  std::vector<CycloExps::Entry> all;
  for (auto& [k, m] : factors) {
    if (m == 0) continue;
    for (auto d : cached_divisors(k)) all.emplace_back(d, m);
  }
  return CycloExps::from_unsorted(all);
}

long CycloExps::get(std::uint64_t d) const {
  auto it = std::lower_bound(v_.begin(), v_.end(), Entry{d, 0},
                             [](const Entry& a, const Entry& b) { return a.first < b.first; });
  return (it != v_.end() && it->first == d) ? it->second : 0;
}

void CycloExps::add(std::uint64_t d, long e) {
  if (e == 0) return;
  auto it = std::lower_bound(v_.begin(), v_.end(), Entry{d, 0},
                             [](const Entry& a, const Entry& b) { return a.first < b.first; });
  if (it != v_.end() && it->first == d) {
    it->second += e;
    if (it->second == 0) v_.erase(it);
  } else {
    v_.insert(it, Entry{d, e});
  }
}

void CycloExps::add_one_minus_power(std::uint64_t k, long mult) {
  if (mult == 0) return;
  CycloExps t;
  for (auto d : cached_divisors(k)) t.v_.emplace_back(d, mult);
  *this = *this + t;
}

namespace {
template <class F>
CycloExps merge(const CycloExps& a, const CycloExps& b, F f) {
  std::vector<CycloExps::Entry> out;
  const auto& x = a.entries();
  const auto& y = b.entries();
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    std::uint64_t d;
    long ea = 0, eb = 0;
    if (j >= y.size() || (i < x.size() && x[i].first < y[j].first)) {
      d = x[i].first;
      ea = x[i++].second;
    } else if (i >= x.size() || y[j].first < x[i].first) {
      d = y[j].first;
      eb = y[j++].second;
    } else {
      d = x[i].first;
      ea = x[i++].second;
      eb = y[j++].second;
    }
    long e = f(ea, eb);
    if (e != 0) out.emplace_back(d, e);
  }
  CycloExps r;
  for (auto& en : out) r.add(en.first, en.second);  // keeps invariants; out is already sorted
  return r;
}
}  // namespace

CycloExps CycloExps::operator+(const CycloExps& o) const {
  return merge(*this, o, [](long a, long b) { return a + b; });
}
CycloExps CycloExps::operator-(const CycloExps& o) const {
  return merge(*this, o, [](long a, long b) { return a - b; });
}
CycloExps CycloExps::operator-() const {
  CycloExps r = *this;
  for (auto& e : r.v_) e.second = -e.second;
  return r;
}
CycloExps CycloExps::min(const CycloExps& a, const CycloExps& b) {
  return merge(a, b, [](long x, long y) { return std::min(x, y); });
}
CycloExps CycloExps::positive_part() const {
  CycloExps r;
  for (auto& e : v_)
    if (e.second > 0) r.v_.push_back(e);
  return r;
}
CycloExps CycloExps::negative_part() const {
  CycloExps r;
  for (auto& e : v_)
    if (e.second < 0) r.v_.emplace_back(e.first, -e.second);
  return r;
}

CycloExps CycloExps::substitute(std::uint64_t k) const {
  if (k == 1) return *this;
  // Phi_d(t^l) = Phi_{dl} if l | d, else Phi_{dl} Phi_d, applied prime by prime
  CycloExps cur = *this;
  for (auto [l, mult] : factorize(k)) {
    for (int r = 0; r < mult; ++r) {
      CycloExps next;
      std::map<std::uint64_t, long> acc;
      for (auto& [d, e] : cur.v_) {
        acc[d * l] += e;
        if (d % l != 0) acc[d] += e;
      }
      for (auto& [d, e] : acc)
        if (e != 0) next.v_.emplace_back(d, e);
      cur = std::move(next);
    }
  }
  return cur;
}

std::uint64_t CycloExps::degree() const {
  std::uint64_t s = 0;
  for (auto& [d, e] : v_)
    if (e > 0) s += static_cast<std::uint64_t>(e) * euler_phi(d);
  return s;
}

std::map<std::uint64_t, long> mobius_aggregate(const CycloExps& k) {
  std::map<std::uint64_t, long> E;
  for (auto& [d, m] : k.entries()) {
    const DivInfo& info = div_info(d);
    for (auto e : info.plus) E[e] += m;
    for (auto e : info.minus) E[e] -= m;
  }
  for (auto it = E.begin(); it != E.end();) it = it->second == 0 ? E.erase(it) : std::next(it);
  return E;
}

void mul_tpow_minus1(std::vector<BigInt>& c, std::size_t e) {
  std::size_t n = c.size();
  if (n == 0) return;
  c.resize(n + e);
  for (std::size_t i = n + e; i-- > 0;) {
    if (i >= e) {
      if (i < n)
        mpz_sub(c[i].get_mpz_t(), c[i - e].get_mpz_t(), c[i].get_mpz_t());
      else
        c[i] = c[i - e];
    } else {
      mpz_neg(c[i].get_mpz_t(), c[i].get_mpz_t());
    }
  }
}

bool div_tpow_minus1(std::vector<BigInt>& c, std::size_t e) {
  std::size_t n = c.size();
  if (n == 0) return true;
  if (n <= e) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= e)
      mpz_sub(c[i].get_mpz_t(), c[i - e].get_mpz_t(), c[i].get_mpz_t());
    else
      mpz_neg(c[i].get_mpz_t(), c[i].get_mpz_t());
  }
  for (std::size_t i = n - e; i < n; ++i)
    if (c[i] != 0) return false;
  c.resize(n - e);
  return true;
}


void mul_cyclotomic_product(std::vector<BigInt>& c, const CycloExps& k) {
  if (c.empty() || k.empty()) return;
  auto E = mobius_aggregate(k);
  for (auto& [e, m] : E)
    for (long i = 0; i < m; ++i) mul_tpow_minus1(c, e);
  for (auto& [e, m] : E)
    for (long i = 0; i < -m; ++i)
      if (!div_tpow_minus1(c, e)) throw ArithError("internal: cyclotomic expansion not exact");
}

bool div_cyclotomic_product(std::vector<BigInt>& c, const CycloExps& k) {
  if (c.empty() || k.empty()) return true;
  auto E = mobius_aggregate(k);
  for (auto& [e, m] : E)
    for (long i = 0; i < -m; ++i) mul_tpow_minus1(c, e);
  for (auto& [e, m] : E)
    for (long i = 0; i < m; ++i)
      if (!div_tpow_minus1(c, e)) return false;
  return true;
}

namespace {

// prod (1 - t^e)^{E_e} mod t^L in place; c starts as 1. false on int64 overflow
bool series_passes_i64(std::vector<long long>& c, const std::map<std::uint64_t, long>& E) {
  std::size_t L = c.size();
  for (auto& [e, m] : E) {
    if (e >= L) continue;
    for (long r = 0; r < (m < 0 ? -m : m); ++r) {
      if (m > 0) {
        for (std::size_t i = L; i-- > e;)
          if (__builtin_sub_overflow(c[i], c[i - e], &c[i])) return false;
      } else {
        for (std::size_t i = e; i < L; ++i)
          if (__builtin_add_overflow(c[i], c[i - e], &c[i])) return false;
      }
    }
  }
  return true;
}

void series_passes_big(std::vector<BigInt>& c, const std::map<std::uint64_t, long>& E) {
  std::size_t L = c.size();
  for (auto& [e, m] : E) {
    if (e >= L) continue;
    for (long r = 0; r < (m < 0 ? -m : m); ++r) {
      if (m > 0) {
        for (std::size_t i = L; i-- > e;) mpz_sub(c[i].get_mpz_t(), c[i].get_mpz_t(), c[i - e].get_mpz_t());
      } else {
        for (std::size_t i = e; i < L; ++i) mpz_add(c[i].get_mpz_t(), c[i].get_mpz_t(), c[i - e].get_mpz_t());
      }
    }
  }
}

}  // namespace

std::vector<BigInt> expand_cyclotomic_product(const CycloExps& k) {
  if (k.empty()) return {1};
  for (auto& [d, e] : k.entries())
    if (e < 0) throw ArithError("expand_cyclotomic_product needs nonnegative exponents");
  // the product is a polynomial of known degree, so its power series truncated
  // just past that degree is exact; every pass then runs at the final length
  std::size_t L = k.degree() + 1;
  auto E = mobius_aggregate(k);
  long total = 0;
  for (auto& [e, m] : E) total += m;
  std::vector<BigInt> out(L);
  std::vector<long long> small(L, 0);
  small[0] = 1;
  if (series_passes_i64(small, E)) {
    for (std::size_t i = 0; i < L; ++i) out[i] = static_cast<long>(small[i]);
  } else {
    out[0] = 1;
    series_passes_big(out, E);
  }
  // t^e - 1 = -(1 - t^e)
  if (total % 2)
    for (auto& x : out) x = -x;
  return out;
}

// ---- ModImage --------------------------------------------------------------

ModImage::ModImage(const std::vector<BigInt>& c) : c_(c.size()) {
  for (std::size_t i = 0; i < c.size(); ++i) c_[i] = mpz_fdiv_ui(c[i].get_mpz_t(), kMod);
  trim_mod(c_);
}

bool ModImage::divisible_by(std::uint64_t d) const {
  if (c_.empty()) return true;
  if (c_.size() - 1 < euler_phi(d)) return false;
  // fold modulo t^d - 1 first; Phi_d divides t^d - 1
  std::vector<std::uint64_t> r(std::min<std::size_t>(d, c_.size()), 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r[i % d] = addm(r[i % d], c_[i]);
  return divisible_mod(std::move(r), d);
}

void ModImage::divide_by(std::uint64_t d) {
  const DivInfo& info = div_info(d);
  for (auto e : info.minus) mul_tpm1_mod(c_, e);
  for (auto e : info.plus) div_tpm1_mod(c_, e);
  trim_mod(c_);
}

long ModImage::multiplicity(std::uint64_t d, long cap) {
  long k = 0;
  while (k < cap && !c_.empty() && divisible_by(d)) {
    divide_by(d);
    ++k;
  }
  return k;
}

// ---- misc ------------------------------------------------------------------

std::uint64_t prime_power_base(std::uint64_t d) {
  if (d < 2) return 0;
  auto f = factorize(d);
  return f.size() == 1 ? f[0].first : 0;
}

BigInt cyclotomic_value_at_one(std::uint64_t d) {
  if (d == 1) return 0;
  std::uint64_t l = prime_power_base(d);
  return l ? BigInt(static_cast<unsigned long>(l)) : BigInt(1);
}

std::optional<CycloExps> decompose_cyclotomic(const IntPoly& P, std::size_t max_degree) {
  if (P.is_zero()) return std::nullopt;
  if (P.degree() == 0) {
    if (P.lead() == 1) return CycloExps{};
    return std::nullopt;
  }
  if (static_cast<std::size_t>(P.degree()) > max_degree) return std::nullopt;
  if (abs(P.coeff(0)) != 1 || P.lead() != 1) return std::nullopt;
  std::vector<BigInt> c = P.coeffs();
  CycloExps out;
  // phi(d) >= sqrt(d/2), so d <= 2 deg^2 covers every candidate
  std::uint64_t deg = c.size() - 1;
  std::uint64_t dmax = 2 * deg * deg + 2;
  for (std::uint64_t d = 1; d <= dmax && c.size() > 1; ++d) {
    if (euler_phi(d) > c.size() - 1) continue;
    ModImage img(c);
    long k = img.multiplicity(d, static_cast<long>(c.size()));
    if (k == 0) continue;
    CycloExps one;
    one.add(d, k);
    std::vector<BigInt> trial = c;
    if (!div_cyclotomic_product(trial, one)) continue;
    c = std::move(trial);
    out.add(d, k);
  }
  if (c.size() == 1 && abs(c[0]) == 1) {
    // a product of monic Phi_d is monic with the right sign automatically
    if (c[0] != 1) return std::nullopt;
    return out;
  }
  return std::nullopt;
}

}  // namespace qfrob
