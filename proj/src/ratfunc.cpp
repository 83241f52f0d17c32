#include "qfrob/ratfunc.hpp"

#include <sstream>

namespace qfrob {

namespace {

void trim(std::vector<BigInt>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

// splits c into (content with sign of leading coefficient, primitive part)
BigInt make_primitive(std::vector<BigInt>& c) {
  BigInt g = 0;
  for (const auto& x : c) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  if (c.back() < 0) g = -g;
  if (g != 1)
    for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return g;
}

bool is_unit_vec(const std::vector<BigInt>& c) { return c.size() == 1 && c[0] == 1; }

}  // namespace

void require_same_var(const RatFunc& a, const RatFunc& b) {
  if (a.var() != b.var()) throw ArithError("variable mismatch: " + a.var() + " vs " + b.var());
}

RatFunc::RatFunc(const BigRat& c, std::string var) : var_(std::move(var)), scale_(c), num_{1} {}

RatFunc::RatFunc(const IntPoly& p) : var_(p.var()), scale_(0), num_{1} {
  if (p.is_zero()) return;
  std::vector<BigInt> c = p.coeffs();
  BigInt g = make_primitive(c);
  *this = make_fast(BigRat(g), std::move(c), CycloExps{}, p.var());
}

RatFunc RatFunc::make_fast(BigRat scale, std::vector<BigInt> num, CycloExps exps, std::string var) {
  RatFunc r;
  r.var_ = std::move(var);
  trim(num);
  if (scale == 0 || num.empty()) return r;
  BigInt g = make_primitive(num);
  scale *= g;
  r.scale_ = std::move(scale);
  r.num_ = std::move(num);
  r.cyc_ = std::move(exps);
  r.cancel();
  return r;
}

RatFunc RatFunc::make_generic(const BigRat& scale, const IntPoly& num, const IntPoly& den) {
  RatFunc r = normalize(num, den);
  if (scale != 1) r.scale_ *= scale;
  if (r.scale_ == 0) return RatFunc(BigRat(0), num.var());
  return r;
}

RatFunc RatFunc::normalize(const IntPoly& num, const IntPoly& den) {
  require_same_var(num, den);
  if (den.is_zero()) throw ArithError("zero denominator");
  if (num.is_zero()) return RatFunc(BigRat(0), num.var());
  IntPoly g = poly_gcd(num, den);
  IntPoly n = num, d = den;
  if (g.degree() > 0) {
    n = poly_exact_div(num, g);
    d = poly_exact_div(den, g);
  }
  std::vector<BigInt> nc = n.coeffs(), dc = d.coeffs();
  BigInt gn = make_primitive(nc), gd = make_primitive(dc);
  BigRat scale(gn, gd);
  scale.canonicalize();
  RatFunc r;
  r.var_ = num.var();
  r.scale_ = scale;
  r.num_ = std::move(nc);
  if (dc.size() == 1) return r;
  if (auto ex = decompose_cyclotomic(IntPoly(dc, num.var()))) {
    r.cyc_ = -*ex;
    return r;
  }
  r.den_ = std::move(dc);
  return r;
}

RatFunc RatFunc::from_cyclotomic(const BigRat& scale, const CycloExps& exps, const std::string& var) {
  RatFunc r;
  r.var_ = var;
  if (scale == 0) return r;
  r.scale_ = scale;
  r.cyc_ = exps;
  return r;
}

RatFunc RatFunc::one_minus_power(std::uint64_t k, const std::string& var) {
  if (k == 0) return RatFunc(BigRat(0), var);
  CycloExps e;
  e.add_one_minus_power(k, 1);
  return from_cyclotomic(BigRat(-1), e, var);
}

RatFunc RatFunc::monomial(const BigRat& c, std::uint64_t k, const std::string& var) {
  RatFunc r(c, var);
  return r.mul_monomial(k);
}

bool RatFunc::is_one() const { return scale_ == 1 && is_unit_vec(num_) && cyc_.empty() && !is_generic(); }

void RatFunc::cancel() {
  if (num_.size() <= 1 || cyc_.empty()) return;
  CycloExps neg = cyc_.negative_part();
  if (neg.empty()) return;
  ModImage img(num_);
  CycloExps found;
  for (auto& [d, e] : neg.entries()) {
    long k = img.multiplicity(d, e);
    if (k) found.add(d, k);
  }
  if (found.empty()) return;
  std::vector<BigInt> trial = num_;
  if (div_cyclotomic_product(trial, found)) {
    num_ = std::move(trial);
    cyc_ = cyc_ + found;
    return;
  }
  // the modular filter gave a false positive somewhere; go factor by factor
  for (auto& [d, k] : found.entries()) {
    for (long i = 0; i < k; ++i) {
      CycloExps one;
      one.add(d, 1);
      std::vector<BigInt> t = num_;
      if (!div_cyclotomic_product(t, one)) break;
      num_ = std::move(t);
      cyc_.add(d, 1);
    }
  }
}

void RatFunc::expand(IntPoly& n, IntPoly& d) const {
  std::vector<BigInt> nc = num_;
  mul_cyclotomic_product(nc, cyc_.positive_part());
  std::vector<BigInt> dc = den_;
  mul_cyclotomic_product(dc, cyc_.negative_part());
  n = IntPoly(std::move(nc), var_);
  d = IntPoly(std::move(dc), var_);
}

IntPoly RatFunc::numerator() const {
  if (is_zero()) return IntPoly(var_);
  IntPoly n, d;
  expand(n, d);
  return scale_ < 0 ? -n : n;
}

IntPoly RatFunc::denominator() const {
  if (is_zero()) return IntPoly::constant(1, var_);
  IntPoly n, d;
  expand(n, d);
  return d;
}

std::size_t RatFunc::numerator_degree() const {
  if (is_zero()) return 0;
  return num_.size() - 1 + cyc_.positive_part().degree();
}

std::size_t RatFunc::denominator_degree() const { return den_.size() - 1 + cyc_.negative_part().degree(); }

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.scale_ = -r.scale_;
  return r;
}

RatFunc RatFunc::scaled(const BigRat& c) const {
  if (c == 0) return RatFunc(BigRat(0), var_);
  RatFunc r = *this;
  r.scale_ *= c;
  return r;
}

RatFunc RatFunc::sum(const std::vector<RatFunc>& terms) {
  std::vector<const RatFunc*> nz;
  std::string var = terms.empty() ? "t" : terms.front().var();
  bool generic = false;
  for (const auto& t : terms) {
    if (t.var() != var) throw ArithError("variable mismatch: " + var + " vs " + t.var());
    if (t.is_zero()) continue;
    nz.push_back(&t);
    generic |= t.is_generic();
  }
  if (nz.empty()) return RatFunc(BigRat(0), var);
  if (nz.size() == 1) return *nz[0];
  if (generic) {
    // rare path: plain fraction arithmetic on expanded forms
    RatFunc acc(BigRat(0), var);
    for (const RatFunc* t : nz) {
      if (acc.is_zero()) {
        acc = *t;
        continue;
      }
      IntPoly an, ad, bn, bd;
      acc.expand(an, ad);
      t->expand(bn, bd);
      BigInt L;
      mpz_lcm(L.get_mpz_t(), acc.scale_.get_den_mpz_t(), t->scale_.get_den_mpz_t());
      BigInt ma = acc.scale_.get_num() * (L / acc.scale_.get_den());
      BigInt mb = t->scale_.get_num() * (L / t->scale_.get_den());
      IntPoly top = an * bd * ma + bn * ad * mb;
      acc = make_generic(BigRat(BigInt(1), L), top, ad * bd);
    }
    return acc;
  }
  if (nz.size() > 2) {
    // pairwise: cofactors stay local to each half, much cheaper than one common denominator
    std::size_t mid = nz.size() / 2;
    std::vector<RatFunc> lo, hi;
    for (std::size_t i = 0; i < nz.size(); ++i) (i < mid ? lo : hi).push_back(*nz[i]);
    return sum({sum(lo), sum(hi)});
  }
  CycloExps emin = nz[0]->cyc_;
  // absent entries count as 0, so positive exponents survive only when shared by all terms
  for (std::size_t i = 1; i < nz.size(); ++i) emin = CycloExps::min(emin, nz[i]->cyc_);
  BigInt L = 1;
  for (const RatFunc* t : nz) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), t->scale_.get_den_mpz_t());
  std::vector<BigInt> total;
  for (const RatFunc* t : nz) {
    std::vector<BigInt> c = t->num_;
    mul_cyclotomic_product(c, t->cyc_ - emin);
    BigInt m = t->scale_.get_num() * (L / t->scale_.get_den());
    if (c.size() > total.size()) total.resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) mpz_addmul(total[i].get_mpz_t(), c[i].get_mpz_t(), m.get_mpz_t());
  }
  trim(total);
  if (total.empty()) return RatFunc(BigRat(0), var);
  BigInt g = make_primitive(total);
  BigRat scale(g, L);
  scale.canonicalize();
  RatFunc r;
  r.var_ = var;
  r.scale_ = scale;
  r.num_ = std::move(total);
  r.cyc_ = std::move(emin);
  r.cancel();
  return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) { return RatFunc::sum({a, b}); }
RatFunc operator-(const RatFunc& a, const RatFunc& b) { return RatFunc::sum({a, -b}); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  require_same_var(a, b);
  if (a.is_zero() || b.is_zero()) return RatFunc(BigRat(0), a.var());
  if (!a.is_generic() && !b.is_generic()) {
    RatFunc r;
    r.var_ = a.var_;
    r.scale_ = a.scale_ * b.scale_;
    r.cyc_ = a.cyc_ + b.cyc_;
    if (is_unit_vec(a.num_)) {
      r.num_ = b.num_;
    } else if (is_unit_vec(b.num_)) {
      r.num_ = a.num_;
    } else {
      r.num_ = coeff_mul(a.num_, b.num_);
    }
    // cross cancellation only: each core is already coprime to its own poles
    if (!is_unit_vec(a.num_) && !is_unit_vec(b.num_)) {
      r.cancel();
    } else if (!is_unit_vec(r.num_)) {
      r.cancel();
    }
    return r;
  }
  IntPoly an, ad, bn, bd;
  a.expand(an, ad);
  b.expand(bn, bd);
  return RatFunc::make_generic(a.scale_ * b.scale_, an * bn, ad * bd);
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw ArithError("inverse of zero");
  if (is_pure()) {
    RatFunc r = *this;
    r.scale_ = 1 / scale_;
    r.cyc_ = -cyc_;
    return r;
  }
  IntPoly n, d;
  expand(n, d);
  return make_generic(1 / scale_, d, n);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  require_same_var(a, b);
  return a * b.inverse();
}

bool RatFunc::operator==(const RatFunc& o) const {
  if (var_ != o.var_) return false;
  if (scale_ == o.scale_ && num_ == o.num_ && cyc_ == o.cyc_ && den_ == o.den_) return true;
  return (*this - o).is_zero();
}

RatFunc RatFunc::mul_monomial(std::uint64_t k) const {
  if (k == 0 || is_zero()) return *this;
  RatFunc r = *this;
  r.num_.insert(r.num_.begin(), k, BigInt(0));
  return r;
}

RatFunc RatFunc::substitute(std::uint64_t k) const {
  if (k == 0) throw ArithError("substitute: k must be positive");
  if (k == 1 || is_zero()) return *this;
  RatFunc r = *this;
  r.num_ = poly_substitute(IntPoly(num_, var_), k).coeffs();
  r.den_ = poly_substitute(IntPoly(den_, var_), k).coeffs();
  r.cyc_ = cyc_.substitute(k);
  return r;
}

BigRat RatFunc::eval_at_one() const {
  if (is_zero()) return 0;
  BigInt n1 = 0;
  for (const auto& c : num_) n1 += c;
  BigInt d1 = 0;
  for (const auto& c : den_) d1 += c;
  long e1 = cyc_.get(1);
  if (e1 > 0 || (n1 == 0 && d1 != 0)) return 0;
  if (e1 < 0 || d1 == 0) throw ArithError("pole at " + var_ + " = 1");
  BigRat r = scale_ * BigRat(n1, d1);
  r.canonicalize();
  for (auto& [d, e] : cyc_.entries()) {
    if (d == 1) continue;
    BigInt v = cyclotomic_value_at_one(d);
    if (v == 1) continue;
    BigInt pw = ipow(v, static_cast<unsigned long>(e > 0 ? e : -e));
    if (e > 0)
      r *= pw;
    else
      r /= pw;
  }
  return r;
}

std::string RatFunc::to_string() const {
  if (is_zero()) return "0";
  IntPoly n, d;
  expand(n, d);
  std::ostringstream os;
  bool has_den = d.degree() > 0;
  bool unit_num = n.degree() == 0;
  if (unit_num) {
    os << scale_.get_str();
  } else {
    if (scale_ != 1) os << (scale_ == -1 ? std::string("-") : scale_.get_str() + "*");
    os << "(" << n.to_string() << ")";
  }
  if (has_den) os << "/(" << d.to_string() << ")";
  return os.str();
}

}  // namespace qfrob
