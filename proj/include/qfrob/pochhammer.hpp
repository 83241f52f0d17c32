#pragma once

#include <map>
#include <vector>

#include "qfrob/madic.hpp"
#include "qfrob/ratfunc.hpp"
#include "qfrob/zqp.hpp"

namespace qfrob {

// alpha = a/b in (0, 1] together with the prime p
struct Family {
  MAdicContext ctx;
  unsigned long a = 1;
  unsigned long b = 1;

  Family() = default;
  Family(unsigned long p, const BigRat& alpha);
  BigRat alpha() const { return BigRat(BigInt(a), BigInt(b)); }
  const std::string& var() const { return var_; }

 private:
  std::string var_ = "q";
};

// multiset k -> m of factors (1 - t^k)^m
using FactorMap = std::map<std::uint64_t, long>;

// B^{(i)}(n) = prod_{k<n} (1 - t^{M(a+bk)}) / prod_{k=1}^{n} (1 - t^{M b k}), M = p^{i+1}
FactorMap pochhammer_factors(const Family& fam, int i, std::uint64_t n);
FactorMap operator+(const FactorMap& x, const FactorMap& y);
FactorMap operator-(const FactorMap& x);

// exact value of prod (1 - t^k)^{m_k}
RatFunc ratfunc_from_factors(const FactorMap& f, const std::string& var);

struct PochhammerRatio {
  MAdicContext ctx;
  int level = -1;
  std::uint64_t index = 0;
  RatFunc value;
};

PochhammerRatio pochhammer_ratio(int i, std::uint64_t n, const Family& fam);
RatFunc pochhammer_value(const Family& fam, int i, std::uint64_t n);
// image in Z_{q,p} / m^N, basis t (or q when b = 1)
ZqpElement pochhammer_zqp(const Family& fam, int i, std::uint64_t n, unsigned N);
// (alpha)_n / n!
BigRat rising_ratio(const BigRat& alpha, std::uint64_t n);

}  // namespace qfrob
