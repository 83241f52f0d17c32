#include "qfrob/pochhammer.hpp"

#include <numeric>

namespace qfrob {

Family::Family(unsigned long p, const BigRat& alpha) {
  BigRat al = alpha;
  al.canonicalize();
  if (al <= 0 || al > 1) throw ArithError("alpha must lie in (0, 1]");
  if (!al.get_num().fits_ulong_p() || !al.get_den().fits_ulong_p()) throw ArithError("alpha too large");
  a = al.get_num().get_ui();
  b = al.get_den().get_ui();
  ctx = MAdicContext(p, b);
  var_ = ctx.var();
}

FactorMap pochhammer_factors(const Family& fam, int i, std::uint64_t n) {
  if (i < -1) throw ArithError("level must be >= -1");
  fam.ctx.require_hyp();
  std::uint64_t M = 1;
  for (int j = 0; j < i + 1; ++j) M *= fam.ctx.p;
  FactorMap f;
  for (std::uint64_t k = 0; k < n; ++k) f[M * (fam.a + fam.b * k)] += 1;
  for (std::uint64_t k = 1; k <= n; ++k) f[M * fam.b * k] -= 1;
  std::erase_if(f, [](const auto& kv) { return kv.second == 0; });
  return f;
}

FactorMap operator+(const FactorMap& x, const FactorMap& y) {
  FactorMap r = x;
  for (auto& [k, m] : y) r[k] += m;
  std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
  return r;
}

FactorMap operator-(const FactorMap& x) {
  FactorMap r = x;
  for (auto& [k, m] : r) m = -m;
  return r;
}

RatFunc ratfunc_from_factors(const FactorMap& f, const std::string& var) {
  long total = 0;
  for (auto& [k, m] : f) total += m;
  // 1 - t^k = -prod_{d|k} Phi_d
  return RatFunc::from_cyclotomic(BigRat(total % 2 ? -1 : 1), exps_of_factors(f), var);
}

PochhammerRatio pochhammer_ratio(int i, std::uint64_t n, const Family& fam) {
  PochhammerRatio r;
  r.ctx = fam.ctx;
  r.level = i;
  r.index = n;
  r.value = pochhammer_value(fam, i, n);
  if (!is_in_localization(r.value, fam.ctx)) throw std::logic_error("internal: Pochhammer ratio left the localization");
  return r;
}

RatFunc pochhammer_value(const Family& fam, int i, std::uint64_t n) {
  return ratfunc_from_factors(pochhammer_factors(fam, i, n), fam.var());
}

ZqpElement pochhammer_zqp(const Family& fam, int i, std::uint64_t n, unsigned N) {
  return zqp_from_factors(pochhammer_factors(fam, i, n), N, fam.ctx, fam.var());
}

BigRat rising_ratio(const BigRat& alpha, std::uint64_t n) {
  BigRat r = 1;
  for (std::uint64_t k = 0; k < n; ++k) r = r * (alpha + k) / BigRat(static_cast<long>(k + 1));
  r.canonicalize();
  return r;
}

}  // namespace qfrob
