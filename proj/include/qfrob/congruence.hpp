#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qfrob/qseries.hpp"

namespace qfrob {

enum class CertificateKind { ExactDivisibility, ValuationBound };
std::string to_string(CertificateKind k);

struct CoefficientCertificate {
  std::size_t index = 0;
  CertificateKind kind = CertificateKind::ValuationBound;
  Valuation residual_valuation;
  bool pass = false;
};

struct CongruenceReport {
  std::string identity;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<CoefficientCertificate> coefficients;
  // indices that could not get the exact certificate
  std::vector<std::size_t> fallbacks;
  bool pass = false;
};

struct DworkCell {
  int condition = 0;  // 1..4
  int i = -1;
  std::uint64_t n = 0, m = 0;
  unsigned s = 0;
  bool pass = false;
};

struct DworkReport {
  Family fam;
  std::uint64_t n_max = 0, m_max = 0;
  unsigned s_max = 0;
  int i_max = 0;
  unsigned r_max = 0, conclusion_s_max = 0;
  std::vector<DworkCell> cells;
  std::vector<CongruenceReport> conclusion;
  std::vector<std::string> failing;
  bool pass = false;
};

// B^{(i)}(n) / B^{(i+1)}(floor(n/p)) lies in Z[t]_m
bool check_dwork_condition1(const Family& fam, int i, std::uint64_t n);
// the ratio at n + m p^{s+1} agrees with the ratio at n modulo m^{s+1}; both ratios
// are pushed into Z_{q,p}/m^{s+1} from their factor lists (indices are too large for
// the exact difference)
bool check_dwork_condition2(const Family& fam, int i, std::uint64_t n, std::uint64_t m, unsigned s);
// same congruence on the exact difference in Q(t); only for small indices
bool check_dwork_condition2_exact(const Family& fam, int i, std::uint64_t n, std::uint64_t m, unsigned s);
bool check_dwork_condition3(const Family& fam, int i, std::uint64_t n);
bool check_dwork_condition4(const Family& fam, int i);
// coefficients below D of LHS - RHS, each divided by B^{(s)}(r), must have valuation >= s+1;
// D = 0 means (r+1) p^{s+1}
CongruenceReport check_dwork_conclusion(const Family& fam, std::uint64_t r, unsigned s, std::size_t D = 0);

DworkReport check_dwork(const Family& fam, std::uint64_t n_max, std::uint64_t m_max, unsigned s_max, int i_max,
                        unsigned r_max, unsigned conclusion_s_max);

// f F_q(F_s) - F_q(f) F_{s+1} in Z_{q,p}/m^N, N = s+1 unless given.
// replace_with_F_s swaps F_{s+1} for F_s (negative control).
CongruenceReport check_truncation_congruence(const Family& fam, unsigned s, std::size_t D, bool replace_with_F_s = false,
                                             unsigned N = 0);

// B^{(-1)}(np+r) - B^{(0)}(n) B^{(-1)}(r) in phi_p(q) Z[t]_m for every index np+r < D
CongruenceReport check_cyclotomic_congruence(const Family& fam, std::size_t D);

struct LucasRelation {
  unsigned long p = 2;
  unsigned h = 1;
  std::size_t terms = 0;   // r + 1
  std::size_t degree = 0;  // bound d on deg a_i
  std::vector<std::vector<std::uint64_t>> a;  // a[i][j] = coefficient of z^j in a_i
  std::size_t solve_window = 0;
  std::size_t verified_degree = 0;
  bool verified = false;
};

// sum_i a_i(z) g(z^{p^{ih}}) mod z^D
bool relation_holds(const LucasRelation& rel, const FpSeries& g, std::size_t D);

// g = ev(f_alpha) mod p and A_p = ev(F_1) mod p, with a_0 = 1, a_1 = -A_p; verified to D
LucasRelation recover_p_lucas(const Family& fam, std::size_t D);

// F_p nullspace of the (r+1)(d+1) unknowns; D = 0 means 2 (r+1)(d+1).
// g must be known to 2D for the verification window, otherwise to D.
std::optional<LucasRelation> find_relation(const FpSeries& g, unsigned h, std::size_t r, std::size_t d,
                                           std::size_t D = 0);

// ev(f_alpha) mod p to the given length
FpSeries reduced_hypergeometric(const Family& fam, std::size_t length);

}  // namespace qfrob
