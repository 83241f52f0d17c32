#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qfrob/qseries.hpp"

namespace qfrob {

// a documented precondition of a checker does not hold
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class C>
struct SeriesMatrix {
  std::vector<std::vector<TruncSeries<C>>> e;

  std::size_t dim() const { return e.size(); }
  std::size_t degree_bound() const { return e.empty() ? 0 : e[0][0].degree_bound(); }
  const TruncSeries<C>& operator()(std::size_t i, std::size_t j) const { return e.at(i).at(j); }
  TruncSeries<C>& operator()(std::size_t i, std::size_t j) { return e.at(i).at(j); }
};

using RMatrix = SeriesMatrix<RatFunc>;
using QMatrix = SeriesMatrix<BigRat>;

// polynomial in z with coefficients in Q(t), lowest degree first
using ZPoly = std::vector<RatFunc>;

// num(z) / den(z) entrywise, one scalar denominator with den(0) != 0
struct RationalMatrix {
  std::vector<std::vector<ZPoly>> num;
  ZPoly den;
  std::size_t dim() const { return num.size(); }
};

RSeries zpoly_series(const ZPoly& P, std::size_t D, const std::string& var);
RSeries zpoly_times_series(const ZPoly& P, const RSeries& f);
ZPoly zpoly_frobenius(const ZPoly& P, unsigned h, const MAdicContext& ctx);
RMatrix rational_matrix_series(const RationalMatrix& A, std::size_t D);

// sigma_q^n + a_1 sigma_q^{n-1} + ... + a_n, a[k] = a_{k+1}
struct QDiffOperatorSigma {
  std::vector<RSeries> a;
  std::size_t order() const { return a.size(); }
};

// delta_q^n + b_1 delta_q^{n-1} + ... + b_n
struct QDiffOperatorDelta {
  std::vector<RSeries> b;
  std::size_t order() const { return b.size(); }
};

RMatrix matrix_from_scalar(const RSeries& f);
RMatrix identity_matrix(std::size_t n, std::size_t D, const std::string& var);
RMatrix mat_mul(const RMatrix& X, const RMatrix& Y);
RMatrix mat_sub(const RMatrix& X, const RMatrix& Y);
RMatrix mat_scale(const RMatrix& X, const RatFunc& c);
RMatrix mat_sigma(const RMatrix& X, const MAdicContext& ctx);
// z -> z^{p^h}, t -> t^{p^h}, kept to the same degree bound
RMatrix mat_frobenius(const RMatrix& X, unsigned h, const MAdicContext& ctx);
std::vector<RSeries> mat_apply(const RMatrix& X, const std::vector<RSeries>& v);
// det(X(0)) over Q(t)
RatFunc constant_term_det(const RMatrix& X);

// ones above the diagonal, last row -a_n .. -a_1
RMatrix companion_matrix(const QDiffOperatorSigma& L);
// (q-1) C + Id with C the companion matrix of L
RMatrix associated_matrix(const QDiffOperatorDelta& L, const MAdicContext& ctx);
QDiffOperatorSigma delta_to_sigma(const QDiffOperatorDelta& L, const MAdicContext& ctx);
QDiffOperatorDelta sigma_to_delta(const QDiffOperatorSigma& L, const MAdicContext& ctx);

// N(z)/Dn(z) as a series, both given by coefficient lists in Q(t)
RSeries rational_z_series(const std::vector<RatFunc>& num, const std::vector<RatFunc>& den, std::size_t D);
// (1 - z)/(1 - q^alpha z)
RSeries order1_A(const Family& fam, std::size_t D);
RationalMatrix order1_A_rational(const Family& fam);
// f_alpha / F_q(f_alpha)
RSeries order1_transition_matrix(const Family& fam, std::size_t D);

enum class CheckMode { Exact, Valuation };

struct FrobeniusCertificate {
  std::string operator_description;
  unsigned h = 1;
  RMatrix H;
  std::size_t D = 0;
  CheckMode mode = CheckMode::Exact;
  long threshold = 0;
  std::string normalization = "H(0) = identity";
  bool h0_invertible = true;
  std::vector<std::vector<Valuation>> residual_valuation;
  std::vector<std::vector<bool>> residual_zero;
  // residual multiplied by den(z) den^{F}(z), a unit of the series ring
  bool cleared_denominators = false;
  bool pass = false;
};

FrobeniusCertificate check_frobenius_structure(const RMatrix& A, const RMatrix& H, unsigned h,
                                               const MAdicContext& ctx, CheckMode mode = CheckMode::Exact,
                                               long threshold = 0, const std::string& description = "");
// same check with A = num/den; the residual is scaled by den den^{F}, so only
// short products in z are formed
FrobeniusCertificate check_frobenius_structure(const RationalMatrix& A, const RMatrix& H, unsigned h,
                                               const MAdicContext& ctx, CheckMode mode = CheckMode::Exact,
                                               long threshold = 0, const std::string& description = "");
// sigma_q(H F^h(f)) = A H F^h(f); throws PreconditionError unless sigma_q(f) = A f
bool check_semilinear_action(const RMatrix& A, const RMatrix& H, const std::vector<RSeries>& fvec, unsigned h,
                             const MAdicContext& ctx);
bool check_semilinear_action(const RationalMatrix& A, const RMatrix& H, const std::vector<RSeries>& fvec, unsigned h,
                             const MAdicContext& ctx);

// delta G - B G + p G B(z^p) with B = alpha z/(1-z)
QSeries differential_residual(const QSeries& G, const BigRat& alpha, unsigned long p, const QSeries* B = nullptr);
// ev((sigma_q(G) A^{F_q} - A G)/(q-1))
QSeries sigma_residual_ev(const RSeries& A, const RSeries& G, const MAdicContext& ctx);

struct ConfluenceReport {
  std::size_t D = 0;
  bool identity_holds = false;   // delta Hbar = B Hbar - p Hbar B(z^p)
  bool ev_matches = false;       // ev of the sigma_q residual equals the differential residual
  bool perturbed_ev_matches = false;
  bool perturbed_B_fails = false;  // control: B + z must break the identity
  std::vector<BigRat> residual;
  bool pass = false;
};

ConfluenceReport check_confluence_order1(const Family& fam, std::size_t D);

}  // namespace qfrob
