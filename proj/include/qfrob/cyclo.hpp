#pragma once

// Helpers for polynomials carried as products of cyclotomic factors.
// Phi_d = prod_{e | d} (t^e - 1)^{mu(d/e)}, so every operation below is a
// sequence of O(length) passes multiplying or dividing by (t^e - 1).

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qfrob/arith.hpp"

namespace qfrob {

// sorted sparse map d -> exponent, zero exponents never stored
class CycloExps {
 public:
  using Entry = std::pair<std::uint64_t, long>;

  CycloExps() = default;
  // from d -> e pairs in any order; duplicates are summed
  static CycloExps from_unsorted(const std::vector<Entry>& entries);
  bool empty() const { return v_.empty(); }
  std::size_t size() const { return v_.size(); }
  const std::vector<Entry>& entries() const { return v_; }
  long get(std::uint64_t d) const;
  void add(std::uint64_t d, long e);
  // exponents of 1 - t^k (up to the sign -1): one for every divisor of k
  void add_one_minus_power(std::uint64_t k, long mult);

  CycloExps operator+(const CycloExps& o) const;
  CycloExps operator-(const CycloExps& o) const;
  CycloExps operator-() const;
  bool operator==(const CycloExps& o) const { return v_ == o.v_; }
  static CycloExps min(const CycloExps& a, const CycloExps& b);
  CycloExps positive_part() const;
  CycloExps negative_part() const;  // returned with positive exponents
  // image under t -> t^k
  CycloExps substitute(std::uint64_t k) const;
  std::uint64_t degree() const;  // sum e * phi(d) over positive entries

 private:
  std::vector<Entry> v_;
};

// exponents of prod (1 - t^k)^{m_k}, ignoring the overall sign (-1)^{sum m_k}
CycloExps exps_of_factors(const std::map<std::uint64_t, long>& factors);

// net exponents E_e with prod Phi_d^{k_d} = prod (t^e - 1)^{E_e}
std::map<std::uint64_t, long> mobius_aggregate(const CycloExps& k);

void mul_tpow_minus1(std::vector<BigInt>& c, std::size_t e);
// exact division; returns false (and leaves c unspecified) if not exact
bool div_tpow_minus1(std::vector<BigInt>& c, std::size_t e);

// multiplies c by prod Phi_d^{k_d}; all k_d >= 0
void mul_cyclotomic_product(std::vector<BigInt>& c, const CycloExps& k);
// divides c by prod Phi_d^{k_d}; false if inexact
bool div_cyclotomic_product(std::vector<BigInt>& c, const CycloExps& k);
std::vector<BigInt> expand_cyclotomic_product(const CycloExps& k);

// Image of an integer polynomial modulo the prime 2^61 - 1, used as a
// quick filter before exact divisions.
class ModImage {
 public:
  explicit ModImage(const std::vector<BigInt>& c);
  // Phi_d divides the image (necessary for divisibility over Z)
  bool divisible_by(std::uint64_t d) const;
  void divide_by(std::uint64_t d);
  // largest k <= cap with Phi_d^k dividing the image
  long multiplicity(std::uint64_t d, long cap);

 private:
  std::vector<std::uint64_t> c_;
};

// If P (primitive, positive leading coefficient) is a product of cyclotomic
// polynomials, return their exponents; only attempted for small degree.
std::optional<CycloExps> decompose_cyclotomic(const IntPoly& P, std::size_t max_degree = 120);

// Phi_d(1): l for d = l^k, 0 for d = 1, else 1
BigInt cyclotomic_value_at_one(std::uint64_t d);
// prime power decomposition test, returns the prime or 0
std::uint64_t prime_power_base(std::uint64_t d);

}  // namespace qfrob
