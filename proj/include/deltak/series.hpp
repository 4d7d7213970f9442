#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

// Exact coefficient tables for the broken k-diamond partition function
// Delta_k(n), k in {1,2}.  The generating function
//
//   sum_{n>=0} Delta_k(n) q^n
//     = prod_{n>=1} (1-q^{2n})(1-q^{(2k+1)n})
//                   / ( (1-q^n)^3 (1-q^{(4k+2)n}) )
//
// rewritten with all factors in the denominator is
//
//   prod_{j>=1} (1-q^j)^{-e_j},
//   e_j = 3 + [ (4k+2)|j ] - [ 2|j ] - [ (2k+1)|j ].
//
// Two independent expansion algorithms are provided: a logarithmic-derivative
// recurrence (production path, expand_coeffs) and a truncated-product /
// series-inversion path (naive_oracle).  They must agree entrywise.

namespace deltak {

struct EtaExponentProfile {
  int k;

  explicit EtaExponentProfile(int k_value);

  // e_j for stride j >= 1.  Always >= 1 (in fact 2 or 3), so every
  // coefficient of the expanded product is strictly positive.
  int exponent(std::int64_t j) const;
};

// Exact table of Delta_k(0..horizon).  coeffs[n] holds Delta_k(n).
struct CoeffTable {
  int k = 0;
  std::vector<mpz_class> coeffs;

  std::int64_t horizon() const {
    return static_cast<std::int64_t>(coeffs.size()) - 1;
  }
  // Range-checked access; throws std::out_of_range.
  const mpz_class& at(std::int64_t n) const;
};

// sigma(m) = sum over divisors d of m of d * e_d.  This is the kernel of the
// recurrence  n*Delta_k(n) = sum_{m=1}^{n} sigma(m) Delta_k(n-m).
mpz_class sigma_weight(int k, std::int64_t m);

// Production path: expands Delta_k(0..N) by the divisor-sum recurrence.
// Every division by n must be exact; an inexact division indicates a broken
// exponent profile and raises std::logic_error.
CoeffTable expand_coeffs(int k, std::int64_t N);

// Extends an existing table in place to horizon N (no-op if already there).
// The existing prefix is preserved verbatim.
void extend_coeffs(CoeffTable& table, std::int64_t N);

// Reference path: multiplies out the numerator factors as truncated dense
// polynomials and inverts the truncated denominator series by the standard
// convolution recurrence.  Quadratic time, kept independent of sigma_weight.
CoeffTable naive_oracle(int k, std::int64_t N);

}  // namespace deltak
