#pragma once

#include <vector>

#include <gmpxx.h>

namespace deltak {

// Dense univariate polynomial with exact integer coefficients, lowest degree
// first.  Normalized form has no trailing zero coefficients (the zero
// polynomial is an empty vector).
struct IntPolynomial {
  std::vector<mpz_class> coeffs;

  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<mpz_class> c) : coeffs(std::move(c)) { trim(); }

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  const mpz_class& leading() const;
  void trim();
};

// Number of *distinct* real roots, counted exactly via a Sturm chain over
// exact rationals.  Requires a nonzero polynomial.
int count_distinct_real_roots(const IntPolynomial& p);

// p / gcd(p, p'): same distinct roots, all simple.  Result is an integer
// polynomial (primitive, positive leading coefficient).
IntPolynomial square_free_part(const IntPolynomial& p);

}  // namespace deltak
