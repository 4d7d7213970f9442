#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "deltak/hpreal.hpp"

// Numeric verification of the analytic scaffolding: enclosures for the
// second modified Bessel function I_2, the asymptotic sandwiches for
// Delta_k(n), and every explicit inequality the correctness arguments rest
// on.  All rational constants are stored exactly and converted to HPReal only
// at evaluation time.
//
// Precision policy: each operation evaluates at the requested precision p and
// again at 2p, accepts only when the two agree to relative 2^{-p/2}, and
// returns the higher-precision value.  Inequality checks additionally require
// the margin to clear a combined error budget, so a "pass" is robust; this
// substitutes for true interval arithmetic.

namespace deltak {

// (lower, upper) enclosure of a target quantity.
struct BoundPair {
  HPReal lower;
  HPReal upper;
  std::string variant;
};

struct CheckItem {
  std::string name;
  bool pass = false;
  HPReal margin;  // signed distance from the inequality boundary
  HPReal budget;  // evaluation error allowance the margin is compared against
};

struct CheckReport {
  std::string title;
  std::vector<CheckItem> items;
  bool all_pass() const;
};

// alpha_k = (5k+2)/(2k+1), exact.
mpq_class alpha_of(int k);

// x_k(n) = pi * sqrt(24n - (2k+2)) / 6.
HPReal x_of(int k, std::int64_t n, mpfr_prec_t prec = HPReal::kDefaultPrec);

// Geometry of the sandwich bounds for one (k, n).
struct ModelParams {
  int k;
  std::int64_t n;
  mpq_class alpha;
  HPReal x;  // x_k(n)
  HPReal u;  // sqrt(x_k(n))

  ModelParams(int k_value, std::int64_t n_value, mpfr_prec_t prec = HPReal::kDefaultPrec);
};

// I_2(s) by the ascending series sum_{j>=0} (s/2)^{2j+2} / (j!(j+2)!), summed
// until the next term falls below 2^-p of the partial sum (terms are
// positive, and the geometric tail bound is folded into the stopping rule).
HPReal i2_series(const HPReal& s, mpfr_prec_t prec = HPReal::kDefaultPrec);

// I_2(s) = s^2/(3pi) * integral_{-1}^{1} (1-t^2)^{3/2} e^{st} dt by
// tanh-sinh quadrature.  Cross-check regime only: 0 <= s <= 64.
HPReal i2_integral(const HPReal& s, mpfr_prec_t prec = HPReal::kDefaultPrec);

// The two truncated asymptotic prefixes of sqrt(2 pi s) e^{-s} I_2(s):
// kShort ends at 1/s^5, kLong at 1/s^11.
enum class BiVariant { kShort, kLong };
HPReal b_i(const HPReal& s, BiVariant variant, mpfr_prec_t prec = HPReal::kDefaultPrec);

// Certified enclosures e^s/sqrt(2 pi s) * (B -+ R):
//   kOrder5  : B short,  R = 27/s^6,      valid for s >= 28
//   kOrder11 : B long,   R = 6148836/s^12, valid for s >= 50
enum class I2Enclosure { kOrder5, kOrder11 };
BoundPair i2_bounds(const HPReal& s, I2Enclosure variant,
                    mpfr_prec_t prec = HPReal::kDefaultPrec, bool unchecked = false);

// Remainder checkpoint function
//   g(s) = (91785 + 4096 sqrt2 s)/(12288 sqrt(pi)) e^{-s} s^{15/2}
//          + 4729725/(131072 sqrt2),
// decreasing for s >= 7.9; g(28) < 27 is what certifies the kOrder5 remainder.
HPReal g_checkpoint(const HPReal& s, mpfr_prec_t prec = HPReal::kDefaultPrec);
// The quadratic factor of -g'(s) (positive exactly where g decreases):
// 8192 sqrt2 s^2 + (183570 - 69632 sqrt2) s - 1376775.
HPReal g_decay_factor(const HPReal& s, mpfr_prec_t prec = HPReal::kDefaultPrec);

// Upper incomplete gamma by continued fraction (s >= a+1) or by the lower
// series and subtraction (s < a+1).  Exposed for testing.
HPReal upper_gamma(const HPReal& a, const HPReal& s, mpfr_prec_t prec = HPReal::kDefaultPrec);

// Tail bound Gamma(a,s) <= a s^{a-1} e^{-s} for a >= 1, s >= a.  True when
// the bound holds within the evaluation error budget (the bound is an
// equality at a = 1, so the margin may legitimately be zero).
bool gamma_tail_check(const HPReal& a, const HPReal& s,
                      mpfr_prec_t prec = HPReal::kDefaultPrec);

// M_k(n)(1 -+ 1/x^w) with M_k(n) = alpha pi^3/(18 x^2) I_2(sqrt(alpha) x) and
// the inner I_2 replaced by its certified enclosure (kPow6 uses kOrder5,
// kPow10 uses kOrder11), making the pair a genuine outer enclosure of
// Delta_k(n).  Valid for n >= 3512.
enum class SandwichWidth { kPow6, kPow10 };
BoundPair delta_sandwich(const ModelParams& params, SandwichWidth width,
                         mpfr_prec_t prec = HPReal::kDefaultPrec, bool unchecked = false);

// The polynomial-weighted sandwiches
//   kDeg12: alpha pi^3/(18 u^16) (u^12 -+ 1) I_{order5 bounds}(sqrt(alpha) u^2)
//   kDeg20: alpha pi^3/(18 u^24) (u^20 -+ 1) I_{order11 bounds}(sqrt(alpha) u^2)
enum class FgVariant { kDeg12, kDeg20 };
BoundPair fg_bounds(const ModelParams& params, FgVariant variant,
                    mpfr_prec_t prec = HPReal::kDefaultPrec, bool unchecked = false);

// 72 e^{-sqrt(21) x / 6} <= 1/(2x^6) and <= 1/(2x^10), each grid point x >= 152.
CheckReport exp_tail_check(const std::vector<HPReal>& x_grid,
                           mpfr_prec_t prec = HPReal::kDefaultPrec);

// The two proof tracks: the order-2 Laguerre argument uses the bound family
// truncated at z^-19 (entry point n >= 122); the order-3 determinant argument
// uses the z^-23 family (entry point n >= 2404).
enum class ProofFamily { kLaguerre, kDeterminant };

// With z = u_k(n+2) and w,y,i,j the neighbouring fourth roots
// (w^4 = z^4 - 4pi^2/3, y^4 = z^4 - 2pi^2/3, i^4 = z^4 + 2pi^2/3,
//  j^4 = z^4 + 4pi^2/3), checks the eight strand inequalities
// w1<w<w2, ..., j1<j<j2 of the requested family, plus negativity of
// i2^2+y2^2-2z^2 and j2^2+w2^2-2z^2 via their closed rational forms.
CheckReport expansion_sandwich_check(int k, std::int64_t n, ProofFamily family,
                                     mpfr_prec_t prec = HPReal::kDefaultPrec,
                                     bool unchecked = false);

// phi(t) < e^t < Phi(t) for t < 0, Phi/phi the degree-4/5 Taylor prefixes of exp.
CheckReport phi_bound_check(const std::vector<HPReal>& t_grid,
                            mpfr_prec_t prec = HPReal::kDefaultPrec);

// Sign pattern (+, -, +) of the three leading tail coefficients of the
// polynomialized positivity argument, per proof track.
CheckReport leading_coeff_signs(const mpq_class& alpha, ProofFamily family,
                                mpfr_prec_t prec = HPReal::kDefaultPrec);

// Positivity of the dominating quartic tail:
//   kLaguerre:    -192 a1 + a2 z^2 + a3 z^4 > 0  (valid z > 10.1)
//   kDeterminant: -361 a1 + a2 z^2 + a3 z^4 > 0  (valid z > 12.65)
CheckReport quartic_tail_check(ProofFamily family, const mpq_class& alpha,
                               const std::vector<HPReal>& z_grid,
                               mpfr_prec_t prec = HPReal::kDefaultPrec);

}  // namespace deltak
