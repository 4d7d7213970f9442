#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "deltak/poly.hpp"
#include "deltak/series.hpp"

// Exact evaluation of the Laguerre, Turan, determinantal and quartic-invariant
// inequalities on coefficient tables, plus the threshold scanner that
// reproduces the conjectured threshold tables.  Everything here is pure
// big-integer arithmetic; no floating point.

namespace deltak {

// Exact binomial coefficient; returns 0 outside 0 <= r <= n.
mpz_class binomial(std::int64_t n, std::int64_t r);

// Discrete Laguerre quantity of order m at n:
//   L_m = (1/2) sum_{i=0}^{2m} (-1)^{i+m} C(2m,i) a_{n+i} a_{n+2m-i}.
// The signed sum is provably even (i <-> 2m-i symmetry); evenness is asserted
// before halving.  Requires n >= 0, m >= 1, n+2m <= horizon.
mpz_class laguerre_value(const CoeffTable& table, std::int64_t n, int m);

// det(a_{n-i+j})_{1<=i,j<=m}, computed by fraction-free Bareiss elimination;
// every intermediate division is exact.  Requires n-m+1 >= 0 and
// n+m-1 <= horizon.
mpz_class toeplitz_det(const CoeffTable& table, std::int64_t n, int m);

// The three invariants of the quartic binary form on a 5-entry window:
//   A = a0 a4 - 4 a1 a3 + 3 a2^2
//   B = -a0 a2 a4 + a2^3 + a0 a3^2 + a1^2 a4 - 2 a1 a2 a3
//   I = A^3 - 27 B^2
struct QuarticInvariants {
  mpz_class A, B, I;
};
QuarticInvariants quartic_invariants(const mpz_class& a0, const mpz_class& a1,
                                     const mpz_class& a2, const mpz_class& a3,
                                     const mpz_class& a4);

// Jensen polynomial of degree d and shift: sum_j C(d,j) a_{shift+j} X^j.
IntPolynomial jensen_poly(const CoeffTable& table, int d, std::int64_t shift);

// True iff all complex roots of p are real, decided exactly: square-free
// reduction, then a Sturm-chain real-root count compared with the
// square-free degree.  Repeated roots are allowed.
bool is_hyperbolic(const IntPolynomial& p);

// 4(a_n^2 - a_{n-1}a_{n+1})(a_{n+1}^2 - a_n a_{n+2}) - (a_n a_{n+1} - a_{n-1}a_{n+2})^2.
// Nonnegative exactly when jensen_poly(table, 3, n-1) is hyperbolic.
mpz_class turan3_value(const CoeffTable& table, std::int64_t n);

enum class Family {
  kLaguerre,     // laguerre_value(n, m) > 0
  kToeplitzDet,  // toeplitz_det(n, m) > 0
  kTuranJensen,  // jensen_poly(d, n-1) hyperbolic
  kInvariantA,   // A(a_n..a_{n+4}) > 0
  kInvariantB,
  kInvariantI,
};

const char* family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

struct FamilySpec {
  Family family = Family::kLaguerre;
  int order = 1;  // m, or d for kTuranJensen; ignored by the invariant families
  int k = 1;
};

// Largest window offset beyond n the predicate touches.
std::int64_t window_span(Family family, int order);
// Smallest n at which the predicate's window is defined at all.
std::int64_t structural_min(Family family, int order);
// Smallest n the scanner considers: thresholds are certified over positive n
// (the table convention), further restricted by window validity.
std::int64_t admissible_min(Family family, int order);

// Verdict of the family's strict inequality at n.  Validates the order range
// (laguerre/toeplitz 1..14, turan 2..14) and the window.
bool predicate_eval(const FamilySpec& spec, const CoeffTable& table, std::int64_t n);

struct ThresholdReport {
  FamilySpec spec;
  std::int64_t horizon = 0;
  std::int64_t admissible_min = 0;
  // Minimal N* with the predicate true on [N*, horizon]; empty when the
  // predicate still fails at the horizon ("no threshold within horizon").
  std::optional<std::int64_t> threshold;
  // Every failing n below N* (the whole failure list when censored).
  std::vector<std::int64_t> failures;

  bool censored() const { return !threshold.has_value(); }
};

// Scans [admissible_min, H].  The result certifies the threshold only up to
// the horizon, never as a theorem.  jobs > 1 splits the range across threads;
// the merged report is deterministic.
ThresholdReport find_threshold(const FamilySpec& spec, const CoeffTable& table,
                               std::int64_t horizon, int jobs = 1);

// One report per (family in {laguerre, toeplitz}, m in 1..m_max), mirroring
// the two conjecture tables for the table's k.
std::vector<ThresholdReport> scan_tables(const CoeffTable& table, int m_max,
                                         std::int64_t horizon, int jobs = 1);

}  // namespace deltak
