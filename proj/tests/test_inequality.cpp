#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "deltak/inequality.hpp"
#include "deltak/series.hpp"

using namespace deltak;

namespace {

CoeffTable synthetic(std::vector<long> values) {
  CoeffTable t;
  t.k = 1;
  for (long v : values) t.coeffs.emplace_back(v);
  return t;
}

CoeffTable geometric(long ratio, int len) {
  CoeffTable t;
  t.k = 1;
  mpz_class v = 1;
  for (int i = 0; i < len; ++i) {
    t.coeffs.push_back(v);
    v *= ratio;
  }
  return t;
}

// cofactor-expansion determinant, the small-m oracle
mpz_class cofactor_det(const std::vector<std::vector<mpz_class>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  mpz_class total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<mpz_class>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<mpz_class> row;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != j) row.push_back(m[i][c]);
      }
      minor.push_back(std::move(row));
    }
    mpz_class term = m[0][j] * cofactor_det(minor);
    if (j % 2 == 0) total += term; else total -= term;
  }
  return total;
}

mpz_class toeplitz_oracle(const CoeffTable& t, std::int64_t n, int m) {
  std::vector<std::vector<mpz_class>> mat(static_cast<std::size_t>(m));
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= m; ++j) {
      mat[static_cast<std::size_t>(i - 1)].push_back(t.at(n - i + j));
    }
  }
  return cofactor_det(mat);
}

}  // namespace

TEST_CASE("binomial basics and Pascal oracle") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(28, 0) == 1);
  CHECK(binomial(7, 9) == 0);
  CHECK(binomial(7, -1) == 0);
  // Pascal triangle up to n = 40
  std::vector<std::vector<mpz_class>> pascal(41);
  for (int n = 0; n <= 40; ++n) {
    pascal[n].assign(static_cast<std::size_t>(n) + 1, 1);
    for (int r = 1; r < n; ++r) pascal[n][r] = pascal[n - 1][r - 1] + pascal[n - 1][r];
    for (int r = 0; r <= n; ++r) CHECK(binomial(n, r) == pascal[n][r]);
  }
  CHECK(binomial(28, 14) == pascal[28][14]);
}

TEST_CASE("laguerre_value closed cases") {
  const CoeffTable ones = synthetic({1, 1, 1, 1, 1, 1, 1, 1, 1});
  for (int n = 0; n <= 2; ++n) CHECK(laguerre_value(ones, n, 2) == 0);
  const CoeffTable geo = geometric(3, 12);
  for (int n = 0; n <= 8; ++n) CHECK(laguerre_value(geo, n, 1) == 0);

  const CoeffTable t1 = expand_coeffs(1, 20);
  // direct quartic-window expansion
  const mpz_class direct = 3 * t1.at(14) * t1.at(14) - 4 * t1.at(13) * t1.at(15) +
                           t1.at(12) * t1.at(16);
  CHECK(laguerre_value(t1, 12, 2) == direct);
  CHECK(direct > 0);

  CHECK_THROWS_AS(laguerre_value(t1, 17, 2), std::out_of_range);
  CHECK_THROWS_AS(laguerre_value(t1, -1, 2), std::out_of_range);
  CHECK_THROWS_AS(laguerre_value(t1, 0, 0), std::invalid_argument);
}

TEST_CASE("pre-halving laguerre sum is even on real tables") {
  for (int k = 1; k <= 2; ++k) {
    const CoeffTable t = expand_coeffs(k, 80);
    for (int m = 1; m <= 6; ++m) {
      for (std::int64_t n = 0; n + 2 * m <= 80; n += 7) {
        mpz_class sum = 0;
        for (int i = 0; i <= 2 * m; ++i) {
          mpz_class term = binomial(2 * m, i) * t.at(n + i) * t.at(n + 2 * m - i);
          if ((i + m) % 2 == 0) sum += term; else sum -= term;
        }
        CHECK(mpz_even_p(sum.get_mpz_t()));
        CHECK(laguerre_value(t, n, m) * 2 == sum);
      }
    }
  }
}

TEST_CASE("toeplitz_det small closed forms") {
  const CoeffTable t = expand_coeffs(1, 30);
  for (std::int64_t n = 0; n <= 30; n += 5) CHECK(toeplitz_det(t, n, 1) == t.at(n));
  for (std::int64_t n = 1; n <= 29; n += 3) {
    CHECK(toeplitz_det(t, n, 2) == t.at(n) * t.at(n) - t.at(n - 1) * t.at(n + 1));
  }
  CHECK(toeplitz_det(t, 20, 3) > 0);
  CHECK_THROWS_AS(toeplitz_det(t, 1, 3), std::out_of_range);
  CHECK_THROWS_AS(toeplitz_det(t, 29, 3), std::out_of_range);
}

TEST_CASE("toeplitz_det equals the shifted theorem display") {
  // A 3x3 matrix with rows starting Delta(n+2), Delta(n+1), Delta(n) is
  // exactly the n+2 Toeplitz window.
  const CoeffTable t = expand_coeffs(2, 60);
  for (std::int64_t n : {18L, 25L, 40L}) {
    std::vector<std::vector<mpz_class>> display = {
        {t.at(n + 2), t.at(n + 3), t.at(n + 4)},
        {t.at(n + 1), t.at(n + 2), t.at(n + 3)},
        {t.at(n), t.at(n + 1), t.at(n + 2)},
    };
    CHECK(cofactor_det(display) == toeplitz_det(t, n + 2, 3));
  }
}

TEST_CASE("bareiss agrees with cofactor expansion on random windows") {
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<long> dist(0, 60);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<long> vals;
    for (int i = 0; i < 11; ++i) vals.push_back(dist(rng));
    const CoeffTable t = synthetic(vals);
    for (int m = 1; m <= 5; ++m) {
      const std::int64_t n = m - 1 + (trial % 2);
      if (n + m - 1 > t.horizon()) continue;
      CHECK(toeplitz_det(t, n, m) == toeplitz_oracle(t, n, m));
    }
  }
}

TEST_CASE("quartic invariants") {
  auto inv = quartic_invariants(1, 1, 1, 1, 1);
  CHECK(inv.A == 0);
  CHECK(inv.B == 0);
  CHECK(inv.I == 0);
  inv = quartic_invariants(1, 0, 0, 0, 1);
  CHECK(inv.A == 1);
  CHECK(inv.B == 0);
  CHECK(inv.I == 1);
}

TEST_CASE("invariant bridges to laguerre and determinant") {
  for (int k = 1; k <= 2; ++k) {
    const CoeffTable t = expand_coeffs(k, 120);
    for (std::int64_t n = 0; n + 4 <= 120; n += 3) {
      const auto inv = quartic_invariants(t.at(n), t.at(n + 1), t.at(n + 2), t.at(n + 3),
                                          t.at(n + 4));
      CHECK(laguerre_value(t, n, 2) == inv.A);
      // B on the window starting at n is the 3x3 Toeplitz determinant at n+2
      CHECK(inv.B == toeplitz_det(t, n + 2, 3));
      // L_1 bridges to the 2x2 determinant one step in
      CHECK(laguerre_value(t, n, 1) == toeplitz_det(t, n + 1, 2));
    }
  }
}

TEST_CASE("scaling a window leaves verdicts alone and scales values") {
  const CoeffTable t = expand_coeffs(1, 40);
  const long c = 7;
  CoeffTable scaled = t;
  for (auto& v : scaled.coeffs) v *= c;
  for (std::int64_t n = 2; n <= 20; n += 4) {
    CHECK(laguerre_value(scaled, n, 2) == c * c * laguerre_value(t, n, 2));
    CHECK(toeplitz_det(scaled, n, 3) == mpz_class(c * c * c) * toeplitz_det(t, n, 3));
    const auto a = quartic_invariants(t.at(n), t.at(n + 1), t.at(n + 2), t.at(n + 3),
                                      t.at(n + 4));
    const auto b = quartic_invariants(scaled.at(n), scaled.at(n + 1), scaled.at(n + 2),
                                      scaled.at(n + 3), scaled.at(n + 4));
    CHECK(b.A == c * c * a.A);
    CHECK(b.B == mpz_class(c * c * c) * a.B);
    const FamilySpec lag{Family::kLaguerre, 2, 1};
    CHECK(predicate_eval(lag, scaled, n) == predicate_eval(lag, t, n));
  }
}

TEST_CASE("jensen polynomials") {
  const CoeffTable ones = synthetic({1, 1, 1, 1, 1});
  const IntPolynomial sq = jensen_poly(ones, 2, 0);
  CHECK(sq.coeffs == std::vector<mpz_class>{1, 2, 1});

  const CoeffTable t = expand_coeffs(1, 12);
  const IntPolynomial j2 = jensen_poly(t, 2, 0);
  CHECK(j2.coeffs == std::vector<mpz_class>{1, 6, 8});
  const std::int64_t n = 5;
  const IntPolynomial j3 = jensen_poly(t, 3, n - 1);
  CHECK(j3.coeffs == std::vector<mpz_class>{t.at(n - 1), 3 * t.at(n), 3 * t.at(n + 1),
                                            t.at(n + 2)});
  CHECK(j3.degree() == 3);
  CHECK(j3.leading() > 0);
  CHECK_THROWS_AS(jensen_poly(t, 3, 11), std::out_of_range);
}

TEST_CASE("hyperbolicity decisions are exact") {
  CHECK(is_hyperbolic(IntPolynomial({mpz_class(1), mpz_class(2), mpz_class(1)})));   // (1+X)^2
  CHECK(!is_hyperbolic(IntPolynomial({mpz_class(1), mpz_class(0), mpz_class(1)})));  // X^2+1
  // (X^2-2)^2 = 4 - 4X^2 + X^4: repeated irrational roots
  CHECK(is_hyperbolic(IntPolynomial({mpz_class(4), mpz_class(0), mpz_class(-4),
                                     mpz_class(0), mpz_class(1)})));
  // (X^2+1)^2
  CHECK(!is_hyperbolic(IntPolynomial({mpz_class(1), mpz_class(0), mpz_class(2),
                                      mpz_class(0), mpz_class(1)})));
  // X^3 (triple root at 0)
  CHECK(is_hyperbolic(IntPolynomial({mpz_class(0), mpz_class(0), mpz_class(0),
                                     mpz_class(1)})));
  CHECK(is_hyperbolic(IntPolynomial({mpz_class(5)})));
  CHECK(is_hyperbolic(IntPolynomial({mpz_class(1), mpz_class(1)})));
  const IntPolynomial zero;
  CHECK_THROWS_AS(is_hyperbolic(zero), std::invalid_argument);

  // root counting: (X^2-2)(X^2-3) has 4 distinct real roots
  CHECK(count_distinct_real_roots(IntPolynomial(
            {mpz_class(6), mpz_class(0), mpz_class(-5), mpz_class(0), mpz_class(1)})) == 4);
  CHECK(count_distinct_real_roots(IntPolynomial(
            {mpz_class(0), mpz_class(-1), mpz_class(0), mpz_class(1)})) == 3);  // X^3-X
}

TEST_CASE("jensen degree-3 hyperbolicity on the first table") {
  const CoeffTable t = expand_coeffs(1, 60);
  for (std::int64_t n = 6; n <= 50; ++n) {
    CHECK(is_hyperbolic(jensen_poly(t, 3, n - 1)));
  }
}

TEST_CASE("turan3 closed cases and cross-method agreement") {
  const CoeffTable ones = synthetic({1, 1, 1, 1, 1, 1});
  CHECK(turan3_value(ones, 1) == 0);
  const CoeffTable geo = geometric(5, 10);
  CHECK(turan3_value(geo, 3) == 0);

  for (int k = 1; k <= 2; ++k) {
    const CoeffTable t = expand_coeffs(k, 502);
    CHECK(turan3_value(t, 10) > 0);
    for (std::int64_t n = 1; n <= 500; ++n) {
      const bool nonneg = turan3_value(t, n) >= 0;
      CHECK(nonneg == is_hyperbolic(jensen_poly(t, 3, n - 1)));
      const bool logconcave = t.at(n) * t.at(n) >= t.at(n - 1) * t.at(n + 1);
      CHECK(logconcave == is_hyperbolic(jensen_poly(t, 2, n - 1)));
    }
  }
}

TEST_CASE("predicate_eval dispatch") {
  const CoeffTable t1 = expand_coeffs(1, 60);
  const CoeffTable t2 = expand_coeffs(2, 60);
  CHECK(predicate_eval({Family::kLaguerre, 2, 1}, t1, 12));
  CHECK(!predicate_eval({Family::kLaguerre, 2, 1}, t1, 11));
  CHECK(!predicate_eval({Family::kToeplitzDet, 3, 1}, t1, 19));
  CHECK(predicate_eval({Family::kToeplitzDet, 3, 1}, t1, 20));
  // exact arithmetic on the k=2 table: the invariant I is still positive at
  // 13 and only stays positive from 17 on
  CHECK(predicate_eval({Family::kInvariantI, 1, 2}, t2, 13));
  CHECK(!predicate_eval({Family::kInvariantI, 1, 2}, t2, 14));
  CHECK(predicate_eval({Family::kInvariantI, 1, 2}, t2, 17));
  CHECK(!predicate_eval({Family::kInvariantI, 1, 1}, t1, 13));
  CHECK(predicate_eval({Family::kInvariantI, 1, 1}, t1, 17));
  CHECK(predicate_eval({Family::kTuranJensen, 3, 1}, t1, 10));
  CHECK_THROWS_AS(predicate_eval({Family::kLaguerre, 15, 1}, t1, 5), std::invalid_argument);
  CHECK_THROWS_AS(predicate_eval({Family::kTuranJensen, 1, 1}, t1, 5), std::invalid_argument);
}

TEST_CASE("find_threshold reproduces the small table entries") {
  const CoeffTable t1 = expand_coeffs(1, 1010);
  const CoeffTable t2 = expand_coeffs(2, 1010);

  auto r = find_threshold({Family::kLaguerre, 2, 1}, t1, 1000);
  REQUIRE(r.threshold.has_value());
  CHECK(*r.threshold == 12);
  CHECK(r.failures.back() == 11);
  CHECK(r.admissible_min == 1);

  r = find_threshold({Family::kToeplitzDet, 3, 2}, t2, 1000);
  REQUIRE(r.threshold.has_value());
  CHECK(*r.threshold == 18);
  CHECK(r.failures.back() == 17);
  CHECK(r.admissible_min == 2);

  r = find_threshold({Family::kLaguerre, 1, 2}, t2, 1000);
  REQUIRE(r.threshold.has_value());
  CHECK(*r.threshold == 1);
  CHECK(r.failures.empty());

  // censored: the order-3 determinant still fails at horizon 19
  r = find_threshold({Family::kToeplitzDet, 3, 1}, t1, 19);
  CHECK(r.censored());
  CHECK(!r.failures.empty());
  CHECK(r.failures.back() == 19);

  CHECK_THROWS_AS(find_threshold({Family::kLaguerre, 2, 1}, t1, 2000),
                  std::invalid_argument);  // table too small for H + window
}

TEST_CASE("threshold scans merge deterministically across jobs") {
  const CoeffTable t = expand_coeffs(2, 520);
  for (Family family : {Family::kLaguerre, Family::kToeplitzDet}) {
    for (int m : {2, 4}) {
      const auto serial = find_threshold({family, m, 2}, t, 500, 1);
      const auto parallel = find_threshold({family, m, 2}, t, 500, 3);
      CHECK(serial.threshold == parallel.threshold);
      CHECK(serial.failures == parallel.failures);
    }
  }
}

TEST_CASE("scan_tables mirrors both conjecture rows for small m") {
  const CoeffTable t1 = expand_coeffs(1, 320);
  const auto reports = scan_tables(t1, 3, 300);
  REQUIRE(reports.size() == 6);
  CHECK(*reports[0].threshold == 1);
  CHECK(*reports[1].threshold == 12);
  CHECK(*reports[2].threshold == 53);
  CHECK(*reports[3].threshold == 1);
  CHECK(*reports[4].threshold == 1);
  CHECK(*reports[5].threshold == 20);

  const CoeffTable t2 = expand_coeffs(2, 320);
  const auto reports2 = scan_tables(t2, 3, 300);
  CHECK(*reports2[1].threshold == 10);
  CHECK(*reports2[2].threshold == 45);
  CHECK(*reports2[5].threshold == 18);
}

TEST_CASE("window geometry") {
  CHECK(window_span(Family::kLaguerre, 2) == 4);
  CHECK(window_span(Family::kToeplitzDet, 3) == 2);
  CHECK(window_span(Family::kInvariantI, 1) == 4);
  CHECK(structural_min(Family::kToeplitzDet, 3) == 2);
  CHECK(structural_min(Family::kLaguerre, 1) == 0);
  CHECK(admissible_min(Family::kLaguerre, 1) == 1);
  CHECK(admissible_min(Family::kToeplitzDet, 5) == 4);
  CHECK(family_from_name("laguerre") == Family::kLaguerre);
  CHECK(family_from_name("invariant_I") == Family::kInvariantI);
  CHECK(!family_from_name("nope").has_value());
}
