#include "deltak/inequality.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>
#include <utility>

namespace deltak {

namespace {

void require_window(const CoeffTable& table, std::int64_t lo, std::int64_t hi,
                    const char* what) {
  if (lo < 0 || hi > table.horizon()) {
    throw std::out_of_range(std::string(what) + ": window [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "] outside table horizon " +
                            std::to_string(table.horizon()));
  }
}

void require_order(Family family, int order) {
  switch (family) {
    case Family::kLaguerre:
    case Family::kToeplitzDet:
      if (order < 1 || order > 14) {
        throw std::invalid_argument("order must be in 1..14");
      }
      break;
    case Family::kTuranJensen:
      if (order < 2 || order > 14) {
        throw std::invalid_argument("Turan order must be in 2..14");
      }
      break;
    default:
      break;
  }
}

}  // namespace

mpz_class binomial(std::int64_t n, std::int64_t r) {
  if (n < 0) throw std::invalid_argument("binomial requires n >= 0");
  if (r < 0 || r > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return out;
}

mpz_class laguerre_value(const CoeffTable& table, std::int64_t n, int m) {
  if (m < 1) throw std::invalid_argument("laguerre order must be >= 1");
  if (n < 0) throw std::out_of_range("laguerre requires n >= 0");
  require_window(table, n, n + 2 * m, "laguerre_value");

  mpz_class sum = 0;
  for (int i = 0; i <= 2 * m; ++i) {
    mpz_class term = binomial(2 * m, i) * table.coeffs[static_cast<std::size_t>(n + i)] *
                     table.coeffs[static_cast<std::size_t>(n + 2 * m - i)];
    if ((i + m) % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  if (mpz_odd_p(sum.get_mpz_t())) {
    throw std::logic_error("pre-halving Laguerre sum is odd; indexing bug");
  }
  mpz_divexact_ui(sum.get_mpz_t(), sum.get_mpz_t(), 2);
  return sum;
}

mpz_class toeplitz_det(const CoeffTable& table, std::int64_t n, int m) {
  if (m < 1) throw std::invalid_argument("determinant order must be >= 1");
  require_window(table, n - m + 1, n + m - 1, "toeplitz_det");

  const std::size_t dim = static_cast<std::size_t>(m);
  std::vector<mpz_class> mat(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      // entry (i,j), 1-based: a_{n-i+j}
      mat[i * dim + j] =
          table.coeffs[static_cast<std::size_t>(n - static_cast<std::int64_t>(i + 1) +
                                                static_cast<std::int64_t>(j + 1))];
    }
  }

  // Fraction-free Bareiss elimination with row pivoting.
  int sign = 1;
  mpz_class prev = 1;
  mpz_class tmp;
  for (std::size_t step = 0; step + 1 < dim; ++step) {
    if (mat[step * dim + step] == 0) {
      std::size_t pivot = step + 1;
      while (pivot < dim && mat[pivot * dim + step] == 0) ++pivot;
      if (pivot == dim) return 0;
      for (std::size_t j = 0; j < dim; ++j) {
        std::swap(mat[step * dim + j], mat[pivot * dim + j]);
      }
      sign = -sign;
    }
    const mpz_class& piv = mat[step * dim + step];
    for (std::size_t i = step + 1; i < dim; ++i) {
      for (std::size_t j = step + 1; j < dim; ++j) {
        tmp = mat[i * dim + j] * piv - mat[i * dim + step] * mat[step * dim + j];
        if (!mpz_divisible_p(tmp.get_mpz_t(), prev.get_mpz_t())) {
          throw std::logic_error("Bareiss division not exact");
        }
        mpz_divexact(mat[i * dim + j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      mat[i * dim + step] = 0;
    }
    prev = piv;
  }
  mpz_class det = mat[dim * dim - 1];
  if (sign < 0) det = -det;
  return det;
}

QuarticInvariants quartic_invariants(const mpz_class& a0, const mpz_class& a1,
                                     const mpz_class& a2, const mpz_class& a3,
                                     const mpz_class& a4) {
  QuarticInvariants inv;
  inv.A = a0 * a4 - 4 * a1 * a3 + 3 * a2 * a2;
  inv.B = -a0 * a2 * a4 + a2 * a2 * a2 + a0 * a3 * a3 + a1 * a1 * a4 - 2 * a1 * a2 * a3;
  inv.I = inv.A * inv.A * inv.A - 27 * inv.B * inv.B;
  return inv;
}

IntPolynomial jensen_poly(const CoeffTable& table, int d, std::int64_t shift) {
  if (d < 0) throw std::invalid_argument("jensen degree must be >= 0");
  if (shift < 0) throw std::out_of_range("jensen shift must be >= 0");
  require_window(table, shift, shift + d, "jensen_poly");
  std::vector<mpz_class> coeffs(static_cast<std::size_t>(d) + 1);
  for (int j = 0; j <= d; ++j) {
    coeffs[static_cast<std::size_t>(j)] =
        binomial(d, j) * table.coeffs[static_cast<std::size_t>(shift + j)];
  }
  return IntPolynomial(std::move(coeffs));
}

bool is_hyperbolic(const IntPolynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("is_hyperbolic of the zero polynomial");
  if (p.degree() <= 1) return true;
  IntPolynomial sf = square_free_part(p);
  return count_distinct_real_roots(sf) == sf.degree();
}

mpz_class turan3_value(const CoeffTable& table, std::int64_t n) {
  if (n < 1) throw std::out_of_range("turan3 requires n >= 1");
  require_window(table, n - 1, n + 2, "turan3_value");
  const mpz_class& am1 = table.coeffs[static_cast<std::size_t>(n - 1)];
  const mpz_class& a0 = table.coeffs[static_cast<std::size_t>(n)];
  const mpz_class& a1 = table.coeffs[static_cast<std::size_t>(n + 1)];
  const mpz_class& a2 = table.coeffs[static_cast<std::size_t>(n + 2)];
  mpz_class cross = a0 * a1 - am1 * a2;
  return 4 * (a0 * a0 - am1 * a1) * (a1 * a1 - a0 * a2) - cross * cross;
}

const char* family_name(Family f) {
  switch (f) {
    case Family::kLaguerre: return "laguerre";
    case Family::kToeplitzDet: return "toeplitz_det";
    case Family::kTuranJensen: return "turan_jensen";
    case Family::kInvariantA: return "invariant_A";
    case Family::kInvariantB: return "invariant_B";
    case Family::kInvariantI: return "invariant_I";
  }
  return "?";
}

std::optional<Family> family_from_name(const std::string& name) {
  for (Family f : {Family::kLaguerre, Family::kToeplitzDet, Family::kTuranJensen,
                   Family::kInvariantA, Family::kInvariantB, Family::kInvariantI}) {
    if (name == family_name(f)) return f;
  }
  return std::nullopt;
}

std::int64_t window_span(Family family, int order) {
  switch (family) {
    case Family::kLaguerre: return 2 * static_cast<std::int64_t>(order);
    case Family::kToeplitzDet: return order - 1;
    case Family::kTuranJensen: return order - 1;  // indices n-1 .. n-1+d
    case Family::kInvariantA:
    case Family::kInvariantB:
    case Family::kInvariantI: return 4;
  }
  return 0;
}

std::int64_t structural_min(Family family, int order) {
  switch (family) {
    case Family::kLaguerre: return 0;
    case Family::kToeplitzDet: return order - 1;
    case Family::kTuranJensen: return 1;  // shift n-1 must be >= 0
    case Family::kInvariantA:
    case Family::kInvariantB:
    case Family::kInvariantI: return 0;
  }
  return 0;
}

std::int64_t admissible_min(Family family, int order) {
  return std::max<std::int64_t>(1, structural_min(family, order));
}

bool predicate_eval(const FamilySpec& spec, const CoeffTable& table, std::int64_t n) {
  require_order(spec.family, spec.order);
  switch (spec.family) {
    case Family::kLaguerre:
      return laguerre_value(table, n, spec.order) > 0;
    case Family::kToeplitzDet:
      return toeplitz_det(table, n, spec.order) > 0;
    case Family::kTuranJensen:
      return is_hyperbolic(jensen_poly(table, spec.order, n - 1));
    case Family::kInvariantA:
    case Family::kInvariantB:
    case Family::kInvariantI: {
      require_window(table, n, n + 4, "invariant window");
      if (n < 0) throw std::out_of_range("invariant window requires n >= 0");
      const auto& c = table.coeffs;
      const std::size_t u = static_cast<std::size_t>(n);
      QuarticInvariants inv = quartic_invariants(c[u], c[u + 1], c[u + 2], c[u + 3], c[u + 4]);
      if (spec.family == Family::kInvariantA) return inv.A > 0;
      if (spec.family == Family::kInvariantB) return inv.B > 0;
      return inv.I > 0;
    }
  }
  throw std::logic_error("unreachable family");
}

ThresholdReport find_threshold(const FamilySpec& spec, const CoeffTable& table,
                               std::int64_t horizon, int jobs) {
  require_order(spec.family, spec.order);
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  const std::int64_t lo = admissible_min(spec.family, spec.order);
  if (horizon < lo) throw std::invalid_argument("horizon below admissible domain");
  if (horizon + window_span(spec.family, spec.order) > table.horizon()) {
    throw std::invalid_argument("table horizon too small for requested scan");
  }

  const std::size_t count = static_cast<std::size_t>(horizon - lo + 1);
  std::vector<unsigned char> ok(count, 0);
  const int workers = static_cast<int>(
      std::min<std::int64_t>(jobs, static_cast<std::int64_t>(count)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      ok[i] = predicate_eval(spec, table, lo + static_cast<std::int64_t>(i)) ? 1 : 0;
    }
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::size_t chunk = (count + static_cast<std::size_t>(workers) - 1) /
                              static_cast<std::size_t>(workers);
    for (int w = 0; w < workers; ++w) {
      const std::size_t begin = static_cast<std::size_t>(w) * chunk;
      const std::size_t end = std::min(count, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back([&, begin, end]() {
        for (std::size_t i = begin; i < end; ++i) {
          ok[i] = predicate_eval(spec, table, lo + static_cast<std::int64_t>(i)) ? 1 : 0;
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  ThresholdReport report;
  report.spec = spec;
  report.horizon = horizon;
  report.admissible_min = lo;
  for (std::size_t i = 0; i < count; ++i) {
    if (!ok[i]) report.failures.push_back(lo + static_cast<std::int64_t>(i));
  }
  if (report.failures.empty()) {
    report.threshold = lo;
  } else if (report.failures.back() == horizon) {
    report.threshold = std::nullopt;  // no threshold within horizon
  } else {
    report.threshold = report.failures.back() + 1;
  }
  return report;
}

std::vector<ThresholdReport> scan_tables(const CoeffTable& table, int m_max,
                                         std::int64_t horizon, int jobs) {
  if (m_max < 1 || m_max > 14) throw std::invalid_argument("m_max must be in 1..14");
  std::vector<ThresholdReport> reports;
  reports.reserve(2 * static_cast<std::size_t>(m_max));
  for (Family family : {Family::kLaguerre, Family::kToeplitzDet}) {
    for (int m = 1; m <= m_max; ++m) {
      FamilySpec spec{family, m, table.k};
      reports.push_back(find_threshold(spec, table, horizon, jobs));
    }
  }
  return reports;
}

}  // namespace deltak
