#include "deltak/series.hpp"

#include <stdexcept>
#include <string>

namespace deltak {

namespace {

void require_k(int k) {
  if (k != 1 && k != 2) {
    throw std::invalid_argument("k must be 1 or 2, got " + std::to_string(k));
  }
}

void require_horizon(std::int64_t n) {
  if (n < 0) {
    throw std::invalid_argument("horizon must be >= 0, got " + std::to_string(n));
  }
}

// Divisor sieve for sigma(1..N); values fit comfortably in 64 bits for any
// horizon we can afford to expand (sigma(m) <= 3*sigma_1(m) < 2^63 for
// m < 2^57 or so).
std::vector<std::uint64_t> sigma_sieve(int k, std::int64_t n_max) {
  EtaExponentProfile profile(k);
  std::vector<std::uint64_t> sigma(static_cast<std::size_t>(n_max) + 1, 0);
  for (std::int64_t j = 1; j <= n_max; ++j) {
    const std::uint64_t weight =
        static_cast<std::uint64_t>(j) * static_cast<std::uint64_t>(profile.exponent(j));
    for (std::int64_t m = j; m <= n_max; m += j) {
      sigma[static_cast<std::size_t>(m)] += weight;
    }
  }
  return sigma;
}

void check_table_invariants(const CoeffTable& table) {
  if (table.coeffs.empty() || table.coeffs[0] != 1) {
    throw std::logic_error("coefficient table must start with 1");
  }
  for (std::size_t n = 1; n < table.coeffs.size(); ++n) {
    if (table.coeffs[n] <= 0) {
      throw std::logic_error("coefficient " + std::to_string(n) + " is not positive");
    }
    // Strict monotonicity for n >= 1: an empirical check up to the horizon,
    // not a theorem.
    if (n >= 2 && table.coeffs[n] <= table.coeffs[n - 1]) {
      throw std::logic_error("coefficients not strictly increasing at n = " +
                             std::to_string(n));
    }
  }
}

// In-place multiply by (1 - q^j), truncated at degree n_max.
void apply_one_minus_qj(std::vector<mpz_class>& p, std::int64_t j, std::int64_t n_max) {
  for (std::int64_t i = n_max; i >= j; --i) {
    p[static_cast<std::size_t>(i)] -= p[static_cast<std::size_t>(i - j)];
  }
}

}  // namespace

EtaExponentProfile::EtaExponentProfile(int k_value) : k(k_value) { require_k(k_value); }

int EtaExponentProfile::exponent(std::int64_t j) const {
  if (j < 1) {
    throw std::invalid_argument("stride must be >= 1");
  }
  const int e = 3 + (j % (4 * k + 2) == 0) - (j % 2 == 0) - (j % (2 * k + 1) == 0);
  return e;
}

const mpz_class& CoeffTable::at(std::int64_t n) const {
  if (n < 0 || n > horizon()) {
    throw std::out_of_range("coefficient index " + std::to_string(n) +
                            " outside table horizon " + std::to_string(horizon()));
  }
  return coeffs[static_cast<std::size_t>(n)];
}

mpz_class sigma_weight(int k, std::int64_t m) {
  require_k(k);
  if (m < 1) {
    throw std::invalid_argument("sigma_weight requires m >= 1");
  }
  EtaExponentProfile profile(k);
  mpz_class total = 0;
  for (std::int64_t d = 1; d * d <= m; ++d) {
    if (m % d != 0) continue;
    total += mpz_class(d) * profile.exponent(d);
    const std::int64_t co = m / d;
    if (co != d) {
      total += mpz_class(co) * profile.exponent(co);
    }
  }
  return total;
}

CoeffTable expand_coeffs(int k, std::int64_t N) {
  require_k(k);
  require_horizon(N);
  CoeffTable table;
  table.k = k;
  table.coeffs.assign(1, mpz_class(1));
  extend_coeffs(table, N);
  return table;
}

void extend_coeffs(CoeffTable& table, std::int64_t N) {
  require_k(table.k);
  require_horizon(N);
  if (table.coeffs.empty() || table.coeffs[0] != 1) {
    throw std::invalid_argument("extend_coeffs needs a table with coeffs[0] = 1");
  }
  if (N <= table.horizon()) {
    return;
  }
  const std::vector<std::uint64_t> sigma = sigma_sieve(table.k, N);
  table.coeffs.reserve(static_cast<std::size_t>(N) + 1);
  mpz_class acc;
  for (std::int64_t n = table.horizon() + 1; n <= N; ++n) {
    acc = 0;
    for (std::int64_t m = 1; m <= n; ++m) {
      // acc += sigma(m) * Delta(n - m)
      mpz_addmul_ui(acc.get_mpz_t(), table.coeffs[static_cast<std::size_t>(n - m)].get_mpz_t(),
                    static_cast<unsigned long>(sigma[static_cast<std::size_t>(m)]));
    }
    if (!mpz_divisible_ui_p(acc.get_mpz_t(), static_cast<unsigned long>(n))) {
      throw std::logic_error("recurrence sum not divisible by n = " + std::to_string(n) +
                             "; exponent profile is wrong");
    }
    mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(n));
    table.coeffs.push_back(acc);
  }
  check_table_invariants(table);
}

CoeffTable naive_oracle(int k, std::int64_t N) {
  require_k(k);
  require_horizon(N);
  const std::size_t size = static_cast<std::size_t>(N) + 1;

  // Numerator: prod (1-q^{2n}) (1-q^{(2k+1)n}) truncated.
  std::vector<mpz_class> num(size, 0);
  num[0] = 1;
  for (std::int64_t j = 2; j <= N; j += 2) {
    apply_one_minus_qj(num, j, N);
  }
  for (std::int64_t j = 2 * k + 1; j <= N; j += 2 * k + 1) {
    apply_one_minus_qj(num, j, N);
  }

  // Denominator: prod (1-q^n)^3 (1-q^{(4k+2)n}) truncated.
  std::vector<mpz_class> den(size, 0);
  den[0] = 1;
  for (std::int64_t j = 1; j <= N; ++j) {
    apply_one_minus_qj(den, j, N);
    apply_one_minus_qj(den, j, N);
    apply_one_minus_qj(den, j, N);
  }
  for (std::int64_t j = 4 * k + 2; j <= N; j += 4 * k + 2) {
    apply_one_minus_qj(den, j, N);
  }

  // Invert the denominator series (constant term 1) by convolution.
  std::vector<mpz_class> inv(size, 0);
  inv[0] = 1;
  mpz_class acc;
  for (std::size_t n = 1; n < size; ++n) {
    acc = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      acc += den[i] * inv[n - i];
    }
    inv[n] = -acc;
  }

  // Full truncated product numerator * inverse.
  CoeffTable table;
  table.k = k;
  table.coeffs.assign(size, mpz_class(0));
  for (std::size_t i = 0; i < size; ++i) {
    if (num[i] == 0) continue;
    for (std::size_t j = 0; i + j < size; ++j) {
      table.coeffs[i + j] += num[i] * inv[j];
    }
  }
  check_table_invariants(table);
  return table;
}

}  // namespace deltak
