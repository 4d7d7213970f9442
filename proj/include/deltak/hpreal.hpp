#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace deltak {

// Arbitrary-precision binary floating value carrying its working precision.
// Thin RAII wrapper over mpfr_t; all rounding is to nearest.  Binary
// operations produce results at the larger of the two operand precisions.
class HPReal {
 public:
  static constexpr mpfr_prec_t kDefaultPrec = 256;

  HPReal() : HPReal(kDefaultPrec) {}
  explicit HPReal(mpfr_prec_t prec);
  HPReal(long value, mpfr_prec_t prec);
  HPReal(const mpz_class& value, mpfr_prec_t prec);
  HPReal(const mpq_class& value, mpfr_prec_t prec);

  HPReal(const HPReal& other);
  HPReal(HPReal&& other) noexcept;
  HPReal& operator=(const HPReal& other);
  HPReal& operator=(HPReal&& other) noexcept;
  ~HPReal();

  static HPReal pi(mpfr_prec_t prec);
  static HPReal two_pow(long e, mpfr_prec_t prec);  // 2^e, exact
  static HPReal from_str(const std::string& decimal, mpfr_prec_t prec);

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  int sgn() const { return mpfr_sgn(v_); }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  double approx() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Scientific-notation decimal string, deterministic for a given value.
  std::string str(int significant_digits = 30) const;

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

  friend HPReal operator+(const HPReal& a, const HPReal& b);
  friend HPReal operator-(const HPReal& a, const HPReal& b);
  friend HPReal operator*(const HPReal& a, const HPReal& b);
  friend HPReal operator/(const HPReal& a, const HPReal& b);
  friend HPReal operator-(const HPReal& a);
  friend HPReal operator*(long a, const HPReal& b);
  friend HPReal operator+(const HPReal& a, long b);
  friend HPReal operator-(const HPReal& a, long b);
  friend HPReal operator/(const HPReal& a, long b);
  friend HPReal operator/(long a, const HPReal& b);

  friend bool operator<(const HPReal& a, const HPReal& b);
  friend bool operator<=(const HPReal& a, const HPReal& b);
  friend bool operator>(const HPReal& a, const HPReal& b);
  friend bool operator>=(const HPReal& a, const HPReal& b);
  friend bool operator==(const HPReal& a, const HPReal& b);

  friend HPReal sqrt(const HPReal& a);
  friend HPReal exp(const HPReal& a);
  friend HPReal abs(const HPReal& a);
  friend HPReal pow_si(const HPReal& base, long e);
  friend HPReal nth_root(const HPReal& a, unsigned long n);

 private:
  mpfr_t v_;
};

// |a-b| / max(|a|,|b|); zero when both are zero.
HPReal rel_diff(const HPReal& a, const HPReal& b);

}  // namespace deltak
