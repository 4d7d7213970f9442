#include "deltak/hpreal.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace deltak {

namespace {

mpfr_prec_t join(const HPReal& a, const HPReal& b) {
  return std::max(a.precision(), b.precision());
}

void require_prec(mpfr_prec_t prec) {
  if (prec < 2) throw std::invalid_argument("precision must be >= 2 bits");
}

}  // namespace

HPReal::HPReal(mpfr_prec_t prec) {
  require_prec(prec);
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

HPReal::HPReal(long value, mpfr_prec_t prec) {
  require_prec(prec);
  mpfr_init2(v_, prec);
  mpfr_set_si(v_, value, MPFR_RNDN);
}

HPReal::HPReal(const mpz_class& value, mpfr_prec_t prec) {
  require_prec(prec);
  mpfr_init2(v_, prec);
  mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
}

HPReal::HPReal(const mpq_class& value, mpfr_prec_t prec) {
  require_prec(prec);
  mpfr_init2(v_, prec);
  mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
}

HPReal::HPReal(const HPReal& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

HPReal::HPReal(HPReal&& other) noexcept {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_swap(v_, other.v_);
}

HPReal& HPReal::operator=(const HPReal& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

HPReal& HPReal::operator=(HPReal&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

HPReal::~HPReal() { mpfr_clear(v_); }

HPReal HPReal::pi(mpfr_prec_t prec) {
  HPReal out(prec);
  mpfr_const_pi(out.v_, MPFR_RNDN);
  return out;
}

HPReal HPReal::two_pow(long e, mpfr_prec_t prec) {
  HPReal out(prec);
  mpfr_set_si(out.v_, 1, MPFR_RNDN);
  mpfr_mul_2si(out.v_, out.v_, e, MPFR_RNDN);
  return out;
}

HPReal HPReal::from_str(const std::string& decimal, mpfr_prec_t prec) {
  HPReal out(prec);
  if (mpfr_set_str(out.v_, decimal.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("unparsable numeric literal: " + decimal);
  }
  return out;
}

std::string HPReal::str(int significant_digits) const {
  if (significant_digits < 2) significant_digits = 2;
  std::vector<char> buf(static_cast<std::size_t>(significant_digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", significant_digits - 1, v_);
  return std::string(buf.data());
}

HPReal operator+(const HPReal& a, const HPReal& b) {
  HPReal out(join(a, b));
  mpfr_add(out.v_, a.v_, b.v_, MPFR_RNDN);
  return out;
}

HPReal operator-(const HPReal& a, const HPReal& b) {
  HPReal out(join(a, b));
  mpfr_sub(out.v_, a.v_, b.v_, MPFR_RNDN);
  return out;
}

HPReal operator*(const HPReal& a, const HPReal& b) {
  HPReal out(join(a, b));
  mpfr_mul(out.v_, a.v_, b.v_, MPFR_RNDN);
  return out;
}

HPReal operator/(const HPReal& a, const HPReal& b) {
  HPReal out(join(a, b));
  mpfr_div(out.v_, a.v_, b.v_, MPFR_RNDN);
  return out;
}

HPReal operator-(const HPReal& a) {
  HPReal out(a.precision());
  mpfr_neg(out.v_, a.v_, MPFR_RNDN);
  return out;
}

HPReal operator*(long a, const HPReal& b) {
  HPReal out(b.precision());
  mpfr_mul_si(out.v_, b.v_, a, MPFR_RNDN);
  return out;
}

HPReal operator+(const HPReal& a, long b) {
  HPReal out(a.precision());
  mpfr_add_si(out.v_, a.v_, b, MPFR_RNDN);
  return out;
}

HPReal operator-(const HPReal& a, long b) {
  HPReal out(a.precision());
  mpfr_sub_si(out.v_, a.v_, b, MPFR_RNDN);
  return out;
}

HPReal operator/(const HPReal& a, long b) {
  HPReal out(a.precision());
  mpfr_div_si(out.v_, a.v_, b, MPFR_RNDN);
  return out;
}

HPReal operator/(long a, const HPReal& b) {
  HPReal out(b.precision());
  mpfr_si_div(out.v_, a, b.v_, MPFR_RNDN);
  return out;
}

bool operator<(const HPReal& a, const HPReal& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
bool operator<=(const HPReal& a, const HPReal& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
bool operator>(const HPReal& a, const HPReal& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
bool operator>=(const HPReal& a, const HPReal& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
bool operator==(const HPReal& a, const HPReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

HPReal sqrt(const HPReal& a) {
  HPReal out(a.precision());
  mpfr_sqrt(out.v_, a.v_, MPFR_RNDN);
  return out;
}

HPReal exp(const HPReal& a) {
  HPReal out(a.precision());
  mpfr_exp(out.v_, a.v_, MPFR_RNDN);
  return out;
}

HPReal abs(const HPReal& a) {
  HPReal out(a.precision());
  mpfr_abs(out.v_, a.v_, MPFR_RNDN);
  return out;
}

HPReal pow_si(const HPReal& base, long e) {
  HPReal out(base.precision());
  mpfr_pow_si(out.v_, base.v_, e, MPFR_RNDN);
  return out;
}

HPReal nth_root(const HPReal& a, unsigned long n) {
  HPReal out(a.precision());
  mpfr_rootn_ui(out.v_, a.v_, n, MPFR_RNDN);
  return out;
}

HPReal rel_diff(const HPReal& a, const HPReal& b) {
  HPReal diff = abs(a - b);
  HPReal scale = abs(a);
  HPReal babs = abs(b);
  if (babs > scale) scale = babs;
  if (scale.sgn() == 0) return HPReal(0L, join(a, b));
  return diff / scale;
}

}  // namespace deltak
