#include "deltak/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace deltak {

namespace {

constexpr long kGuardBits = 32;

void require_k12(int k) {
  if (k != 1 && k != 2) throw std::invalid_argument("k must be 1 or 2");
}

HPReal at_prec(const HPReal& v, mpfr_prec_t prec) {
  HPReal out(prec);
  mpfr_set(out.raw(), v.raw(), MPFR_RNDN);
  return out;
}

HPReal hp_of_q(const mpq_class& q, mpfr_prec_t prec) { return HPReal(q, prec); }

mpq_class mpq_pow_ui(const mpq_class& q, unsigned long e) {
  mpq_class out;
  mpz_pow_ui(out.get_num_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), q.get_den_mpz_t(), e);
  return out;
}

mpz_class mpz_pow2(unsigned long b, unsigned long e) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), b, e);
  return out;
}

HPReal hp_pow(const HPReal& base, const HPReal& e) {
  HPReal out(std::max(base.precision(), e.precision()));
  mpfr_pow(out.raw(), base.raw(), e.raw(), MPFR_RNDN);
  return out;
}

// Doubling-and-compare acceptance: evaluate at p and 2p, require relative
// agreement 2^{-p/2}, return the 2p value.
template <typename F>
HPReal accept(F&& eval, mpfr_prec_t prec, const char* what) {
  HPReal lo = eval(prec);
  HPReal hi = eval(2 * prec);
  const HPReal tol = HPReal::two_pow(-static_cast<long>(prec / 2), 64);
  if (!(rel_diff(lo, hi) <= tol)) {
    throw std::runtime_error(std::string("precision acceptance failed in ") + what +
                             ": p=" + std::to_string(prec) + " value " + lo.str(25) +
                             " vs 2p value " + hi.str(25));
  }
  return hi;
}

// Error allowance for an inequality whose two sides have combined magnitude
// `scale`, evaluated with acceptance at precision p.
HPReal budget_for(mpfr_prec_t prec, const HPReal& scale) {
  return abs(scale) * HPReal::two_pow(-static_cast<long>(prec / 2) + 2, 64);
}

// ---------------------------------------------------------------------------
// I_2 evaluation paths
// ---------------------------------------------------------------------------

HPReal i2_series_eval(const HPReal& s_in, mpfr_prec_t pw) {
  const HPReal s = at_prec(s_in, pw);
  if (s.sgn() == 0) return HPReal(0L, pw);
  const HPReal half = s / 2;
  const HPReal q = half * half;
  HPReal term = q / 2;  // j = 0: (s/2)^2 / (0! 2!)
  HPReal sum = term;
  const HPReal cutoff = HPReal::two_pow(-static_cast<long>(pw) - 8, 64);
  // Terms are positive; once the ratio falls below 1/2 the tail is bounded by
  // twice the current term, so the stopping rule absorbs the geometric tail.
  for (long j = 0; j < 100000000; ++j) {
    term = term * q / ((j + 1) * (j + 3));
    sum = sum + term;
    if (term < sum * cutoff) {
      const HPReal ratio = q / ((j + 2) * (j + 4));
      if (ratio < HPReal(1L, 64) / 2) break;
    }
  }
  return sum;
}

HPReal i2_integral_eval(const HPReal& s_in, mpfr_prec_t pw) {
  const HPReal s = at_prec(s_in, pw);
  if (s.sgn() == 0) return HPReal(0L, pw);
  const HPReal pi = HPReal::pi(pw);
  const HPReal half_pi = pi / 2;
  const double sd = std::max(s.approx(), 2.0);
  // Truncation point: the summand decays like cosh(u)^-5 with
  // u = (pi/2) sinh(tau); pick tau_max so the discarded tail is far below
  // target precision relative to the integral's magnitude.
  const double u_min =
      ((static_cast<double>(pw) + 96.0) * 0.6932 + 2.5 * std::log(sd)) / 5.0 + 2.0;
  const double tau_max = std::asinh(2.0 * u_min / 3.14159) + 0.5;

  auto integrand = [&](const HPReal& tau) {
    HPReal u(pw), cosh_tau(pw), cosh_u(pw), tanh_u(pw);
    mpfr_sinh(u.raw(), tau.raw(), MPFR_RNDN);
    u = u * half_pi;
    mpfr_cosh(cosh_tau.raw(), tau.raw(), MPFR_RNDN);
    mpfr_cosh(cosh_u.raw(), u.raw(), MPFR_RNDN);
    mpfr_tanh(tanh_u.raw(), u.raw(), MPFR_RNDN);
    return half_pi * cosh_tau * exp(s * tanh_u) / pow_si(cosh_u, 5);
  };

  // Trapezoid sums with level doubling; each refinement reuses prior nodes.
  HPReal h = HPReal(1L, pw) / 2;
  long steps = static_cast<long>(tau_max / 0.5) + 1;
  HPReal q_prev(pw);
  HPReal q_cur = integrand(HPReal(0L, pw));
  for (long m = 1; m <= steps; ++m) {
    HPReal tau = m * h;
    q_cur = q_cur + integrand(tau) + integrand(-tau);
  }
  q_cur = q_cur * h;
  const HPReal target = HPReal::two_pow(-static_cast<long>(pw) + 4, 64);
  for (int level = 0; level < 16; ++level) {
    h = h / 2;
    steps = static_cast<long>(tau_max / h.approx()) + 1;
    HPReal odd_sum(pw);
    for (long m = 1; m <= steps; m += 2) {
      HPReal tau = m * h;
      odd_sum = odd_sum + integrand(tau) + integrand(-tau);
    }
    q_prev = q_cur;
    q_cur = q_cur / 2 + odd_sum * h;
    if (rel_diff(q_cur, q_prev) < target) break;
  }
  return s * s / (3 * pi) * q_cur;
}

const std::vector<mpq_class>& bi_coeffs(BiVariant variant) {
  static const std::vector<mpq_class> kShort = [] {
    std::vector<mpq_class> v;
    for (const char* t : {"1", "-15/8", "105/128", "315/1024", "10395/32768",
                          "135135/262144"}) {
      mpq_class q(t);
      q.canonicalize();
      v.push_back(q);
    }
    return v;
  }();
  static const std::vector<mpq_class> kLong = [] {
    std::vector<mpq_class> v = kShort;
    for (const char* t :
         {"4729725/4194304", "103378275/33554432", "21606059475/2147483648",
          "655383804075/17179869184", "45221482481175/274877906944",
          "1747193641318125/2199023255552"}) {
      mpq_class q(t);
      q.canonicalize();
      v.push_back(q);
    }
    return v;
  }();
  return variant == BiVariant::kShort ? kShort : kLong;
}

HPReal b_i_eval(const HPReal& s_in, BiVariant variant, mpfr_prec_t pw) {
  const HPReal s = at_prec(s_in, pw);
  const auto& coeffs = bi_coeffs(variant);
  const HPReal inv = 1L / s;
  HPReal acc(pw);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * inv + hp_of_q(*it, pw);
  }
  return acc;
}

HPReal i2_prefactor(const HPReal& s, mpfr_prec_t pw) {
  const HPReal pi = HPReal::pi(pw);
  return exp(s) / sqrt(2 * pi * s);
}

HPReal i2_bound_eval(const HPReal& s_in, I2Enclosure variant, bool upper, mpfr_prec_t pw) {
  const HPReal s = at_prec(s_in, pw);
  const BiVariant bv = variant == I2Enclosure::kOrder5 ? BiVariant::kShort : BiVariant::kLong;
  const long rem_num = variant == I2Enclosure::kOrder5 ? 27L : 6148836L;
  const long rem_pow = variant == I2Enclosure::kOrder5 ? 6L : 12L;
  const HPReal remainder = rem_num / pow_si(s, rem_pow);
  const HPReal body = b_i_eval(s, bv, pw);
  return i2_prefactor(s, pw) * (upper ? body + remainder : body - remainder);
}

// ---------------------------------------------------------------------------
// Sandwich geometry
// ---------------------------------------------------------------------------

HPReal x_eval(int k, std::int64_t n, mpfr_prec_t pw) {
  const HPReal pi = HPReal::pi(pw);
  return pi * sqrt(HPReal(24 * n - (2 * k + 2), pw)) / 6;
}

HPReal sqrt_alpha(const mpq_class& alpha, mpfr_prec_t pw) {
  return sqrt(hp_of_q(alpha, pw));
}

HPReal sandwich_side_eval(int k, std::int64_t n, SandwichWidth width, bool upper,
                          mpfr_prec_t pw) {
  const mpq_class alpha = alpha_of(k);
  const HPReal x = x_eval(k, n, pw);
  const HPReal s = sqrt_alpha(alpha, pw) * x;
  const I2Enclosure enc =
      width == SandwichWidth::kPow6 ? I2Enclosure::kOrder5 : I2Enclosure::kOrder11;
  const long wexp = width == SandwichWidth::kPow6 ? 6 : 10;
  const HPReal pi = HPReal::pi(pw);
  const HPReal main = hp_of_q(alpha, pw) * pow_si(pi, 3) / (18 * x * x) *
                      i2_bound_eval(s, enc, upper, pw);
  const HPReal wiggle = 1L / pow_si(x, wexp);
  return upper ? main * (HPReal(1L, pw) + wiggle) : main * (HPReal(1L, pw) - wiggle);
}

HPReal fg_side_eval(int k, std::int64_t n, FgVariant variant, bool upper, mpfr_prec_t pw) {
  const mpq_class alpha = alpha_of(k);
  const HPReal x = x_eval(k, n, pw);
  const HPReal u = sqrt(x);
  const HPReal s = sqrt_alpha(alpha, pw) * u * u;
  const long poly_deg = variant == FgVariant::kDeg12 ? 12 : 20;
  const long denom_deg = variant == FgVariant::kDeg12 ? 16 : 24;
  const I2Enclosure enc =
      variant == FgVariant::kDeg12 ? I2Enclosure::kOrder5 : I2Enclosure::kOrder11;
  const HPReal weight = upper ? pow_si(u, poly_deg) + 1 : pow_si(u, poly_deg) - 1;
  const HPReal pi = HPReal::pi(pw);
  return hp_of_q(alpha, pw) * pow_si(pi, 3) / (18 * pow_si(u, denom_deg)) * weight *
         i2_bound_eval(s, enc, upper, pw);
}

// ---------------------------------------------------------------------------
// Fourth-root strand bounds.  Each bound is a sum of terms c * pi^a * z^b
// with exact rational c.
// ---------------------------------------------------------------------------

struct BoundTerm {
  mpq_class c;
  int pi_pow;
  int z_pow;
};
using BoundPoly = std::vector<BoundTerm>;

BoundTerm bt(const char* c, int pi_pow, int z_pow) {
  mpq_class q(c);
  q.canonicalize();
  return BoundTerm{q, pi_pow, z_pow};
}

struct StrandBounds {
  BoundPoly w1, w2, y1, y2, i1, i2, j1, j2;
};

const StrandBounds& strand_bounds(ProofFamily family) {
  static const StrandBounds kDeg19 = [] {
    StrandBounds b;
    b.w1 = {bt("1", 0, 1), bt("-1/3", 2, -3), bt("-1/6", 4, -7), bt("-7/54", 6, -11),
            bt("-77/648", 8, -15), bt("-39/324", 10, -19)};
    b.w2 = {bt("1", 0, 1), bt("-1/3", 2, -3), bt("-1/6", 4, -7), bt("-7/54", 6, -11),
            bt("-77/648", 8, -15), bt("-77/648", 10, -19)};
    b.y1 = {bt("1", 0, 1), bt("-1/6", 2, -3), bt("-1/24", 4, -7), bt("-7/432", 6, -11),
            bt("-77/10368", 8, -15), bt("-13/3456", 10, -19)};
    b.y2 = {bt("1", 0, 1), bt("-1/6", 2, -3), bt("-1/24", 4, -7), bt("-7/432", 6, -11),
            bt("-77/10368", 8, -15), bt("-77/20736", 10, -19)};
    b.i1 = {bt("1", 0, 1), bt("1/6", 2, -3), bt("-1/24", 4, -7), bt("7/432", 6, -11),
            bt("-77/10368", 8, -15)};
    b.i2 = {bt("1", 0, 1), bt("1/6", 2, -3), bt("-1/24", 4, -7), bt("7/432", 6, -11),
            bt("-77/10368", 8, -15), bt("77/20736", 10, -19)};
    b.j1 = {bt("1", 0, 1), bt("1/3", 2, -3), bt("-1/6", 4, -7), bt("7/54", 6, -11),
            bt("-77/648", 8, -15)};
    b.j2 = {bt("1", 0, 1), bt("1/3", 2, -3), bt("-1/6", 4, -7), bt("7/54", 6, -11),
            bt("-77/648", 8, -15), bt("77/648", 10, -19)};
    return b;
  }();
  static const StrandBounds kDeg23 = [] {
    StrandBounds b;
    b.w1 = {bt("1", 0, 1),          bt("-1/3", 2, -3),      bt("-1/6", 4, -7),
            bt("-7/54", 6, -11),    bt("-77/648", 8, -15),  bt("-77/468", 10, -19),
            bt("-61/486", 12, -23)};
    b.w2 = {bt("1", 0, 1),          bt("-1/3", 2, -3),      bt("-1/6", 4, -7),
            bt("-7/54", 6, -11),    bt("-77/648", 8, -15),  bt("-77/648", 10, -19),
            bt("-1463/11664", 12, -23)};
    b.y1 = {bt("1", 0, 1),           bt("-1/6", 2, -3),        bt("-1/24", 4, -7),
            bt("-7/432", 6, -11),    bt("-77/10368", 8, -15),  bt("-13/3456", 10, -19),
            bt("-61/31104", 12, -23)};
    b.y2 = {bt("1", 0, 1),           bt("-1/6", 2, -3),        bt("-1/24", 4, -7),
            bt("-7/432", 6, -11),    bt("-77/10368", 8, -15),  bt("-77/20736", 10, -19),
            bt("-1463/746496", 12, -23)};
    b.i1 = {bt("1", 0, 1),           bt("1/6", 2, -3),         bt("-1/24", 4, -7),
            bt("7/432", 6, -11),     bt("-77/10368", 8, -15),  bt("77/20736", 10, -19),
            bt("-1463/746496", 12, -23)};
    b.i2 = {bt("1", 0, 1),           bt("1/6", 2, -3),         bt("-1/24", 4, -7),
            bt("7/432", 6, -11),     bt("-77/10368", 8, -15),  bt("77/20736", 10, -19)};
    b.j1 = {bt("1", 0, 1),        bt("1/3", 2, -3),      bt("-1/6", 4, -7),
            bt("7/54", 6, -11),   bt("-77/648", 8, -15), bt("77/648", 10, -19),
            bt("-1463/11664", 12, -23)};
    // The z^-19 correction here carries pi^12 rather than the Taylor-pattern
    // pi^10, which only makes the upper bound looser; kept as-is.
    b.j2 = {bt("1", 0, 1), bt("1/3", 2, -3), bt("-1/6", 4, -7), bt("7/54", 6, -11),
            bt("-77/648", 8, -15), bt("77/648", 12, -19)};
    return b;
  }();
  return family == ProofFamily::kLaguerre ? kDeg19 : kDeg23;
}

HPReal eval_bound_poly(const BoundPoly& poly, const HPReal& z, mpfr_prec_t pw) {
  const HPReal pi = HPReal::pi(pw);
  HPReal acc(pw);
  for (const auto& term : poly) {
    HPReal v = hp_of_q(term.c, pw);
    if (term.pi_pow != 0) v = v * pow_si(pi, term.pi_pow);
    v = v * pow_si(z, term.z_pow);
    acc = acc + v;
  }
  return acc;
}

// Numerators of the closed rational forms of i2^2 + y2^2 - 2z^2 and
// j2^2 + w2^2 - 2z^2 (denominators 214990848 z^38 and 209952 z^38 are
// positive, so only the numerator sign matters).
const BoundPoly& negativity_numerator(bool iy) {
  static const BoundPoly kIy = {bt("5929", 20, 0), bt("75460", 16, 8),
                                bt("911232", 12, 16), bt("-3317760", 8, 24),
                                bt("-23887872", 4, 32)};
  static const BoundPoly kJw = {bt("5929", 20, 0), bt("18865", 16, 8),
                                bt("56952", 12, 16), bt("-51840", 8, 24),
                                bt("-93312", 4, 32)};
  return iy ? kIy : kJw;
}

HPReal eval_poly_abs_scale(const BoundPoly& poly, const HPReal& z, mpfr_prec_t pw) {
  const HPReal pi = HPReal::pi(pw);
  HPReal acc(pw);
  for (const auto& term : poly) {
    HPReal v = hp_of_q(term.c, pw);
    if (term.pi_pow != 0) v = v * pow_si(pi, term.pi_pow);
    v = v * pow_si(z, term.z_pow);
    acc = acc + abs(v);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Tail coefficients of the polynomialized positivity argument
// ---------------------------------------------------------------------------

struct TailCoeffs {
  HPReal a1, a2, a3;  // expected signs +, -, +
  HPReal scale;       // sum of |addends|, for error budgets
};

TailCoeffs tail_coeffs(const mpq_class& alpha, ProofFamily family, mpfr_prec_t pw) {
  const HPReal pi = HPReal::pi(pw);
  TailCoeffs out{HPReal(pw), HPReal(pw), HPReal(pw), HPReal(pw)};
  if (family == ProofFamily::kLaguerre) {
    const HPReal pi8 = pow_si(pi, 8);
    const HPReal a2q = hp_of_q(mpq_pow_ui(alpha, 2), pw);
    const HPReal a3q = hp_of_q(mpq_pow_ui(alpha, 3), pw);
    const HPReal a4q = hp_of_q(mpq_pow_ui(alpha, 4), pw);
    const HPReal a5h = sqrt(hp_of_q(mpq_pow_ui(alpha, 5), pw));
    const HPReal f1 = HPReal(mpz_class(mpz_pow2(2, 131) * mpz_pow2(3, 86) * 25), pw);
    const HPReal f2 = HPReal(mpz_class(mpz_pow2(2, 134) * mpz_pow2(3, 84) * 25), pw);
    const HPReal f3 = HPReal(mpz_class(mpz_pow2(2, 136) * mpz_pow2(3, 84) * 5), pw);
    out.a1 = f1 * a2q * (77 * (pi8 * a4q) - 3528 - 792 * a3q);
    out.a2 = -(f2 * a5h * (13 * (pi8 * a4q) - 9072 - 648 * a3q));
    out.a3 = f3 * a3q * (pi8 * a4q - 6048 - 216 * a3q);
  } else {
    const HPReal pi12 = pow_si(pi, 12);
    const HPReal a1q = hp_of_q(alpha, pw);
    const HPReal a18q = hp_of_q(mpq_pow_ui(alpha, 18), pw);
    const HPReal a35h = sqrt(hp_of_q(mpq_pow_ui(alpha, 35), pw));
    const HPReal a39h = sqrt(hp_of_q(mpq_pow_ui(alpha, 39), pw));
    const HPReal f1 = HPReal(mpz_class(mpz_pow2(2, 260) * mpz_pow2(3, 165) * 5), pw);
    const HPReal f2 = HPReal(mpz_class(mpz_pow2(2, 264) * mpz_pow2(3, 166) * 5), pw);
    const HPReal f3 = HPReal(mpz_class(mpz_pow2(2, 267) * mpz_pow2(3, 163) * 5), pw);
    out.a1 = f1 * a35h * (HPReal(524880L, pw) + 2123 * (pi12 * a1q));
    out.a2 = -(f2 * a18q * (HPReal(1944L, pw) + 7 * (pi12 * a1q)));
    out.a3 = f3 * pi12 * a39h;
  }
  out.scale = abs(out.a1) + abs(out.a2) + abs(out.a3);
  return out;
}

void require_alpha(const mpq_class& alpha) {
  if (alpha != mpq_class(7, 3) && alpha != mpq_class(12, 5)) {
    throw std::invalid_argument("alpha must be 7/3 or 12/5");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Public surface
// ---------------------------------------------------------------------------

bool CheckReport::all_pass() const {
  for (const auto& item : items) {
    if (!item.pass) return false;
  }
  return true;
}

mpq_class alpha_of(int k) {
  require_k12(k);
  return mpq_class(5 * k + 2, 2 * k + 1);
}

HPReal x_of(int k, std::int64_t n, mpfr_prec_t prec) {
  require_k12(k);
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  return x_eval(k, n, prec);
}

ModelParams::ModelParams(int k_value, std::int64_t n_value, mpfr_prec_t prec)
    : k(k_value), n(n_value), alpha(alpha_of(k_value)), x(x_of(k_value, n_value, prec)),
      u(sqrt(x_of(k_value, n_value, prec))) {}

HPReal i2_series(const HPReal& s, mpfr_prec_t prec) {
  if (s.sgn() < 0) throw std::invalid_argument("i2_series requires s >= 0");
  return accept([&](mpfr_prec_t pw) { return i2_series_eval(s, pw + kGuardBits); }, prec,
                "i2_series");
}

HPReal i2_integral(const HPReal& s, mpfr_prec_t prec) {
  if (s.sgn() < 0 || s > HPReal(64L, 64)) {
    throw std::invalid_argument("i2_integral cross-check regime is 0 <= s <= 64");
  }
  return accept([&](mpfr_prec_t pw) { return i2_integral_eval(s, pw + kGuardBits); }, prec,
                "i2_integral");
}

HPReal b_i(const HPReal& s, BiVariant variant, mpfr_prec_t prec) {
  if (s.sgn() <= 0) throw std::invalid_argument("b_i requires s > 0");
  return accept([&](mpfr_prec_t pw) { return b_i_eval(s, variant, pw); }, prec, "b_i");
}

BoundPair i2_bounds(const HPReal& s, I2Enclosure variant, mpfr_prec_t prec, bool unchecked) {
  if (!unchecked) {
    const long min_s = variant == I2Enclosure::kOrder5 ? 28 : 50;
    if (s < HPReal(min_s, 64)) {
      throw std::invalid_argument("s below the enclosure's validity threshold " +
                                  std::to_string(min_s));
    }
  }
  BoundPair pair{
      accept([&](mpfr_prec_t pw) { return i2_bound_eval(s, variant, false, pw); }, prec,
             "i2_bounds.lower"),
      accept([&](mpfr_prec_t pw) { return i2_bound_eval(s, variant, true, pw); }, prec,
             "i2_bounds.upper"),
      variant == I2Enclosure::kOrder5 ? "order5" : "order11"};
  return pair;
}

HPReal g_checkpoint(const HPReal& s, mpfr_prec_t prec) {
  if (s.sgn() <= 0) throw std::invalid_argument("g_checkpoint requires s > 0");
  return accept(
      [&](mpfr_prec_t pw) {
        const HPReal sv = at_prec(s, pw);
        const HPReal pi = HPReal::pi(pw);
        const HPReal sqrt2 = sqrt(HPReal(2L, pw));
        const HPReal s_15_2 = pow_si(sv, 7) * sqrt(sv);
        const HPReal head =
            (HPReal(91785L, pw) + 4096 * (sqrt2 * sv)) / (12288 * sqrt(pi));
        return head * exp(-sv) * s_15_2 + HPReal(4729725L, pw) / (131072 * sqrt2);
      },
      prec, "g_checkpoint");
}

HPReal g_decay_factor(const HPReal& s, mpfr_prec_t prec) {
  return accept(
      [&](mpfr_prec_t pw) {
        const HPReal sv = at_prec(s, pw);
        const HPReal sqrt2 = sqrt(HPReal(2L, pw));
        return 8192 * (sqrt2 * sv * sv) + (HPReal(183570L, pw) - 69632 * sqrt2) * sv -
               HPReal(1376775L, pw);
      },
      prec, "g_decay_factor");
}

HPReal upper_gamma(const HPReal& a, const HPReal& s, mpfr_prec_t prec) {
  if (a.sgn() <= 0 || s.sgn() <= 0) {
    throw std::invalid_argument("upper_gamma requires a > 0, s > 0");
  }
  return accept(
      [&](mpfr_prec_t pw0) {
        const mpfr_prec_t pw = pw0 + kGuardBits;
        const HPReal av = at_prec(a, pw);
        const HPReal sv = at_prec(s, pw);
        const HPReal front = hp_pow(sv, av) * exp(-sv);
        const HPReal eps = HPReal::two_pow(-static_cast<long>(pw) - 8, 64);
        if (sv < av + 1) {
          // Lower series gamma(a,s) = s^a e^-s sum s^n / (a (a+1) ... (a+n)),
          // then subtract from Gamma(a).
          HPReal term = 1L / av;
          HPReal sum = term;
          HPReal denom = av;
          for (long i = 1; i < 1000000; ++i) {
            denom = denom + 1;
            term = term * sv / denom;
            sum = sum + term;
            if (term < sum * eps) break;
          }
          HPReal gamma_a(pw);
          mpfr_gamma(gamma_a.raw(), av.raw(), MPFR_RNDN);
          return gamma_a - front * sum;
        }
        // Continued fraction (modified Lentz).
        const HPReal tiny = HPReal::two_pow(-4 * static_cast<long>(pw), 64);
        HPReal b = sv + 1 - av;
        HPReal c = 1L / tiny;
        HPReal d = 1L / b;
        HPReal h = d;
        for (long i = 1; i < 1000000; ++i) {
          const HPReal an = -i * (HPReal(i, pw) - av);
          b = b + 2;
          d = an * d + b;
          if (d.sgn() == 0) d = tiny;
          c = b + an / c;
          if (c.sgn() == 0) c = tiny;
          d = 1L / d;
          const HPReal delta = d * c;
          h = h * delta;
          if (abs(delta - 1) < eps) break;
        }
        return front * h;
      },
      prec, "upper_gamma");
}

bool gamma_tail_check(const HPReal& a, const HPReal& s, mpfr_prec_t prec) {
  if (a < HPReal(1L, 64)) throw std::invalid_argument("gamma_tail_check requires a >= 1");
  if (s < a) throw std::invalid_argument("gamma_tail_check requires s >= a");
  const HPReal value = upper_gamma(a, s, prec);
  const HPReal bound = accept(
      [&](mpfr_prec_t pw) {
        const HPReal av = at_prec(a, pw);
        const HPReal sv = at_prec(s, pw);
        return av * hp_pow(sv, av - 1) * exp(-sv);
      },
      prec, "gamma_tail_bound");
  // The bound is an equality at a = 1: accept margins down to -budget.
  const HPReal margin = bound - value;
  const HPReal budget = budget_for(prec, abs(bound) + abs(value));
  return margin >= -budget;
}

BoundPair delta_sandwich(const ModelParams& params, SandwichWidth width, mpfr_prec_t prec,
                         bool unchecked) {
  if (!unchecked && params.n < 3512) {
    throw std::invalid_argument("delta_sandwich is certified for n >= 3512");
  }
  const char* tag = width == SandwichWidth::kPow6 ? "pow6" : "pow10";
  return BoundPair{
      accept([&](mpfr_prec_t pw) { return sandwich_side_eval(params.k, params.n, width,
                                                             false, pw); },
             prec, "delta_sandwich.lower"),
      accept([&](mpfr_prec_t pw) { return sandwich_side_eval(params.k, params.n, width,
                                                             true, pw); },
             prec, "delta_sandwich.upper"),
      tag};
}

BoundPair fg_bounds(const ModelParams& params, FgVariant variant, mpfr_prec_t prec,
                    bool unchecked) {
  if (!unchecked && params.n < 3512) {
    throw std::invalid_argument("fg_bounds is certified for n >= 3512");
  }
  const char* tag = variant == FgVariant::kDeg12 ? "deg12" : "deg20";
  return BoundPair{
      accept([&](mpfr_prec_t pw) { return fg_side_eval(params.k, params.n, variant, false,
                                                       pw); },
             prec, "fg_bounds.lower"),
      accept([&](mpfr_prec_t pw) { return fg_side_eval(params.k, params.n, variant, true,
                                                       pw); },
             prec, "fg_bounds.upper"),
      tag};
}

CheckReport exp_tail_check(const std::vector<HPReal>& x_grid, mpfr_prec_t prec) {
  CheckReport report;
  report.title = "exp_tail";
  for (const auto& x : x_grid) {
    if (x < HPReal(152L, 64)) {
      throw std::invalid_argument("exp_tail_check grid points must be >= 152");
    }
    const HPReal lhs = accept(
        [&](mpfr_prec_t pw) {
          const HPReal xv = at_prec(x, pw);
          return 72 * exp(-(sqrt(HPReal(21L, pw)) / 6) * xv);
        },
        prec, "exp_tail.lhs");
    for (long power : {6L, 10L}) {
      const HPReal rhs = accept(
          [&](mpfr_prec_t pw) { return 1L / (2 * pow_si(at_prec(x, pw), power)); }, prec,
          "exp_tail.rhs");
      CheckItem item{"x=" + x.str(6) + " pow" + std::to_string(power), false, HPReal(),
                     HPReal()};
      item.margin = rhs - lhs;
      item.budget = budget_for(prec, abs(rhs) + abs(lhs));
      item.pass = item.margin > item.budget;
      report.items.push_back(std::move(item));
    }
  }
  return report;
}

CheckReport expansion_sandwich_check(int k, std::int64_t n, ProofFamily family,
                                     mpfr_prec_t prec, bool unchecked) {
  require_k12(k);
  const std::int64_t entry = family == ProofFamily::kLaguerre ? 122 : 2404;
  if (!unchecked && n < entry) {
    throw std::invalid_argument("family valid from n >= " + std::to_string(entry));
  }
  CheckReport report;
  report.title = std::string("expansion_sandwich k=") + std::to_string(k) +
                 " n=" + std::to_string(n) +
                 (family == ProofFamily::kLaguerre ? " deg19" : " deg23");

  const StrandBounds& bounds = strand_bounds(family);
  // z = u_k(n+2); w,y,i,j are the fourth roots displaced by multiples of
  // 2 pi^2 / 3 in z^4.
  auto quartic_root = [&](long numer, mpfr_prec_t pw) {
    const HPReal z = sqrt(x_eval(k, n + 2, pw));
    const HPReal pi = HPReal::pi(pw);
    return nth_root(pow_si(z, 4) + numer * (pi * pi) / 3, 4);
  };
  struct Strand {
    const char* name;
    long displacement;  // z^4 displacement in units of pi^2/3
    const BoundPoly* lower;
    const BoundPoly* upper;
  };
  const Strand strands[] = {
      {"w", -4, &bounds.w1, &bounds.w2},
      {"y", -2, &bounds.y1, &bounds.y2},
      {"i", 2, &bounds.i1, &bounds.i2},
      {"j", 4, &bounds.j1, &bounds.j2},
  };
  for (const auto& strand : strands) {
    const HPReal value = accept(
        [&](mpfr_prec_t pw) { return quartic_root(strand.displacement, pw); }, prec,
        "expansion.value");
    for (bool upper : {false, true}) {
      const BoundPoly& poly = upper ? *strand.upper : *strand.lower;
      const HPReal bound = accept(
          [&](mpfr_prec_t pw) {
            return eval_bound_poly(poly, sqrt(x_eval(k, n + 2, pw)), pw);
          },
          prec, "expansion.bound");
      CheckItem item{std::string(strand.name) + (upper ? "_upper" : "_lower"), false,
                     HPReal(), HPReal()};
      item.margin = upper ? bound - value : value - bound;
      item.budget = budget_for(prec, abs(bound) + abs(value));
      item.pass = item.margin > item.budget;
      report.items.push_back(std::move(item));
    }
  }

  for (bool iy : {true, false}) {
    const BoundPoly& numerator = negativity_numerator(iy);
    const HPReal value = accept(
        [&](mpfr_prec_t pw) {
          return eval_bound_poly(numerator, sqrt(x_eval(k, n + 2, pw)), pw);
        },
        prec, "expansion.negativity");
    const HPReal scale = eval_poly_abs_scale(numerator, sqrt(x_eval(k, n + 2, 2 * prec)),
                                             2 * prec);
    CheckItem item{iy ? "iy_negativity" : "jw_negativity", false, HPReal(), HPReal()};
    item.margin = -value;
    item.budget = budget_for(prec, scale);
    item.pass = item.margin > item.budget;
    report.items.push_back(std::move(item));
  }
  return report;
}

CheckReport phi_bound_check(const std::vector<HPReal>& t_grid, mpfr_prec_t prec) {
  CheckReport report;
  report.title = "phi_bound";
  static const std::vector<mpq_class> kPhi4 = {mpq_class(1), mpq_class(1), mpq_class(1, 2),
                                               mpq_class(1, 6), mpq_class(1, 24)};
  for (const auto& t : t_grid) {
    if (t.sgn() >= 0) throw std::invalid_argument("phi_bound_check grid points must be < 0");
    auto taylor = [&](mpfr_prec_t pw, bool with_quintic) {
      const HPReal tv = at_prec(t, pw);
      HPReal acc = with_quintic ? hp_of_q(mpq_class(1, 120), pw) : HPReal(0L, pw);
      for (auto it = kPhi4.rbegin(); it != kPhi4.rend(); ++it) {
        acc = acc * tv + hp_of_q(*it, pw);
      }
      return acc;
    };
    const HPReal et =
        accept([&](mpfr_prec_t pw) { return exp(at_prec(t, pw)); }, prec, "phi.exp");
    const HPReal upper =
        accept([&](mpfr_prec_t pw) { return taylor(pw, false); }, prec, "phi.Phi");
    const HPReal lower =
        accept([&](mpfr_prec_t pw) { return taylor(pw, true); }, prec, "phi.phi");
    CheckItem below{"t=" + t.str(6) + " lower", false, HPReal(), HPReal()};
    below.margin = et - lower;
    below.budget = budget_for(prec, abs(et) + abs(lower));
    below.pass = below.margin > below.budget;
    report.items.push_back(std::move(below));
    CheckItem above{"t=" + t.str(6) + " upper", false, HPReal(), HPReal()};
    above.margin = upper - et;
    above.budget = budget_for(prec, abs(upper) + abs(et));
    above.pass = above.margin > above.budget;
    report.items.push_back(std::move(above));
  }
  return report;
}

CheckReport leading_coeff_signs(const mpq_class& alpha, ProofFamily family,
                                mpfr_prec_t prec) {
  require_alpha(alpha);
  CheckReport report;
  report.title = family == ProofFamily::kLaguerre ? "leading_coeffs laguerre"
                                                  : "leading_coeffs determinant";
  const HPReal a1 = accept(
      [&](mpfr_prec_t pw) { return tail_coeffs(alpha, family, pw).a1; }, prec, "lead.a1");
  const HPReal a2 = accept(
      [&](mpfr_prec_t pw) { return tail_coeffs(alpha, family, pw).a2; }, prec, "lead.a2");
  const HPReal a3 = accept(
      [&](mpfr_prec_t pw) { return tail_coeffs(alpha, family, pw).a3; }, prec, "lead.a3");
  const HPReal budget1 = budget_for(prec, a1);
  const HPReal budget2 = budget_for(prec, a2);
  const HPReal budget3 = budget_for(prec, a3);
  report.items.push_back(CheckItem{"a1_positive", a1 > budget1, a1, budget1});
  report.items.push_back(CheckItem{"a2_negative", -a2 > budget2, -a2, budget2});
  report.items.push_back(CheckItem{"a3_positive", a3 > budget3, a3, budget3});
  return report;
}

CheckReport quartic_tail_check(ProofFamily family, const mpq_class& alpha,
                               const std::vector<HPReal>& z_grid, mpfr_prec_t prec) {
  require_alpha(alpha);
  CheckReport report;
  report.title = family == ProofFamily::kLaguerre ? "quartic_tail laguerre"
                                                  : "quartic_tail determinant";
  const long mult = family == ProofFamily::kLaguerre ? 192 : 361;
  const mpq_class z_min = family == ProofFamily::kLaguerre ? mpq_class(101, 10)
                                                           : mpq_class(1265, 100);
  for (const auto& z : z_grid) {
    if (!(z > HPReal(z_min, 64))) {
      throw std::invalid_argument("grid point below the family's z threshold");
    }
    const HPReal value = accept(
        [&](mpfr_prec_t pw) {
          const TailCoeffs tc = tail_coeffs(alpha, family, pw);
          const HPReal zv = at_prec(z, pw);
          return -mult * tc.a1 + tc.a2 * (zv * zv) + tc.a3 * pow_si(zv, 4);
        },
        prec, "quartic_tail");
    const TailCoeffs tc = tail_coeffs(alpha, family, 2 * prec);
    const HPReal z4 = pow_si(at_prec(z, 2 * prec), 4);
    const HPReal scale = mult * abs(tc.a1) + abs(tc.a2 * z4) + abs(tc.a3 * z4);
    CheckItem item{"z=" + z.str(6), false, HPReal(), HPReal()};
    item.margin = value;
    item.budget = budget_for(prec, scale);
    item.pass = item.margin > item.budget;
    report.items.push_back(std::move(item));
  }
  return report;
}

}  // namespace deltak
