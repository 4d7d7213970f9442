#include "deltak/poly.hpp"

#include <stdexcept>
#include <utility>

namespace deltak {

namespace {

// Rational polynomials, used only inside the Sturm machinery.
using RatPoly = std::vector<mpq_class>;

RatPoly to_rat(const IntPolynomial& p) {
  RatPoly r(p.coeffs.size());
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) r[i] = mpq_class(p.coeffs[i]);
  return r;
}

void rtrim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int rdeg(const RatPoly& p) { return static_cast<int>(p.size()) - 1; }

RatPoly rderiv(const RatPoly& p) {
  RatPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  rtrim(d);
  return d;
}

// Remainder of a by b (b nonzero).
RatPoly rrem(RatPoly a, const RatPoly& b) {
  rtrim(a);
  const int db = rdeg(b);
  if (db < 0) throw std::invalid_argument("remainder by zero polynomial");
  while (rdeg(a) >= db) {
    const mpq_class factor = a.back() / b.back();
    const int shift = rdeg(a) - db;
    for (int i = 0; i <= db; ++i) {
      a[static_cast<std::size_t>(i + shift)] -= factor * b[static_cast<std::size_t>(i)];
    }
    a.pop_back();
    rtrim(a);
  }
  return a;
}

// Exact quotient a / b; throws if the division is not exact.
RatPoly rdiv_exact(RatPoly a, const RatPoly& b) {
  rtrim(a);
  const int db = rdeg(b);
  if (db < 0) throw std::invalid_argument("division by zero polynomial");
  RatPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, mpq_class(0));
  while (rdeg(a) >= db) {
    const mpq_class factor = a.back() / b.back();
    const int shift = rdeg(a) - db;
    q[static_cast<std::size_t>(shift)] = factor;
    for (int i = 0; i <= db; ++i) {
      a[static_cast<std::size_t>(i + shift)] -= factor * b[static_cast<std::size_t>(i)];
    }
    a.pop_back();
    rtrim(a);
  }
  if (!a.empty()) throw std::logic_error("polynomial division expected to be exact");
  rtrim(q);
  return q;
}

// Scale by a positive rational so the coefficients become a primitive integer
// vector.  Positive scaling keeps every sign, hence Sturm counts, intact.
void normalize_positive(RatPoly& p) {
  rtrim(p);
  if (p.empty()) return;
  mpz_class den_lcm = 1;
  for (const auto& c : p) {
    mpz_class d = c.get_den();
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
  }
  mpz_class content = 0;
  for (auto& c : p) {
    c *= den_lcm;
    mpz_class num = c.get_num();
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), num.get_mpz_t());
  }
  if (content > 1) {
    for (auto& c : p) c /= content;
  }
}

// gcd via the Euclidean chain, normalized to a primitive integer polynomial
// with positive leading coefficient.
RatPoly rgcd(RatPoly a, RatPoly b) {
  rtrim(a);
  rtrim(b);
  while (!b.empty()) {
    RatPoly r = rrem(a, b);
    normalize_positive(r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() < 0) {
    for (auto& c : a) c = -c;
  }
  return a;
}

int sgn_q(const mpq_class& q) { return mpq_sgn(q.get_mpq_t()); }

// Sign variations of the Sturm chain evaluated at -inf / +inf.
int variations_at_infinity(const std::vector<RatPoly>& chain, bool at_plus) {
  int count = 0;
  int prev = 0;
  for (const auto& p : chain) {
    if (p.empty()) continue;
    int s = sgn_q(p.back());
    if (!at_plus && rdeg(p) % 2 == 1) s = -s;
    if (prev != 0 && s != 0 && s != prev) ++count;
    if (s != 0) prev = s;
  }
  return count;
}

IntPolynomial from_rat_primitive(RatPoly p) {
  normalize_positive(p);
  IntPolynomial out;
  out.coeffs.reserve(p.size());
  for (const auto& c : p) {
    if (c.get_den() != 1) throw std::logic_error("expected integer coefficients");
    out.coeffs.push_back(c.get_num());
  }
  out.trim();
  return out;
}

}  // namespace

const mpz_class& IntPolynomial::leading() const {
  if (coeffs.empty()) throw std::logic_error("zero polynomial has no leading coefficient");
  return coeffs.back();
}

void IntPolynomial::trim() {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

IntPolynomial square_free_part(const IntPolynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("square_free_part of the zero polynomial");
  if (p.degree() == 0) {
    return IntPolynomial({mpz_class(1)});
  }
  RatPoly rp = to_rat(p);
  RatPoly g = rgcd(rp, rderiv(rp));
  RatPoly sf = rdiv_exact(rp, g);
  IntPolynomial out = from_rat_primitive(std::move(sf));
  if (out.leading() < 0) {
    for (auto& c : out.coeffs) c = -c;
  }
  return out;
}

int count_distinct_real_roots(const IntPolynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("root count of the zero polynomial");
  IntPolynomial sf = square_free_part(p);
  if (sf.degree() <= 0) return 0;

  std::vector<RatPoly> chain;
  chain.push_back(to_rat(sf));
  chain.push_back(rderiv(chain[0]));
  while (!chain.back().empty() && rdeg(chain.back()) > 0) {
    RatPoly r = rrem(chain[chain.size() - 2], chain.back());
    for (auto& c : r) c = -c;
    normalize_positive(r);
    chain.push_back(std::move(r));
  }
  return variations_at_infinity(chain, /*at_plus=*/false) -
         variations_at_infinity(chain, /*at_plus=*/true);
}

}  // namespace deltak
