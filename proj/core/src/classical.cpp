#include "hfsurgery/classical.hpp"

#include <cstdlib>

#include "hfsurgery/errors.hpp"

namespace hfs {

LaurentPolynomial alexander_polynomial(const KnotComplex& k) {
  LaurentPolynomial delta;
  for (const auto& [am, dim] : k.hfk_hat()) {
    Rational sign = (((am.second % 2) + 2) % 2 == 0) ? Rational(1) : Rational(-1);
    delta.set_coeff(am.first, delta.coeff(am.first) + sign * dim);
  }
  if (!delta.is_symmetric())
    throw ValidationError("Alexander polynomial of '" + k.name + "' is not symmetric");
  if (delta.evaluate_at_one() != 1)
    throw ValidationError("Alexander polynomial of '" + k.name + "' is not normalized to 1 at t=1");
  return delta;
}

namespace {

// (t - 1/t)^d as a Laurent polynomial in t
LaurentPolynomial z_power(long d) {
  LaurentPolynomial z = LaurentPolynomial::monomial(1, 1) - LaurentPolynomial::monomial(-1, 1);
  LaurentPolynomial r = LaurentPolynomial::one();
  for (long i = 0; i < d; ++i) r = r * z;
  return r;
}

}  // namespace

LaurentPolynomial conway_from_alexander(const LaurentPolynomial& delta) {
  LaurentPolynomial rest = delta.compose_power(2);  // delta(t^2)
  LaurentPolynomial conway;
  while (!rest.is_zero() && rest.max_exponent() > 0) {
    long d = rest.max_exponent();
    Rational c = rest.coeff(d);
    conway.set_coeff(d, c);
    rest = rest - z_power(d) * c;
  }
  if (!rest.is_zero()) {
    if (rest.min_exponent() < 0) throw ValidationError("no Conway polynomial: input is not symmetric");
    conway.set_coeff(0, rest.coeff(0));  // what is left is the constant term
  }
  return conway;
}

ConwayCoefficients a_coefficients(const LaurentPolynomial& conway) {
  for (const auto& [e, c] : conway.coefficients()) {
    (void)c;
    if (e < 0 || e % 2 != 0)
      throw ValidationError("Conway polynomial has an odd or negative power term");
  }
  return {conway.coeff(0), conway.coeff(2), conway.coeff(4)};
}

LaurentPolynomial f_family(long g) {
  if (g < 2) throw UnsupportedError("f_family needs g >= 2");
  LaurentPolynomial f;
  auto bump = [&f](long e, long c) { f.set_coeff(e, f.coeff(e) + c); };
  bump(g, 1);
  bump(g - 1, -2);
  bump(g - 2, 1);
  bump(0, 1);
  bump(2 - g, 1);
  bump(1 - g, -2);
  bump(-g, 1);
  return f;
}

LaurentPolynomial p_family(long g) {
  if (g < 2) throw UnsupportedError("p_family needs g >= 2");
  // recurrence route
  LaurentPolynomial p2, p3;
  p2.set_coeff(0, 1);
  p2.set_coeff(2, 2);
  p2.set_coeff(4, 1);
  p3.set_coeff(0, 1);
  p3.set_coeff(2, 2);
  p3.set_coeff(4, 4);
  p3.set_coeff(6, 1);
  LaurentPolynomial prev = p2, cur = p3;
  if (g == 2) cur = p2;
  for (long m = 3; m < g; ++m) {
    LaurentPolynomial z2_plus_2 = LaurentPolynomial::monomial(2, 1) + LaurentPolynomial(Rational(2));
    LaurentPolynomial next =
        z2_plus_2 * (cur - LaurentPolynomial::one()) - prev + LaurentPolynomial(Rational(2));
    prev = cur;
    cur = next;
  }
  LaurentPolynomial by_transform = conway_from_alexander(f_family(g));
  if (!(by_transform == cur))
    throw InternalError("Conway recurrence and change of basis disagree at g = " + std::to_string(g));
  return cur;
}

JonesDerivatives jones_derivatives(const LaurentPolynomial& v) {
  return {v.derivative_at_one(1), v.derivative_at_one(2), v.derivative_at_one(3)};
}

V3Value v3_from_jones(const LaurentPolynomial& v) {
  JonesDerivatives d = jones_derivatives(v);
  if (d.d1 != 0) throw ValidationError("not a Jones polynomial: V'(1) != 0");
  Rational four = -(d.d3 + 3 * d.d2) / 36;
  Rational v3 = four / 4;
  // v3 lands in (1/4) Z
  if (!is_integer(four)) throw ValidationError("4 v3 is not an integer");
  return {v3, four};
}

LaurentPolynomial jones_pretzel(long n) {
  LaurentPolynomial v;
  v.set_coeff(-2 * n - 3, -1);
  v.set_coeff(-2 * n - 2, v.coeff(-2 * n - 2) + 1);
  v.set_coeff(-2 * n - 1, v.coeff(-2 * n - 1) - 1);
  v.set_coeff(-2 * n, v.coeff(-2 * n) + 2);
  v.set_coeff(-2 * n + 1, v.coeff(-2 * n + 1) - 1);
  v.set_coeff(-2 * n + 2, v.coeff(-2 * n + 2) + 1);
  v.set_coeff(-2 * n + 3, v.coeff(-2 * n + 3) - 1);
  v.set_coeff(0, v.coeff(0) + 1);
  return v;
}

CassonValue casson_surgery(const LaurentPolynomial& delta, const SurgerySlope& slope) {
  if (!delta.is_symmetric()) throw ValidationError("casson_surgery needs a symmetric polynomial");
  Rational difference = Rational(slope.q) / Rational(slope.p) * delta.derivative_at_one(2) / 2;
  // lambda(S^3_{1/n}(U)) = lambda(S^3) = 0, so 1/n slopes give the invariant itself
  return {difference, std::labs(slope.p) == 1};
}

Rational casson_walker_from_hf(const SurgeryResult& result) {
  Rational total(0);
  for (const auto& s : result.spin_c) {
    if (!s.module || !s.module->absolute)
      throw ValidationError("casson_walker_from_hf needs absolutely graded HF^+");
    Rational chi(0);
    for (const auto& t : s.module->torsion) {
      Rational h = t.bottom;
      long parity;
      if (is_integer(h)) {
        parity = to_long(h);
      } else {
        Rational rel = h - s.d;
        parity = to_long(rel);  // throws if not an integer
      }
      Rational sign = (((parity % 2) + 2) % 2 == 0) ? Rational(1) : Rational(-1);
      chi += sign * t.length;
    }
    total += chi - s.d / 2;
  }
  return total / std::labs(result.slope.p);
}

}  // namespace hfs
