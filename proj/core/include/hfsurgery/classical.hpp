#pragma once

#include "hfsurgery/knot_complex.hpp"
#include "hfsurgery/laurent.hpp"
#include "hfsurgery/surgery.hpp"

namespace hfs {

// Graded Euler characteristic of HFK-hat: sum_a (sum_m (-1)^m dim) t^a.
// Checked to be symmetric with value 1 at t = 1.
LaurentPolynomial alexander_polynomial(const KnotComplex& k);

// The unique even polynomial nabla(z) with nabla(t - 1/t) = delta(t^2),
// found by exact change of basis into powers of (t - 1/t). Throws
// ValidationError when no solution exists (asymmetric input).
LaurentPolynomial conway_from_alexander(const LaurentPolynomial& delta);

struct ConwayCoefficients {
  Rational a0, a2, a4;
};

// Lowest coefficients of an even Conway polynomial; rejects odd-power terms.
ConwayCoefficients a_coefficients(const LaurentPolynomial& conway);

// f_g(t) = t^g - 2t^{g-1} + t^{g-2} + 1 + t^{2-g} - 2t^{1-g} + t^{-g}, g >= 2.
LaurentPolynomial f_family(long g);

// Conway transform p_g of f_g, computed both by conway_from_alexander and by
// the three-term recurrence p_{g+1} = (z^2+2)(p_g - 1) - p_{g-1} + 2; the two
// routes are compared and a mismatch raises InternalError.
LaurentPolynomial p_family(long g);

struct JonesDerivatives {
  Rational d1, d2, d3;  // V'(1), V''(1), V'''(1)
};

JonesDerivatives jones_derivatives(const LaurentPolynomial& v);

struct V3Value {
  Rational v3;       // in (1/4) Z
  Rational four_v3;  // 4 v3
};

// 4 v3 = -(V'''(1) + 3 V''(1)) / 36; requires V'(1) = 0.
V3Value v3_from_jones(const LaurentPolynomial& v);

// Jones polynomial of the pretzel knot P(-3, 3, 2n):
//   q^{-2n} V_{P(-3,3,0)}(q) + (1 - q^{-2n}).
LaurentPolynomial jones_pretzel(long n);

struct CassonValue {
  Rational value;
  // true: the Casson(-Walker) invariant itself (slopes 1/n);
  // false: only the surgery-formula difference (q/p) delta''(1)/2.
  bool absolute = false;
};

CassonValue casson_surgery(const LaurentPolynomial& delta, const SurgerySlope& slope);

// lambda(Y) from HF^+ via |H_1| lambda = sum_s (chi(HF_red) - d/2). Torsion
// Q[U]/U^n based at grading h contributes n(-1)^h; for fractional h the sign
// uses the parity of h - d within the Spin^c summand.
Rational casson_walker_from_hf(const SurgeryResult& result);

}  // namespace hfs
