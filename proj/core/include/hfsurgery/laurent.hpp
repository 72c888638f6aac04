#pragma once

#include <map>
#include <string>
#include <vector>

#include "hfsurgery/rational.hpp"

namespace hfs {

// Exact-rational Laurent polynomial in one variable. Used for Alexander
// polynomials Delta(t), Conway polynomials nabla(z) and Jones polynomials
// V(q); the variable name is a matter of context.
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  explicit LaurentPolynomial(const Rational& constant);

  static LaurentPolynomial monomial(long exponent, const Rational& coeff);
  static LaurentPolynomial one() { return LaurentPolynomial(Rational(1)); }

  const std::map<long, Rational>& coefficients() const { return coeffs_; }
  Rational coeff(long exponent) const;
  void set_coeff(long exponent, const Rational& value);  // erases zeros
  bool is_zero() const { return coeffs_.empty(); }
  long min_exponent() const;  // requires nonzero
  long max_exponent() const;

  LaurentPolynomial operator+(const LaurentPolynomial& o) const;
  LaurentPolynomial operator-(const LaurentPolynomial& o) const;
  LaurentPolynomial operator*(const LaurentPolynomial& o) const;
  LaurentPolynomial operator*(const Rational& c) const;
  bool operator==(const LaurentPolynomial& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const LaurentPolynomial& o) const { return !(*this == o); }

  Rational evaluate_at_one() const;

  // Value at 1 of the k-th formal derivative: sum of c_i * i(i-1)...(i-k+1).
  Rational derivative_at_one(int k) const;

  // Substitutes t -> t^m (exponents scale by m).
  LaurentPolynomial compose_power(long m) const;

  // True if coeff(j) == coeff(-j) for all j.
  bool is_symmetric() const;

  // Renders like "2t - 3 + 2t^-1" with the given variable name.
  std::string str(const std::string& var) const;

 private:
  std::map<long, Rational> coeffs_;
};

}  // namespace hfs
