#include "hfsurgery/laurent.hpp"

#include <sstream>

#include "hfsurgery/errors.hpp"

namespace hfs {

LaurentPolynomial::LaurentPolynomial(const Rational& constant) {
  if (constant != 0) coeffs_[0] = constant;
}

LaurentPolynomial LaurentPolynomial::monomial(long exponent, const Rational& coeff) {
  LaurentPolynomial p;
  if (coeff != 0) p.coeffs_[exponent] = coeff;
  return p;
}

Rational LaurentPolynomial::coeff(long exponent) const {
  auto it = coeffs_.find(exponent);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void LaurentPolynomial::set_coeff(long exponent, const Rational& value) {
  if (value == 0)
    coeffs_.erase(exponent);
  else
    coeffs_[exponent] = value;
}

long LaurentPolynomial::min_exponent() const {
  if (coeffs_.empty()) throw InternalError("min_exponent of zero polynomial");
  return coeffs_.begin()->first;
}

long LaurentPolynomial::max_exponent() const {
  if (coeffs_.empty()) throw InternalError("max_exponent of zero polynomial");
  return coeffs_.rbegin()->first;
}

LaurentPolynomial LaurentPolynomial::operator+(const LaurentPolynomial& o) const {
  LaurentPolynomial r = *this;
  for (const auto& [e, c] : o.coeffs_) r.set_coeff(e, r.coeff(e) + c);
  return r;
}

LaurentPolynomial LaurentPolynomial::operator-(const LaurentPolynomial& o) const {
  LaurentPolynomial r = *this;
  for (const auto& [e, c] : o.coeffs_) r.set_coeff(e, r.coeff(e) - c);
  return r;
}

LaurentPolynomial LaurentPolynomial::operator*(const LaurentPolynomial& o) const {
  LaurentPolynomial r;
  for (const auto& [e1, c1] : coeffs_)
    for (const auto& [e2, c2] : o.coeffs_) r.set_coeff(e1 + e2, r.coeff(e1 + e2) + c1 * c2);
  return r;
}

LaurentPolynomial LaurentPolynomial::operator*(const Rational& c) const {
  LaurentPolynomial r;
  if (c == 0) return r;
  for (const auto& [e, v] : coeffs_) r.coeffs_[e] = v * c;
  return r;
}

Rational LaurentPolynomial::evaluate_at_one() const {
  Rational s(0);
  for (const auto& [e, c] : coeffs_) s += c;
  return s;
}

Rational LaurentPolynomial::derivative_at_one(int k) const {
  Rational s(0);
  for (const auto& [e, c] : coeffs_) {
    Rational f(1);
    for (int j = 0; j < k; ++j) f *= Rational(e - j);
    s += c * f;
  }
  return s;
}

LaurentPolynomial LaurentPolynomial::compose_power(long m) const {
  LaurentPolynomial r;
  for (const auto& [e, c] : coeffs_) r.coeffs_[e * m] = c;
  return r;
}

bool LaurentPolynomial::is_symmetric() const {
  for (const auto& [e, c] : coeffs_)
    if (coeff(-e) != c) return false;
  return true;
}

std::string LaurentPolynomial::str(const std::string& var) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    Rational c = it->second;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    Rational a = abs(c);
    long e = it->first;
    if (e == 0) {
      os << to_string(a);
    } else {
      if (a != 1) os << to_string(a);
      os << var;
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

}  // namespace hfs
