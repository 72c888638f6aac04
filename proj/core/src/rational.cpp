#include "hfsurgery/rational.hpp"

#include <cctype>

#include "hfsurgery/errors.hpp"

namespace hfs {

Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  std::string t = s;
  if (t[0] == '+') t = t.substr(1);
  auto ok_part = [](const std::string& part, bool allow_sign) {
    if (part.empty()) return false;
    size_t i = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  auto slash = t.find('/');
  if (slash == std::string::npos) {
    if (!ok_part(t, true)) throw ParseError("bad rational literal: " + s);
  } else {
    if (!ok_part(t.substr(0, slash), true) || !ok_part(t.substr(slash + 1), false))
      throw ParseError("bad rational literal: " + s);
  }
  Rational r;
  if (r.set_str(t, 10) != 0) throw ParseError("bad rational literal: " + s);
  if (r.get_den() == 0) throw ParseError("zero denominator: " + s);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

bool is_integer(const Rational& r) { return r.get_den() == 1; }

long to_long(const Rational& r) {
  if (!is_integer(r)) throw InternalError("expected integer, got " + to_string(r));
  if (!r.get_num().fits_slong_p()) throw InternalError("integer out of range: " + to_string(r));
  return r.get_num().get_si();
}

long floor_div(long a, long b) {
  long q = a / b, rem = a % b;
  return (rem != 0 && rem < 0) ? q - 1 : q;
}

long gcd_long(long a, long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace hfs
