#pragma once

#include <gmpxx.h>

#include <string>

namespace hfs {

// All arithmetic in the engine is exact. Gradings, differentials and
// invariants are rationals; no floating point appears anywhere.
using Rational = mpq_class;

// Parses "p/q" or "p" (optional sign on p). Result is canonical: lowest
// terms, positive denominator. Throws ParseError on malformed input or q=0.
Rational rational_from_string(const std::string& s);

// Canonical text form: "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational& r);

bool is_integer(const Rational& r);

// Exact conversion; throws InternalError if r is not an integer or too large.
long to_long(const Rational& r);

// Floor division a/b for b > 0 (rounds toward minus infinity).
long floor_div(long a, long b);

long gcd_long(long a, long b);

}  // namespace hfs
