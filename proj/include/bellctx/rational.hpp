// Exact rational scalar used throughout the library.
//
// Backed by GMP via boost::multiprecision. All arithmetic keeps values in
// canonical form (gcd-reduced, positive denominator); division by zero
// throws. Parsing accepts "num/den" and plain integer strings only.

#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

#include "bellctx/errors.hpp"

namespace bellctx {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Parse a rational from "num/den" or integer form. The denominator must be
/// nonzero; the result is canonical. Throws errc::parse on anything else.
Rational parse_rational(std::string_view text);

/// Canonical text form: "num/den", or "num" when the denominator is one.
std::string rational_str(const Rational& value);

inline Rational rat(long num, long den = 1) { return Rational(Int(num), Int(den)); }

inline Rational abs(const Rational& v) { return v < 0 ? Rational(-v) : v; }

/// Best rational approximation of `value` with denominator <= max_den
/// (Stern-Brocot / continued fractions). Returns the closest such rational.
Rational nearest_rational(double value, const Int& max_den);

/// nearest_rational restricted to |value - result| <= tol; empty on failure.
bool snap_rational(double value, const Int& max_den, double tol, Rational& out);

double to_double(const Rational& v);

}  // namespace bellctx
