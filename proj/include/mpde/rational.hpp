#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace mpde {

// Expression templates are disabled so the type behaves as a plain value
// type inside Eigen containers.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// Parses "p/q", integers, and decimals with optional exponent ("0.25", "1e-3").
/// The decimal forms are converted exactly.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" or "p" form.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// Exact conversion of the binary value of `x`; throws DomainError for non-finite x.
Rational from_double(double x);

bool is_integer(const Rational& r);

/// Requires an integral value that fits in a long.
long to_long(const Rational& r);

Integer numerator_of(const Rational& r);
Integer denominator_of(const Rational& r);

Rational floor(const Rational& r);

/// r mod m in [0, m), m > 0.
Rational mod(const Rational& r, const Rational& m);

Rational max(const Rational& a, const Rational& b);
Rational min(const Rational& a, const Rational& b);

/// log|r| for r != 0, robust for values beyond the double range.
double log_abs(const Rational& r);

}  // namespace mpde
