#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace altrace {

using Integer = mpz_class;

/// Exact signed rational. Kept in lowest terms with a positive denominator
/// by every arithmetic operation on mpq_class.
using Rational = mpq_class;

inline Integer to_integer(std::int64_t v) {
  Integer r;
  mpz_set_si(r.get_mpz_t(), static_cast<long>(v));
  return r;
}

inline Rational to_rational(std::int64_t num, std::int64_t den = 1) {
  Rational r(to_integer(num), to_integer(den));
  r.canonicalize();
  return r;
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

/// Returns the numerator of `q`; throws ConsistencyError naming `what` when
/// the denominator is not 1.
Integer require_integer(const Rational& q, std::string_view what);

/// Decimal "p" or "p/q".
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Parses "p" or "p/q"; throws InputError on malformed text.
Rational parse_rational(std::string_view text);

}  // namespace altrace
