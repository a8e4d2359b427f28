#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace opcalc {

using Rational = mpq_class;
using Integer = mpz_class;

/// Thrown for malformed inputs to the symbolic layer (bad literals, invalid
/// symbol parts, capacity overflow).
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  Rational q(static_cast<long>(num), static_cast<unsigned long>(den < 0 ? -den : den));
  if (den < 0) q = -q;
  q.canonicalize();
  return q;
}

/// Prints `p` or `p/q`.
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses `p` or `p/q` with an optional leading sign.
Rational parse_rational(std::string_view text);

/// q^e for integer e (negative allowed when q != 0).
Rational rational_pow(const Rational& q, std::int64_t e);

/// Splits a positive integer n into f^2 * r with r square-free as far as
/// trial division by primes below 2^16 plus a perfect-square test of the
/// cofactor can tell.
void split_square(const Integer& n, Integer& root, Integer& free_part);

/// Natural log of |q| in extended precision; -inf for zero.
long double log_abs(const Rational& q);

}  // namespace opcalc
