#include "opcalc/rational.hpp"

#include <cmath>
#include <vector>

namespace opcalc {

namespace {

const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> primes = [] {
    constexpr unsigned long limit = 1UL << 16;
    std::vector<bool> composite(limit, false);
    std::vector<unsigned long> out;
    for (unsigned long p = 2; p < limit; ++p) {
      if (composite[p]) continue;
      out.push_back(p);
      for (unsigned long m = p * p; m < limit; m += p) composite[m] = true;
    }
    return out;
  }();
  return primes;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) throw ModelError("malformed rational '" + std::string(text) + "'");
  Integer n{std::string(num)}, d{std::string(den)};
  if (d == 0) throw ModelError("zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

Rational rational_pow(const Rational& q, std::int64_t e) {
  if (e == 0) return Rational(1);
  if (e < 0) {
    if (q == 0) throw ModelError("zero raised to a negative power");
    Rational inv = 1 / q;
    return rational_pow(inv, -e);
  }
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(e));
  Rational out(num, den);
  out.canonicalize();
  return out;
}

void split_square(const Integer& n, Integer& root, Integer& free_part) {
  root = 1;
  free_part = 1;
  Integer rest = n;
  if (rest <= 1) {
    free_part = rest;
    return;
  }
  if (mpz_perfect_square_p(rest.get_mpz_t())) {
    mpz_sqrt(root.get_mpz_t(), rest.get_mpz_t());
    return;
  }
  for (unsigned long p : small_primes()) {
    if (Integer(p) * p > rest) break;
    unsigned count = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++count;
    }
    for (unsigned i = 0; i + 1 < count; i += 2) root *= p;
    if (count % 2 == 1) free_part *= p;
    if (rest > 1 && mpz_perfect_square_p(rest.get_mpz_t())) {
      Integer r;
      mpz_sqrt(r.get_mpz_t(), rest.get_mpz_t());
      root *= r;
      rest = 1;
      break;
    }
  }
  free_part *= rest;
}

long double log_abs(const Rational& q) {
  if (sgn(q) == 0) return -INFINITY;
  long exp_num = 0, exp_den = 0;
  Integer num = abs(q.get_num());
  double mn = mpz_get_d_2exp(&exp_num, num.get_mpz_t());
  double md = mpz_get_d_2exp(&exp_den, q.get_den_mpz_t());
  return std::log(static_cast<long double>(mn)) - std::log(static_cast<long double>(md)) +
         static_cast<long double>(exp_num - exp_den) * std::log(2.0L);
}

}  // namespace opcalc
