#include "opcalc/radical_complex.hpp"

#include <cmath>

namespace opcalc {

namespace {

// x·√s1 == y·√s2 over the reals.
bool same_real_radical(const Rational& a, const Integer& sa, const Rational& b, const Integer& sb) {
  if (sgn(a) != sgn(b)) return false;
  if (sgn(a) == 0) return true;
  return a * a * sa == b * b * sb;
}

}  // namespace

RadicalComplex::RadicalComplex(Rational x, Rational y, Rational s) : x_(std::move(x)), y_(std::move(y)) {
  if (sgn(s) <= 0) throw ModelError("radicand must be positive");
  if (sgn(x_) == 0 && sgn(y_) == 0) return;
  // √(p/q) = √(pq)/q, then pull squares out of pq.
  Integer pq = s.get_num() * s.get_den();
  Integer root, free_part;
  split_square(pq, root, free_part);
  Rational scale(root, s.get_den());
  scale.canonicalize();
  x_ *= scale;
  y_ *= scale;
  s_ = free_part;
}

RadicalComplex RadicalComplex::sqrt_of(const Rational& v) {
  if (sgn(v) < 0) throw ModelError("square root of a negative rational");
  if (sgn(v) == 0) return {};
  return RadicalComplex(Rational(1), Rational(0), v);
}

RadicalComplex RadicalComplex::conj() const {
  RadicalComplex out = *this;
  out.y_ = -out.y_;
  return out;
}

Rational RadicalComplex::norm_squared() const { return (x_ * x_ + y_ * y_) * s_; }

RadicalComplex RadicalComplex::modulus() const { return sqrt_of(norm_squared()); }

RadicalComplex RadicalComplex::inverse() const {
  if (is_zero()) throw ModelError("inverse of zero");
  // 1/((x+iy)√s) = (x-iy)√s / ((x²+y²)s)
  Rational n = norm_squared();
  RadicalComplex out;
  out.x_ = x_ / n;
  out.y_ = -y_ / n;
  out.s_ = s_;
  return out;
}

RadicalComplex RadicalComplex::operator-() const {
  RadicalComplex out = *this;
  out.x_ = -out.x_;
  out.y_ = -out.y_;
  return out;
}

RadicalComplex RadicalComplex::unit() const {
  if (is_zero()) return {};
  return *this * modulus().inverse();
}

std::optional<RadicalComplex> RadicalComplex::try_add(const RadicalComplex& other) const {
  if (is_zero()) return other;
  if (other.is_zero()) return *this;
  if (s_ != other.s_) return std::nullopt;
  RadicalComplex out;
  out.x_ = x_ + other.x_;
  out.y_ = y_ + other.y_;
  out.s_ = s_;
  if (out.is_zero()) out.s_ = 1;
  return out;
}

std::complex<double> RadicalComplex::to_complex() const {
  double r = std::sqrt(s_.get_d());
  return {x_.get_d() * r, y_.get_d() * r};
}

long double RadicalComplex::log_abs() const {
  if (is_zero()) return -INFINITY;
  return 0.5L * opcalc::log_abs(norm_squared());
}

std::string RadicalComplex::str() const {
  return "coeff(" + to_string(x_) + "," + to_string(y_) + "," + s_.get_str() + ")";
}

RadicalComplex operator*(const RadicalComplex& a, const RadicalComplex& b) {
  if (a.is_zero() || b.is_zero()) return {};
  RadicalComplex out;
  // √s1·√s2 = g·√((s1/g)(s2/g)) with g = gcd; the cofactor stays square-free.
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.s_.get_mpz_t(), b.s_.get_mpz_t());
  Rational re = a.x_ * b.x_ - a.y_ * b.y_;
  Rational im = a.x_ * b.y_ + a.y_ * b.x_;
  out.x_ = re * g;
  out.y_ = im * g;
  out.s_ = (a.s_ / g) * (b.s_ / g);
  if (out.is_zero()) out.s_ = 1;
  return out;
}

RadicalComplex operator*(const RadicalComplex& a, const Rational& q) {
  if (sgn(q) == 0) return {};
  RadicalComplex out = a;
  out.x_ *= q;
  out.y_ *= q;
  return out;
}

bool operator==(const RadicalComplex& a, const RadicalComplex& b) {
  return same_real_radical(a.x_, a.s_, b.x_, b.s_) && same_real_radical(a.y_, a.s_, b.y_, b.s_);
}

}  // namespace opcalc
