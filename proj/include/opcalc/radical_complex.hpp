#pragma once

#include <complex>
#include <optional>
#include <string>

#include "opcalc/rational.hpp"

namespace opcalc {

/// Exact scalar (x + iy)·√s with rational x, y and a square-free positive
/// integer radicand s. Closed under product, conjugation, inversion and
/// modulus; sums exist only between values sharing a radicand.
class RadicalComplex {
 public:
  RadicalComplex() = default;
  RadicalComplex(Rational x, Rational y = 0, Rational s = 1);
  RadicalComplex(std::int64_t x) : RadicalComplex(Rational(static_cast<long>(x))) {}

  /// √v for a nonnegative rational v.
  static RadicalComplex sqrt_of(const Rational& v);

  const Rational& x() const { return x_; }
  const Rational& y() const { return y_; }
  const Integer& radicand() const { return s_; }

  bool is_zero() const { return sgn(x_) == 0 && sgn(y_) == 0; }
  bool is_real() const { return sgn(y_) == 0; }

  RadicalComplex conj() const;
  RadicalComplex modulus() const;
  RadicalComplex inverse() const;
  RadicalComplex operator-() const;

  /// |z|^2, always rational.
  Rational norm_squared() const;

  /// z / |z| for nonzero z; 0 stays 0.
  RadicalComplex unit() const;

  /// Sum when representable (a shared radicand or a zero operand).
  std::optional<RadicalComplex> try_add(const RadicalComplex& other) const;

  std::complex<double> to_complex() const;
  long double log_abs() const;

  /// Canonical literal `coeff(x,y,s)`.
  std::string str() const;

  friend RadicalComplex operator*(const RadicalComplex& a, const RadicalComplex& b);
  friend RadicalComplex operator*(const RadicalComplex& a, const Rational& q);
  /// Value equality (decided without relying on full factorisation).
  friend bool operator==(const RadicalComplex& a, const RadicalComplex& b);

 private:
  Rational x_{0};
  Rational y_{0};
  Integer s_{1};
};

}  // namespace opcalc
