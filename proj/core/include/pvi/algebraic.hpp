#pragma once

#include <memory>
#include <string>

#include "pvi/gaussian.hpp"

namespace pvi {

// Q(i)(w) with w^2 + p*w + q = 0 irreducible over Q(i).
struct QuadraticField {
  GaussianRational p;
  GaussianRational q;

  friend bool operator==(const QuadraticField& a, const QuadraticField& b) {
    return a.p == b.p && a.q == b.q;
  }
  std::string str() const;
};

using FieldPtr = std::shared_ptr<const QuadraticField>;

// Throws UnsupportedExtension when w^2 + p*w + q splits over Q(i).
FieldPtr make_quadratic_field(const GaussianRational& p, const GaussianRational& q);

// u + v*w. A value with v == 0 behaves as an element of Q(i) and mixes freely
// with any field; two nonzero-v values must share the same minimal polynomial.
class AlgebraicNumber {
 public:
  AlgebraicNumber() = default;
  AlgebraicNumber(long v) : u_(v) {}                             // NOLINT
  AlgebraicNumber(GaussianRational u) : u_(std::move(u)) {}      // NOLINT
  AlgebraicNumber(GaussianRational u, GaussianRational v, FieldPtr field);

  static AlgebraicNumber generator(FieldPtr field) { return {GaussianRational(0), GaussianRational(1), std::move(field)}; }

  const GaussianRational& u() const { return u_; }
  const GaussianRational& v() const { return v_; }
  const FieldPtr& field() const { return field_; }

  bool is_zero() const { return u_.is_zero() && v_.is_zero(); }
  bool is_rational() const { return v_.is_zero(); }
  // Valid only when is_rational().
  const GaussianRational& as_gaussian() const;

  AlgebraicNumber conjugate() const;
  GaussianRational norm() const;
  AlgebraicNumber inverse() const;

  AlgebraicNumber& operator+=(const AlgebraicNumber& o);
  AlgebraicNumber& operator-=(const AlgebraicNumber& o);
  AlgebraicNumber& operator*=(const AlgebraicNumber& o);
  AlgebraicNumber& operator/=(const AlgebraicNumber& o);

  friend AlgebraicNumber operator+(AlgebraicNumber a, const AlgebraicNumber& b) { return a += b; }
  friend AlgebraicNumber operator-(AlgebraicNumber a, const AlgebraicNumber& b) { return a -= b; }
  friend AlgebraicNumber operator*(AlgebraicNumber a, const AlgebraicNumber& b) { return a *= b; }
  friend AlgebraicNumber operator/(AlgebraicNumber a, const AlgebraicNumber& b) { return a /= b; }
  AlgebraicNumber operator-() const;

  friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b);

  std::string str() const;

 private:
  const FieldPtr& common_field(const AlgebraicNumber& o) const;
  void demote_if_rational();

  GaussianRational u_;
  GaussianRational v_;
  FieldPtr field_;
};

std::ostream& operator<<(std::ostream& os, const AlgebraicNumber& z);

// Square root of z: in Q(i) when possible, otherwise the generator of
// Q(i)(w), w^2 = z.
AlgebraicNumber sqrt_algebraic(const GaussianRational& z);

}  // namespace pvi
