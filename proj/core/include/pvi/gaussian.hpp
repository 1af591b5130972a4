#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "pvi/errors.hpp"

namespace pvi {

using Rational = mpq_class;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
bool is_integer(const Rational& q);
// Exact square root of a non-negative rational, if it exists.
std::optional<Rational> sqrt_rational(const Rational& q);

// Element re + im*i of Q(i).
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }
  static GaussianRational parse(std::string_view text);

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }
  GaussianRational inverse() const;

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return {-re_, -im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  // Lexicographic (re, im); used only for canonical ordering.
  friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ < b.re_ || (a.re_ == b.re_ && a.im_ < b.im_);
  }

  std::string str() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

GaussianRational pow(GaussianRational base, unsigned e);

// Square root in Q(i) when one exists. The root returned has positive real
// part, or zero real part and non-negative imaginary part.
std::optional<GaussianRational> sqrt_exact(const GaussianRational& z);

}  // namespace pvi
