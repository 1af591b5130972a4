#pragma once

#include <string>
#include <variant>

#include "pvi/laurent.hpp"
#include "pvi/polynomial.hpp"

namespace pvi {

using Poly = Polynomial<GaussianRational>;

// num/den over Q(i) with den monic and gcd(num, den) = 1. Zero is 0/1.
class RationalFunction {
 public:
  RationalFunction() : den_(GaussianRational(1)) {}
  RationalFunction(GaussianRational c) : num_(std::move(c)), den_(GaussianRational(1)) {}  // NOLINT
  RationalFunction(long c) : RationalFunction(GaussianRational(c)) {}                     // NOLINT
  RationalFunction(Poly p) : num_(std::move(p)), den_(GaussianRational(1)) {}              // NOLINT
  RationalFunction(Poly num, Poly den);

  static RationalFunction x() { return RationalFunction(Poly::x()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  RationalFunction operator-() const;
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RationalFunction scaled(const GaussianRational& s) const;
  RationalFunction derivative() const;
  GaussianRational operator()(const GaussianRational& x) const;
  // r(mu * x^e) for e = +1 or -1.
  RationalFunction substitute_monomial(const GaussianRational& mu, int e) const;

  // Order at 0 (valuation of num minus valuation of den); throws UnknownOrder
  // style ZeroSeries for the zero function.
  int order_at_zero() const;

  std::string str(const std::string& var = "x") const;

 private:
  void normalize();

  Poly num_;
  Poly den_;
};

RationalFunction pow(RationalFunction base, unsigned e);

// Expansion point for rational_expand.
struct AtZero {};
struct AtInfinity {};
using ExpansionPoint = std::variant<AtZero, AtInfinity, AlgebraicNumber>;

// Laurent expansion of r at 0 with absolute precision prec (coefficients of
// x^e for e < prec are exact).
Series expand_to(const RationalFunction& r, int prec);

// Laurent expansion with J known terms counted from the leading exponent.
// At infinity the series variable is t = 1/x; at a finite point p it is
// z = x - p and the coefficients live in Q(i)(p).
LaurentSeries<AlgebraicNumber> rational_expand(const RationalFunction& r, const ExpansionPoint& at, int J);
Series rational_expand_at_zero(const RationalFunction& r, int J);
Series rational_expand_at_infinity(const RationalFunction& r, int J);

}  // namespace pvi
