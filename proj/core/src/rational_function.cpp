#include "pvi/rational_function.hpp"

namespace pvi {

namespace {

template <FieldElement K>
Polynomial<K> strip_x(const Polynomial<K>& p, int v) {
  if (v <= 0) return p;
  std::vector<K> c(p.coeffs().begin() + v, p.coeffs().end());
  return Polynomial<K>(std::move(c));
}

// n/d expanded at 0 to absolute precision prec.
template <FieldElement K>
LaurentSeries<K> quotient_series(const Polynomial<K>& n, const Polynomial<K>& d, int prec) {
  if (d.is_zero()) throw DivisionByZero("zero denominator");
  if (n.is_zero()) return LaurentSeries<K>();
  const int vn = n.valuation();
  const int vd = d.valuation();
  const int s = vn - vd;
  Polynomial<K> n1 = strip_x(n, vn);
  Polynomial<K> d1 = strip_x(d, vd);
  if (d1.degree() == 0) return LaurentSeries<K>::from_polynomial(n1.scaled(K(1) / d1.leading())).mul_pow(s);
  const int p = prec == kExact ? kExact : prec - s;
  if (p == kExact) throw InsufficientTerms("expansion of a non-polynomial rational function needs a precision");
  if (p <= 0) return LaurentSeries<K>::zero(prec);
  LaurentSeries<K> q = LaurentSeries<K>::from_polynomial(n1) * LaurentSeries<K>::from_polynomial(d1).inverse(p);
  return q.mul_pow(s);
}

template <FieldElement K>
LaurentSeries<K> quotient_series_relative(const Polynomial<K>& n, const Polynomial<K>& d, int J) {
  if (n.is_zero()) return LaurentSeries<K>();
  const int s = n.valuation() - d.valuation();
  return quotient_series(n, d, s + J);
}

}  // namespace

RationalFunction::RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

void RationalFunction::normalize() {
  if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Poly(GaussianRational(1));
    return;
  }
  if (den_.degree() > 0) {
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
  }
  if (!den_.leading().is_one()) {
    GaussianRational inv = GaussianRational(1) / den_.leading();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    Poly n = num_ + o.num_;
    if (den_.degree() == 0) {
      num_ = std::move(n);
      return *this;
    }
    return *this = RationalFunction(std::move(n), den_);
  }
  Poly g = gcd(den_, o.den_);
  Poly d1 = den_ / g;
  Poly d2 = o.den_ / g;
  Poly n = num_ * d2 + o.num_ * d1;
  return *this = RationalFunction(std::move(n), d1 * o.den_);
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  if (is_zero() || o.is_zero()) return *this = RationalFunction();
  if (den_.degree() == 0 && o.den_.degree() == 0) {
    num_ = num_ * o.num_;
    return *this;
  }
  Poly g1 = gcd(num_, o.den_);
  Poly g2 = gcd(o.num_, den_);
  Poly n = (num_ / g1) * (o.num_ / g2);
  Poly d = (den_ / g2) * (o.den_ / g1);
  num_ = std::move(n);
  den_ = std::move(d);
  if (!den_.leading().is_one()) {
    GaussianRational inv = GaussianRational(1) / den_.leading();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.is_zero()) throw DivisionByZero("division by the zero rational function");
  return *this *= RationalFunction(o.den_, o.num_);
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction RationalFunction::scaled(const GaussianRational& s) const {
  if (s.is_zero()) return {};
  RationalFunction r = *this;
  r.num_ = r.num_.scaled(s);
  return r;
}

RationalFunction RationalFunction::derivative() const {
  if (den_.degree() == 0) return RationalFunction(num_.derivative());
  return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

GaussianRational RationalFunction::operator()(const GaussianRational& x) const {
  GaussianRational d = den_(x);
  if (d.is_zero()) throw DivisionByZero("evaluation at a pole");
  return num_(x) / d;
}

RationalFunction RationalFunction::substitute_monomial(const GaussianRational& mu, int e) const {
  auto scale = [&](const Poly& p) {
    std::vector<GaussianRational> c = p.coeffs();
    GaussianRational m(1);
    for (auto& v : c) {
      v *= m;
      m *= mu;
    }
    return Poly(std::move(c));
  };
  if (e == 1) return RationalFunction(scale(num_), scale(den_));
  if (e != -1) throw Error("substitute_monomial supports exponents +1 and -1 only");
  if (is_zero()) return {};
  const int dn = num_.degree();
  const int dd = den_.degree();
  Poly n = scale(num_).reversed(dn);
  Poly d = scale(den_).reversed(dd);
  if (dd >= dn) return RationalFunction(n.shifted(dd - dn), d);
  return RationalFunction(n, d.shifted(dn - dd));
}

int RationalFunction::order_at_zero() const {
  if (is_zero()) throw ZeroSeries("order of the zero rational function");
  return num_.valuation() - den_.valuation();
}

std::string RationalFunction::str(const std::string& var) const {
  if (den_.degree() == 0) return to_string(num_, var);
  return "(" + to_string(num_, var) + ")/(" + to_string(den_, var) + ")";
}

RationalFunction pow(RationalFunction base, unsigned e) {
  RationalFunction r(1);
  while (e) {
    if (e & 1u) r *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return r;
}

Series expand_to(const RationalFunction& r, int prec) { return quotient_series(r.num(), r.den(), prec); }

Series rational_expand_at_zero(const RationalFunction& r, int J) {
  return quotient_series_relative(r.num(), r.den(), J);
}

Series rational_expand_at_infinity(const RationalFunction& r, int J) {
  return rational_expand_at_zero(r.substitute_monomial(GaussianRational(1), -1), J);
}

LaurentSeries<AlgebraicNumber> rational_expand(const RationalFunction& r, const ExpansionPoint& at, int J) {
  auto to_alg = [](const Series& s) { return s.map([](const GaussianRational& v) { return AlgebraicNumber(v); }); };
  if (std::holds_alternative<AtZero>(at)) return to_alg(rational_expand_at_zero(r, J));
  if (std::holds_alternative<AtInfinity>(at)) return to_alg(rational_expand_at_infinity(r, J));
  const AlgebraicNumber& p = std::get<AlgebraicNumber>(at);
  Polynomial<AlgebraicNumber> n = lift(r.num()).taylor_shift(p);
  Polynomial<AlgebraicNumber> d = lift(r.den()).taylor_shift(p);
  return quotient_series_relative(n, d, J);
}

}  // namespace pvi
