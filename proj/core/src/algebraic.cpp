#include "pvi/algebraic.hpp"

namespace pvi {

std::string QuadraticField::str() const {
  return "w^2+(" + p.str() + ")*w+(" + q.str() + ")";
}

FieldPtr make_quadratic_field(const GaussianRational& p, const GaussianRational& q) {
  if (sqrt_exact(p * p - GaussianRational(4) * q))
    throw UnsupportedExtension("minimal polynomial " + QuadraticField{p, q}.str() +
                               " splits over Q(i)");
  return std::make_shared<const QuadraticField>(QuadraticField{p, q});
}

AlgebraicNumber::AlgebraicNumber(GaussianRational u, GaussianRational v, FieldPtr field)
    : u_(std::move(u)), v_(std::move(v)), field_(std::move(field)) {
  if (!field_ && !v_.is_zero())
    throw IncompatibleExtensions("algebraic number with w-part but no field");
}

const GaussianRational& AlgebraicNumber::as_gaussian() const {
  if (!v_.is_zero()) throw UnsupportedExtension("value " + str() + " is not in Q(i)");
  return u_;
}

const FieldPtr& AlgebraicNumber::common_field(const AlgebraicNumber& o) const {
  if (v_.is_zero()) return o.field_ ? o.field_ : field_;
  if (o.v_.is_zero()) return field_;
  if (field_ != o.field_ && !(*field_ == *o.field_))
    throw IncompatibleExtensions("operands live in " + field_->str() + " and " + o.field_->str());
  return field_;
}

void AlgebraicNumber::demote_if_rational() {
  if (v_.is_zero()) field_.reset();
}

AlgebraicNumber& AlgebraicNumber::operator+=(const AlgebraicNumber& o) {
  field_ = common_field(o);
  u_ += o.u_;
  v_ += o.v_;
  demote_if_rational();
  return *this;
}

AlgebraicNumber& AlgebraicNumber::operator-=(const AlgebraicNumber& o) {
  field_ = common_field(o);
  u_ -= o.u_;
  v_ -= o.v_;
  demote_if_rational();
  return *this;
}

AlgebraicNumber& AlgebraicNumber::operator*=(const AlgebraicNumber& o) {
  FieldPtr f = common_field(o);
  if (v_.is_zero() || o.v_.is_zero()) {
    if (v_.is_zero()) {
      v_ = u_ * o.v_;
      u_ *= o.u_;
    } else {
      u_ *= o.u_;
      v_ *= o.u_;
    }
    field_ = std::move(f);
    demote_if_rational();
    return *this;
  }
  // w^2 = -p w - q
  GaussianRational vv = v_ * o.v_;
  GaussianRational u = u_ * o.u_ - f->q * vv;
  GaussianRational v = u_ * o.v_ + v_ * o.u_ - f->p * vv;
  u_ = std::move(u);
  v_ = std::move(v);
  field_ = std::move(f);
  demote_if_rational();
  return *this;
}

AlgebraicNumber AlgebraicNumber::conjugate() const {
  if (v_.is_zero()) return *this;
  // other root is -p - w
  return {u_ - field_->p * v_, -v_, field_};
}

GaussianRational AlgebraicNumber::norm() const {
  if (v_.is_zero()) return u_ * u_;
  return u_ * u_ - field_->p * u_ * v_ + field_->q * v_ * v_;
}

AlgebraicNumber AlgebraicNumber::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero algebraic number");
  if (v_.is_zero()) return AlgebraicNumber(u_.inverse());
  GaussianRational n_inv = norm().inverse();
  AlgebraicNumber c = conjugate();
  return {c.u_ * n_inv, c.v_ * n_inv, field_};
}

AlgebraicNumber& AlgebraicNumber::operator/=(const AlgebraicNumber& o) {
  if (o.is_zero()) throw DivisionByZero("division by zero algebraic number");
  common_field(o);
  return *this *= o.inverse();
}

AlgebraicNumber AlgebraicNumber::operator-() const {
  AlgebraicNumber r = *this;
  r.u_ = -r.u_;
  r.v_ = -r.v_;
  return r;
}

bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (!(a.u_ == b.u_) || !(a.v_ == b.v_)) return false;
  if (a.v_.is_zero()) return true;
  return a.field_ == b.field_ || *a.field_ == *b.field_;
}

std::string AlgebraicNumber::str() const {
  if (v_.is_zero()) return u_.str();
  return "(" + u_.str() + ")+(" + v_.str() + ")*w";
}

std::ostream& operator<<(std::ostream& os, const AlgebraicNumber& z) { return os << z.str(); }

AlgebraicNumber sqrt_algebraic(const GaussianRational& z) {
  if (auto r = sqrt_exact(z)) return AlgebraicNumber(*r);
  return AlgebraicNumber::generator(make_quadratic_field(GaussianRational(0), -z));
}

}  // namespace pvi
