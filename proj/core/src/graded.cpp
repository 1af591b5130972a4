#include "pvi/graded.hpp"

namespace pvi {

Derivation Derivation::exotic(const Rational& theta) {
  if (sgn(theta) == 0) throw ConstraintViolation("exotic variable needs theta != 0");
  return {VariableKind::exotic, theta};
}

std::string to_string(VariableKind kind) {
  switch (kind) {
    case VariableKind::complicated: return "complicated";
    case VariableKind::exotic: return "exotic";
    case VariableKind::plain: return "plain";
  }
  return "?";
}

Series apply(const Derivation& d, const Series& f) {
  switch (d.kind) {
    case VariableKind::plain:
      return Series::zero(f.precision());
    case VariableKind::exotic: {
      // chi^e -> i theta e chi^e
      std::vector<GaussianRational> c;
      c.reserve(f.stored().size());
      for (size_t n = 0; n < f.stored().size(); ++n) {
        Rational e(f.min_exp() + static_cast<long>(n));
        c.push_back(f.stored()[n] * GaussianRational(Rational(0), d.theta * e));
      }
      return Series::from_coeffs(f.min_exp(), std::move(c), f.precision());
    }
    case VariableKind::complicated:
      // chi^e -> -e chi^(e+1)
      return -(f.derivative().mul_pow(2));
  }
  return f;
}

RationalFunction apply(const Derivation& d, const RationalFunction& f) {
  switch (d.kind) {
    case VariableKind::plain:
      return {};
    case VariableKind::exotic:
      return f.derivative() * RationalFunction(Poly::monomial(GaussianRational(Rational(0), d.theta), 1));
    case VariableKind::complicated:
      return f.derivative() * RationalFunction(Poly::monomial(GaussianRational(-1), 2));
  }
  return f;
}

GradedSeries<Series> expand_graded(const GradedSeries<RationalFunction>& f, int prec) {
  return f.map([prec](const RationalFunction& r) { return expand_to(r, prec); });
}

}  // namespace pvi
