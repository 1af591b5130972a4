#include "pvi/polynomial.hpp"

namespace pvi {

std::vector<AlgebraicNumber> roots_low_degree(const Polynomial<GaussianRational>& p) {
  if (p.degree() < 1) return {};
  Polynomial<GaussianRational> m = p.monic();
  if (m.degree() == 1) return {AlgebraicNumber(-m.coeff(0))};
  if (m.degree() > 2)
    throw UnsupportedExtension("roots of a degree " + std::to_string(m.degree()) +
                               " factor need an extension beyond degree 2");
  const GaussianRational& b = m.coeff(1);
  const GaussianRational& c = m.coeff(0);
  GaussianRational disc = b * b - GaussianRational(4) * c;
  if (auto s = sqrt_exact(disc)) {
    GaussianRational r1 = (-b + *s) / GaussianRational(2);
    GaussianRational r2 = (-b - *s) / GaussianRational(2);
    if (r2 < r1) std::swap(r1, r2);
    return {AlgebraicNumber(r1), AlgebraicNumber(r2)};
  }
  FieldPtr f = make_quadratic_field(b, c);
  AlgebraicNumber w = AlgebraicNumber::generator(f);
  return {w, w.conjugate()};
}

}  // namespace pvi
