#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pvi/recursion.hpp"

namespace pvi {

// P2 f'' + P1 f' + P0 f = rhs with polynomial coefficients. `multiplier`
// records the factor applied to the plain form of the source equation.
struct LinearOperator {
  Poly P2, P1, P0;
  std::optional<RationalFunction> rhs;  // exact right side when known
  Series rhs_series;
  RationalFunction multiplier{1};

  RationalFunction apply(const RationalFunction& f) const;
};

// Clears denominators by their lcm and divides by the gcd of P2, P1, P0 and,
// when it is known exactly, the right side. Exotic
// equations are scaled so that the multiplier has lowest Laurent coefficient
// -1/(16 theta^4), which reproduces the printed k=1 normal form.
LinearOperator normalize_operator(const CoefficientEquation& eqn,
                                  const std::optional<RationalFunction>& exact_rhs = std::nullopt);
LinearOperator normalize_operator(const LinearOperator& op);

struct SingularPoint {
  enum class Kind { zero, finite, infinity };
  Kind kind = Kind::zero;
  std::optional<AlgebraicNumber> location;  // nullopt for infinity or an unsplit factor
  Poly factor;                              // irreducible factor of P2 over Q(i) carrying the point
  int multiplicity = 0;                     // in P2; 0 for infinity

  std::string label() const;
};

// Roots of P2 grouped by square-free factor, then infinity. Factors of degree
// above two are split by gcd with the hint polynomials; pieces that stay
// above degree two are listed without a location.
std::vector<SingularPoint> singular_points(const LinearOperator& op, const std::vector<Poly>& hints = {});

// Fuchs criterion by exact divisibility (finite points) or degree bounds
// (infinity). Throws NotASingularPoint when the factor does not divide P2.
bool fuchsian_at(const LinearOperator& op, const SingularPoint& point);
// The same decision made at an explicit root, through the shifted operator.
bool fuchsian_at_root(const LinearOperator& op, const AlgebraicNumber& root);

struct SingularPointReport {
  SingularPoint point;
  bool fuchsian = false;
  // Local exponents: powers of (chi - p) at finite points, powers of chi
  // at infinity.
  std::vector<AlgebraicNumber> exponents;
  bool log_flag = false;
  // Leading exponent forced by the right side, and whether the particular
  // solution picks up a logarithm.
  std::optional<AlgebraicNumber> particular_exponent;
  bool particular_log = false;
  // Homogeneous solutions are multivalued around the point.
  bool branching = false;
};

// Throws NotFuchsian, or UnsupportedExtension for unsplit factors and
// exponents outside the point's field; HigherLogUnsupported when the
// particular solution would need a squared logarithm.
SingularPointReport indicial_data(const LinearOperator& op, const SingularPoint& point);

struct LocalShapeReport {
  std::vector<SingularPointReport> points;
  std::vector<std::string> unresolved;  // labels of points without indicial data

  std::vector<std::string> branching_points() const;
};

LocalShapeReport local_shape_report(const LinearOperator& op, const std::vector<Poly>& hints = {});

// Newton polygon of the operator written around a finite point: the
// coefficient of (chi - p)^n in P_i gives (n - i, 1), the right side gives
// (n, 0). The right side must be a polynomial.
NewtonPolygon operator_polygon(const LinearOperator& op, const AlgebraicNumber& point);

// Factors expected in P2. Exotic: A chi^2 + B chi + 1 and
// A chi^2 + (B - 4 theta^2) chi + 1; complicated: (a - c)^2 -+ 2a chi^2.
std::vector<Poly> singular_point_hints(const FamilySpec& f, const PVIParams& p);

}  // namespace pvi
