#pragma once

#include <optional>
#include <string>

#include "pvi/algebraic.hpp"
#include "pvi/diffsum.hpp"
#include "pvi/polygon.hpp"

namespace pvi {

struct PVIParams {
  GaussianRational a, b, c, d;
};

enum class FamilyKind { complicated_generic, complicated_equal, exotic_generic, B0, B1, B2, B6, B7 };

std::string to_string(FamilyKind kind);
FamilyKind parse_family_kind(const std::string& s);
bool is_exotic(FamilyKind kind);

struct FamilySpec {
  FamilyKind kind = FamilyKind::exotic_generic;
  Rational theta{1};  // exotic kinds only
};

Derivation derivation_for(const FamilySpec& f);

// Throws ConstraintViolation when the family preconditions fail.
void validate_family(const FamilySpec& f, const PVIParams& p);

// Coefficients of the exotic leading term 4 theta^2 chi / (A chi^2 + B chi + 1),
// with C1 = 2(c - a) + theta^2.
struct ExoticConstants {
  GaussianRational A, B, C1;
};
ExoticConstants exotic_constants(const Rational& theta, const PVIParams& p);

// The polynomial form of PVI in delta = x d/dx, multiplied through by
// x^2 (x-1)^2 y (y-1) (y-x).
template <class R>
DiffSum<R> pvi_diffsum(const PVIParams& p, const Derivation& der) {
  using S = DiffSum<R>;
  using GR = GaussianRational;
  auto k = [&](const GR& v, int grade = 0) { return S::constant(der, R(v), grade); };
  auto X = [&](int e) { return k(GR(1), e); };
  const S one = k(GR(1));
  const S Y = S::variable(der, 0), Y1 = S::variable(der, 1), Y2 = S::variable(der, 2);
  const S xm1 = X(1) - one;
  const GR& a = p.a;
  const GR& b = p.b;
  const GR& c = p.c;
  const GR& d = p.d;
  S g = k(GR(2)) * xm1 * xm1 * Y * (Y - one) * (Y - X(1)) * (Y2 - Y1);
  g = g - xm1 * xm1 * (k(GR(3)) * Y * Y - k(GR(2)) * X(1) * Y - k(GR(2)) * Y + X(1)) * Y1 * Y1;
  g = g + k(GR(2)) * Y * xm1 * (Y - one) * (k(GR(2)) * X(1) * Y - X(2) - Y) * Y1;
  g = g - k(GR(2) * a) * pow(Y, 6);
  g = g + k(GR(4) * a) * (X(1) + one) * pow(Y, 5);
  g = g - k(GR(2)) * (k(a + d, 2) + k(GR(4) * a + b + c - d, 1) + k(a - c)) * pow(Y, 4);
  g = g + k(GR(4)) * X(1) * (k(a + b + c + d, 1) + k(a + b - c - d)) * pow(Y, 3);
  g = g - k(GR(2)) * (k(b + c, 3) + k(a + GR(4) * b - c + d, 2) + k(b - d, 1)) * Y * Y;
  g = g + k(GR(4) * b, 2) * (X(1) + one) * Y;
  g = g - k(GR(2) * b, 3);
  return g;
}

// Leading term phi0 as a rational function of chi.
RationalFunction phi0_rational(const FamilySpec& f, const PVIParams& p);
GradedSeries<RationalFunction> phi0_build(const FamilySpec& f, const PVIParams& p);

// Closed form of delta Phi0 for the exotic leading term:
// -4 i theta^3 chi (A chi^2 - 1) / (A chi^2 + B chi + 1)^2.
RationalFunction exotic_delta_phi0(const Rational& theta, const PVIParams& p);

// Comparison of the general leading term with a family's own closed form
// after rescaling chi.
struct FamilyCheck {
  FamilyKind kind;
  bool matches = false;
  // +1 when the closed form equals Phi0, -1 when it equals -Phi0.
  int sign = 0;
  std::string closed_form;
  std::string note;
};
FamilyCheck check_family_closed_form(const FamilySpec& f, const PVIParams& p);

struct TruncationReport {
  Rational c;
  size_t monomials = 0;
  RationalFunction phi0;
};

// Evaluates the truncation of the PVI sum along (1, 0) at phi0 and certifies
// that it vanishes identically. Throws TruncationResidualNonzero otherwise.
TruncationReport check_truncated_solution(const FamilySpec& f, const PVIParams& p);

}  // namespace pvi
