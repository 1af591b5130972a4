#include <doctest.h>

#include "pvi/painleve6.hpp"
#include "support/random.hpp"

using namespace pvi;
using GR = GaussianRational;
using RF = RationalFunction;
using G = GradedSeries<RF>;
using S = DiffSum<RF>;

namespace {

PVIParams params(long a, long b, long c, long d) { return {GR(a), GR(b), GR(c), GR(d)}; }

// Exotic samples: theta random, a and c random.
PVIParams random_params(testing::Gen& gen) {
  return {GR(gen.rational(4, 3)), gen.gaussian(3, 2), GR(gen.rational(4, 3)), gen.gaussian(3, 2)};
}

}  // namespace

TEST_CASE("PVI differential sum shape") {
  const auto der = Derivation::exotic(1);
  const auto g = pvi_diffsum<RF>(params(1, 2, 3, 4), der);
  int top = 0;
  for (const auto& [q, c] : g.terms()) top = std::max(top, total_degree(q));
  CHECK(top == 6);
  // 2 x^2 (x-1)^2 y (y-1)(y-x) y'' contributes 2(x-1)^2 * (y^3 - (1+x) y^2 + x y) * delta^2 y
  const G c = g.coefficient({3, 0, 1});
  CHECK(c == G::constant(der, RF(2)) + G::constant(der, RF(-4), 1) + G::constant(der, RF(2), 2));
  CHECK(g.coefficient({6, 0, 0}) == G::constant(der, RF(-2)));

  // parameters only enter the derivative-free monomials
  const auto g0 = pvi_diffsum<RF>(params(0, 0, 0, 0), der);
  for (const auto& [q, c2] : g0.terms()) CHECK(q[1] + q[2] > 0);
  for (const auto& [q, c2] : g.terms())
    if (q[1] + q[2] > 0) CHECK(g0.coefficient(q) == c2);

  // support does not depend on generic parameter values
  CHECK(support(g) == support(pvi_diffsum<RF>(params(5, -1, 7, 2), der)));

  // negative control: y = x is not a solution
  const auto res = evaluate(g, G::constant(der, RF(1), 1));
  CHECK_FALSE(res.x_order().minus_infinity);
}

TEST_CASE("leading terms") {
  FamilySpec cg{FamilyKind::complicated_generic, 0};
  CHECK(phi0_rational(cg, params(1, 0, 2, 0)) == RF(Poly::monomial(GR(2), 2), Poly({GR(1), GR(0), GR(-2)})));
  FamilySpec ex{FamilyKind::exotic_generic, 1};
  auto k = exotic_constants(1, params(1, 0, 1, 0));
  CHECK(k.A == GR(9));
  CHECK(k.B == GR(2));
  CHECK(phi0_rational(ex, params(1, 0, 1, 0)) == RF(Poly::monomial(GR(4), 1), Poly({GR(1), GR(2), GR(9)})));
  FamilySpec b6{FamilyKind::B6, 3};
  auto p6 = PVIParams{GR(Rational(-9, 2)), GR(1), GR(0), GR(2)};
  auto k6 = exotic_constants(3, p6);
  CHECK(k6.A.is_zero());
  CHECK(k6.B == GR(36));
  CHECK(check_family_closed_form(b6, p6).matches);

  FamilySpec ce{FamilyKind::complicated_equal, 0};
  CHECK(phi0_rational(ce, params(2, 0, 2, 0)) == RF(Poly::monomial(GR(Rational(1, 2)), 1)));
  CHECK_THROWS_AS(phi0_rational(ce, params(1, 0, 1, 0)), UnsupportedExtension);
  CHECK(phi0_rational(ce, PVIParams{GR(0, 1), GR(0), GR(0, 1), GR(0)}) ==
        RF(Poly::monomial(GR(1, 1).inverse(), 1)));

  CHECK_THROWS_AS(phi0_rational(cg, params(1, 0, 1, 0)), ConstraintViolation);
  CHECK_THROWS_AS(phi0_rational(cg, params(0, 0, 1, 0)), ConstraintViolation);
  CHECK_THROWS_AS(phi0_rational(ce, params(1, 0, 2, 0)), ConstraintViolation);
  CHECK_THROWS_AS(phi0_rational(FamilySpec{FamilyKind::B7, 1}, params(1, 0, 1, 0)), ConstraintViolation);
  CHECK_THROWS_AS(phi0_rational(FamilySpec{FamilyKind::exotic_generic, 0}, params(1, 0, 1, 0)), ConstraintViolation);
  CHECK_THROWS_AS(check_truncated_solution(cg, params(1, 0, 1, 0)), ConstraintViolation);
}

TEST_CASE("truncated equation vanishes at the leading term") {
  auto r1 = check_truncated_solution({FamilyKind::complicated_generic, 0}, params(1, 5, 2, -3));
  CHECK(r1.c == 0);
  auto r2 = check_truncated_solution({FamilyKind::exotic_generic, 1}, params(1, 1, 1, 1));
  CHECK(r2.c == 0);
  CHECK(r2.monomials > 0);
  check_truncated_solution({FamilyKind::complicated_equal, 0}, params(2, 1, 2, 7));

  testing::Gen gen(17);
  for (int trial = 0; trial < 6; ++trial) {
    PVIParams p = random_params(gen);
    Rational th = gen.rational(3, 3);
    if (sgn(th) == 0) th = 1;
    CHECK_NOTHROW(check_truncated_solution({FamilyKind::exotic_generic, th}, p));
    if (!(p.a == p.c) && !p.a.is_zero() && !p.c.is_zero())
      CHECK_NOTHROW(check_truncated_solution({FamilyKind::complicated_generic, 0}, p));
  }
}

TEST_CASE("a wrong leading term leaves a residual") {
  // -Phi0 does not solve the truncated equation
  const auto der = Derivation::exotic(1);
  const auto p = params(1, 1, 1, 1);
  const auto t = truncate_for_direction(pvi_diffsum<RF>(p, der), 0);
  const RF phi = phi0_rational({FamilyKind::exotic_generic, 1}, p);
  CHECK(evaluate(t.sum, G::constant(der, phi)).empty());
  CHECK_FALSE(evaluate(t.sum, G::constant(der, -phi)).empty());
}

TEST_CASE("linear part matches the special-form operator") {
  testing::Gen gen(2);
  for (int trial = 0; trial < 4; ++trial) {
    PVIParams p = random_params(gen);
    const bool exotic = trial % 2 == 0;
    FamilySpec f{exotic ? FamilyKind::exotic_generic : FamilyKind::complicated_generic, exotic ? Rational(Rational(trial + 1) / 2) : Rational(0)};
    if (!exotic && (p.a == p.c || p.a.is_zero() || p.c.is_zero())) continue;
    const auto der = derivation_for(f);
    const RF F = phi0_rational(f, p);
    const RF Fd = apply(der, F);
    const RF Fdd = apply(der, Fd) - Fd;
    const auto form = substitute_affine(pvi_diffsum<RF>(p, der), phi0_build(f, p));
    const auto L = form.standard_basis();
    const RF a(p.a), c(p.c), two(2), three(3);
    CHECK(L[2] == two * F * F * (F - RF(1)));
    CHECK(L[1] == two * F * (three * F * F - three * F * Fd - three * F + two * Fd));
    const RF F2 = F * F, F3 = F2 * F, F4 = F3 * F, F5 = F4 * F;
    const RF u0 = -two * (RF(6) * a * F5 - RF(10) * a * F4 + RF(4) * a * F3 - RF(4) * c * F3 - F3 -
                          three * F2 * Fdd + three * F * Fd * Fd + F2 + two * F * Fdd - Fd * Fd);
    CHECK(L[0] == u0);
    // the free part starts at grade 0 once the truncated equation holds
    CHECK(form.free.low() >= 0);
  }
}

TEST_CASE("exotic delta of the leading term") {
  testing::Gen gen(6);
  for (int trial = 0; trial < 6; ++trial) {
    PVIParams p = random_params(gen);
    Rational th = gen.rational(3, 4);
    if (sgn(th) == 0) th = Rational(1, 3);
    FamilySpec f{FamilyKind::exotic_generic, th};
    CHECK(delta_apply(phi0_build(f, p)) == G::constant(derivation_for(f), exotic_delta_phi0(th, p)));
  }
  CHECK(exotic_delta_phi0(1, params(1, 0, 1, 0)) ==
        RF(Poly({GR(0), GR(0, 4), GR(0), GR(0, -36)}), Poly({GR(1), GR(2), GR(9)}) * Poly({GR(1), GR(2), GR(9)})));
}

TEST_CASE("basic exotic families") {
  // exotic-generic against the two-parameter asymptotic form
  auto eg = check_family_closed_form({FamilyKind::exotic_generic, 1}, params(1, 0, 1, 0));
  CHECK(eg.matches);

  // B6: c = 0, a = -theta^2/2
  for (long th : {1, 2, 5}) {
    FamilySpec f{FamilyKind::B6, th};
    PVIParams p{GR(Rational(-th * th) / 2), GR(3), GR(0), GR(-1)};
    CHECK(check_family_closed_form(f, p).matches);
    CHECK_NOTHROW(check_truncated_solution(f, p));
  }
  CHECK_THROWS_AS(validate_family({FamilyKind::B6, 1}, params(1, 0, 0, 0)), ConstraintViolation);

  // B1/B2: sqrt(2a) = 1, sqrt(2c) = 1 + 2i, theta = 2 -> a = 1/2, c = (1+2i)^2/2 = -3/2 + 2i
  PVIParams p12{GR(Rational(1, 2)), GR(1), GR(Rational(-3, 2), Rational(2)), GR(2)};
  for (auto kind : {FamilyKind::B1, FamilyKind::B2}) {
    FamilySpec f{kind, 2};
    CHECK_NOTHROW(validate_family(f, p12));
    CHECK(exotic_constants(2, p12).A.is_zero());
    CHECK(check_family_closed_form(f, p12).matches);
    CHECK_NOTHROW(check_truncated_solution(f, p12));
  }
  CHECK_THROWS_AS(validate_family({FamilyKind::B1, 1}, params(1, 0, 2, 0)), ConstraintViolation);

  // B0 with A a square and with A outside Q(i)
  for (auto p : {params(1, 0, 1, 0), params(1, 2, 3, 4), params(2, 0, -1, 1)}) {
    FamilySpec f{FamilyKind::B0, 1};
    auto chk = check_family_closed_form(f, p);
    CHECK(chk.matches);
    CHECK(chk.sign == 1);
  }

  // B7: a = 0; the trigonometric form comes out with the opposite sign
  for (long c : {1, 2, -3}) {
    FamilySpec f{FamilyKind::B7, 1};
    auto p = params(0, 1, c, 1);
    auto chk = check_family_closed_form(f, p);
    CHECK(chk.sign == -1);
    CHECK_FALSE(chk.matches);
    CHECK_NOTHROW(check_truncated_solution(f, p));
  }
}

TEST_CASE("family names round-trip") {
  for (auto k : {FamilyKind::complicated_generic, FamilyKind::complicated_equal, FamilyKind::exotic_generic,
                 FamilyKind::B0, FamilyKind::B1, FamilyKind::B2, FamilyKind::B6, FamilyKind::B7})
    CHECK(parse_family_kind(to_string(k)) == k);
  CHECK_THROWS_AS(parse_family_kind("B3"), ParseError);
}
