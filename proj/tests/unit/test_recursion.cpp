#include <doctest.h>

#include <algorithm>

#include "pvi/recursion.hpp"
#include "support/oracle.hpp"
#include "support/random.hpp"

using namespace pvi;
using GR = GaussianRational;
using RF = RationalFunction;

namespace {

PVIParams params(long a, long b, long c, long d) { return {GR(a), GR(b), GR(c), GR(d)}; }

const FamilySpec kExotic{FamilyKind::exotic_generic, 1};
const FamilySpec kComplicated{FamilyKind::complicated_generic, 0};

const ExpansionState& exotic_run() {
  static const ExpansionState s = expand(kExotic, params(1, 1, 1, 1), 4, 24);
  return s;
}

const ExpansionState& complicated_run() {
  static const ExpansionState s = expand(kComplicated, params(1, 1, 2, 1), 3, 16);
  return s;
}

bool agree(const Series& f, const Series& g, int upto) {
  for (int e = std::min(f.min_exp(), g.min_exp()); e < upto; ++e)
    if (!(f.coeff(e) == g.coeff(e))) return false;
  return true;
}

}  // namespace

TEST_CASE("forward substitution") {
  // identity operator
  CHECK(solve_series(RF(), RF(), RF(1), Series::monomial(GR(1), 1, 10)) == Series::monomial(GR(1), 1, 10));
  CHECK(solve_series(RF(), RF(), RF(1), Series()).is_exact_zero());
  CHECK_THROWS_AS(solve_series(RF(), RF(), RF(1), Series(GR(1))), PreconditionFailed);

  // chi f' - 2f = chi^3 / (1 - chi): f = sum_{n>=3} chi^n / (n - 2)
  const RF chi = RF::x();
  const Series rhs = expand_to(RF(Poly::monomial(GR(1), 3), Poly({GR(1), GR(-1)})), 12);
  const Series f = solve_series(RF(), chi, RF(-2), rhs);
  CHECK(f.precision() == 12);
  for (int n = 3; n < 12; ++n) CHECK(f.coeff(n) == GR(Rational(1, n - 2)));

  // resonance: chi f' - f = chi
  CHECK_THROWS_AS(solve_series(RF(), chi, RF(-1), Series::monomial(GR(1), 1, 8)), ResonantHead);

  // the head reads off the lowest terms of each coefficient
  const OperatorHead h = operator_head(RF(Poly::monomial(GR(3), 4)), RF(Poly::monomial(GR(5), 3)), RF(Poly({GR(0), GR(0), GR(7), GR(1)})));
  CHECK(h.h == 2);
  CHECK(h.at(2L) == GR(3 * 2 + 5 * 2 + 7));
}

TEST_CASE("solve is deterministic and local in the right side") {
  const auto& s = exotic_run();
  const CoefficientEquation& eq = s.equations[1];
  const Series a = solve_k(eq, 24);
  CHECK(a == solve_k(eq, 24));
  const int h = s.heads[1].head.h;
  for (int m : {4, 9}) {
    CoefficientEquation bumped = eq;
    bumped.rhs = eq.rhs + Series::monomial(GR(1), m);
    const Series b = solve_k(bumped, 24);
    for (int e = a.min_exp(); e < m - h; ++e) CHECK(a.coeff(e) == b.coeff(e));
    CHECK_FALSE(a.coeff(m - h) == b.coeff(m - h));
  }
}

TEST_CASE("exotic expansion") {
  const auto& s = exotic_run();
  REQUIRE(s.coefficients.size() == 5);
  CHECK(s.certified());
  for (const auto& g : s.audit) CHECK(g.zero);

  // leading exponents and head values
  const int r[] = {0, -1, -1, -2};
  const GR at_r[] = {GR(0, 64), GR(0, 256), GR(-160, 384), GR(-224, 768)};
  for (int k = 1; k <= 4; ++k) {
    const HeadData& hd = s.heads[static_cast<size_t>(k - 1)];
    CHECK(hd.head.h == 2);
    CHECK(*hd.r == r[k - 1]);
    CHECK(*hd.at_r == at_r[k - 1]);
    CHECK(s.coefficients[static_cast<size_t>(k)].precision() >= 24);
  }

  // phi_1 in closed form
  const RF phi1(Poly({GR(Rational(-1), Rational(-2)) * GR(0, 1), GR(0, 8), GR(-4), GR(0, -72), GR(Rational(81), Rational(-162)) * GR(0, 1)}),
                Poly({GR(1), GR(2), GR(9)}) * Poly({GR(1), GR(2), GR(9)}) * Poly(GR(4)));
  CHECK(agree(s.coefficients[1], expand_to(phi1, 24), 24));
  CHECK(s.coefficients[1].coeff(0) == GR(Rational(1, 2), Rational(-1, 4)));
}

TEST_CASE("head factor law") {
  // operator-derived indicial polynomial: 32 theta^4 (theta (s-1) - i k)^2
  testing::Gen gen(23);
  for (int trial = 0; trial < 4; ++trial) {
    const Rational th = trial == 0 ? Rational(1) : gen.rational(3, 2);
    if (sgn(th) == 0) continue;
    PVIParams p{gen.nonzero_gaussian(), gen.gaussian(3, 2), gen.gaussian(3, 2), gen.gaussian(3, 2)};
    const FamilySpec f{FamilyKind::exotic_generic, th};
    const ExpansionState st = prepare_state(f, p, 4, 8);
    const GR T(th);
    for (int k = 1; k <= 4; ++k) {
      const auto eq = build_linear_operator_k(st, k);
      const OperatorHead h = operator_head(eq.p2(), eq.p1(), eq.p0());
      CHECK(h.h == 2);
      for (long s : {-3L, 0L, 2L, 7L}) {
        const GR w = T * GR(s - 1) - GR(0, k);
        CHECK(h.at(s) == GR(32) * T * T * T * T * w * w);
      }
      const HeadData hd = head_data(st, eq, Series());
      if (hd.closed_form) CHECK(*hd.normalized == *hd.closed_form);
    }
  }

  // the spec instance: k=2, theta=a=c=1 -> -6-8i
  const ExpansionState st = prepare_state(kExotic, params(1, 0, 1, 0), 2, 8);
  const HeadData hd = head_data(st, build_linear_operator_k(st, 2), Series());
  CHECK(*hd.closed_form == GR(-6, -8));
  CHECK(*hd.normalized == GR(-6, -8));

  // B = 0 leaves the closed form undefined
  const ExpansionState b0 = prepare_state({FamilyKind::exotic_generic, 2}, params(1, 0, -1, 0), 1, 8);
  CHECK(exotic_constants(2, b0.params).B.is_zero());
  CHECK_FALSE(head_data(b0, build_linear_operator_k(b0, 1), Series()).closed_form);

  // complicated: constant head -8k^2
  for (int trial = 0; trial < 4; ++trial) {
    PVIParams p{gen.nonzero_gaussian(), gen.gaussian(3, 2), gen.nonzero_gaussian(), gen.gaussian(3, 2)};
    if (p.a == p.c) continue;
    const ExpansionState cs = prepare_state(kComplicated, p, 3, 8);
    for (int k = 1; k <= 3; ++k) {
      const auto eq = build_linear_operator_k(cs, k);
      const OperatorHead h = operator_head(eq.p2(), eq.p1(), eq.p0());
      CHECK(h.h == 0);
      CHECK(h.i2.is_zero());
      CHECK(h.i1.is_zero());
      CHECK(h.i0 == GR(-8L * k * k));
    }
  }
}

TEST_CASE("complicated expansion") {
  const auto& s = complicated_run();
  REQUIRE(s.coefficients.size() == 4);
  CHECK(s.certified());
  for (int k = 1; k <= 3; ++k) CHECK(*s.heads[static_cast<size_t>(k - 1)].normalized == GR(-8L * k * k));

  // normalized operator: polynomial coefficients of degrees 4, 5, 4, nonzero at 0
  const auto& eq = s.equations[0];
  for (const RF* q : {&eq.q2, &eq.q1, &eq.q0}) CHECK(q->is_polynomial());
  CHECK(eq.q2.num().degree() == 6);  // chi^2 P2
  CHECK(eq.q1.num().degree() == 6);  // chi P1
  CHECK(eq.q0.num().degree() == 4);
  CHECK_FALSE(eq.q0.num().coeff(0).is_zero());

  const int J = 16;
  const auto ref = oracle::expand(kComplicated, params(1, 1, 2, 1), 2, J + 4);
  for (int k = 1; k <= 2; ++k) CHECK(agree(s.coefficients[static_cast<size_t>(k)], ref[static_cast<size_t>(k)], J));
}

TEST_CASE("right side against the printed first-order polynomial") {
  const auto& s = exotic_run();
  const auto der = s.derivation();
  const oracle::Jet F = oracle::jet(der, expand_to(s.phi0, 40));
  const Series n1 = oracle::N1(s.params, F);
  const Series rhs = s.equations[0].rhs;
  CHECK(agree(rhs, -n1, 24));
  // the same right side from the direct polynomial
  CHECK(agree(rhs, -oracle::pvi_grade(der, s.params, {expand_to(s.phi0, 40)}, 1), 24));

  // with phi_1 forced to zero only the phi_0 part survives at grade 2
  ExpansionState z = s;
  z.coefficients = {s.coefficients[0], Series::zero(24)};
  CHECK(agree(compute_rhs_k(z, 2), -oracle::pvi_grade(der, s.params, {s.coefficients[0]}, 2), 20));
}

TEST_CASE("exotic coefficients against the undetermined-coefficients oracle") {
  const auto& s = exotic_run();
  const auto ref = oracle::expand(kExotic, s.params, 2, 28);
  for (int k = 1; k <= 2; ++k) CHECK(agree(s.coefficients[static_cast<size_t>(k)], ref[static_cast<size_t>(k)], 24));
}

TEST_CASE("residual audit catches corrupted coefficients") {
  const auto& s = exotic_run();
  ExpansionState bad = s;
  Series& phi2 = bad.coefficients[2];
  phi2 = phi2 + Series::monomial(GR(1), 5);
  const auto audit = residual_orders(bad);
  CHECK(audit[0].zero);
  CHECK(audit[1].zero);
  CHECK_FALSE(audit[2].zero);
  CHECK(*audit[2].first_nonzero == 5 + s.heads[1].head.h);

  const ExpansionState k0 = expand(kExotic, params(1, 1, 1, 1), 0, 10);
  REQUIRE(k0.audit.size() == 1);
  CHECK(k0.audit[0].zero);
  CHECK(k0.coefficients.size() == 1);
}

TEST_CASE("every stored coefficient is inside the audit window") {
  for (const ExpansionState* s : {&exotic_run(), &complicated_run()}) {
    for (size_t k = 0; k < s->coefficients.size(); ++k) {
      const Series& phi = s->coefficients[k];
      CHECK(phi.precision() >= s->J);
      for (int e : {phi.min_exp(), s->J - 1, phi.precision() - 1}) {
        ExpansionState bad = *s;
        bad.coefficients[k] = phi + Series::monomial(GR(1), e, phi.precision());
        const auto audit = residual_orders(bad);
        CHECK(std::any_of(audit.begin(), audit.end(), [](const GradeAudit& g) { return !g.zero; }));
      }
    }
  }
}

TEST_CASE("rationality certificates") {
  const auto& s = exotic_run();
  const auto certs = rationality_certificates(s, 12);
  REQUIRE(certs.size() == 4);
  const int num_deg[] = {4, 8, 10, 14};
  const int den_deg[] = {4, 6, 8, 10};
  for (int k = 1; k <= 4; ++k) {
    const auto& c = certs[static_cast<size_t>(k - 1)];
    CHECK(c.certified());
    // degrees of N/D in phi = chi^r N / D
    const int r = *s.heads[static_cast<size_t>(k - 1)].r;
    CHECK(c.value->num().degree() == num_deg[k - 1]);
    CHECK(c.value->den().degree() + r == den_deg[k - 1]);
  }
  CHECK(*certs[0].value == RF(Poly({GR(Rational(-1), Rational(-2)) * GR(0, 1), GR(0, 8), GR(-4), GR(0, -72),
                                     GR(Rational(81), Rational(-162)) * GR(0, 1)}),
                              Poly({GR(1), GR(2), GR(9)}) * Poly({GR(1), GR(2), GR(9)}) * Poly(GR(4))));

  CHECK(rationality_certificate(s, 1, 12).certified());
  CHECK_THROWS_AS(rationality_certificate(s, 1, 16), InsufficientTerms);
  CHECK(rationality_certificate(s, 4, 12).certified());
  CHECK_THROWS_AS(rationality_certificates(complicated_run(), 4), PreconditionFailed);

  // a corrupted coefficient is no longer certified
  ExpansionState bad = s;
  bad.coefficients[2] = bad.coefficients[2] + Series::monomial(GR(1), 20);
  const auto broken = rationality_certificates(bad, 12);
  CHECK_FALSE(broken[1].certified());
}

TEST_CASE("expansion preconditions") {
  CHECK_THROWS_AS(expand(kComplicated, params(1, 0, 1, 0), 2, 8), ConstraintViolation);
  CHECK_THROWS_AS(expand(kExotic, params(1, 0, 1, 0), -1, 8), PreconditionFailed);
  CHECK_THROWS_AS(build_linear_operator_k(exotic_run(), 0), PreconditionFailed);
  ExpansionState empty = prepare_state(kExotic, params(1, 0, 1, 0), 2, 8);
  CHECK_THROWS_AS(compute_rhs_k(empty, 1), InsufficientKnownOrder);
}
