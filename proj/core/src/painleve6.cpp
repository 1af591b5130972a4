#include "pvi/painleve6.hpp"

#include <array>

namespace pvi {

using GR = GaussianRational;
using APoly = Polynomial<AlgebraicNumber>;

namespace {

constexpr std::array<std::pair<FamilyKind, const char*>, 8> kFamilyNames{{
    {FamilyKind::complicated_generic, "complicated-generic"},
    {FamilyKind::complicated_equal, "complicated-equal"},
    {FamilyKind::exotic_generic, "exotic-generic"},
    {FamilyKind::B0, "B0"},
    {FamilyKind::B1, "B1"},
    {FamilyKind::B2, "B2"},
    {FamilyKind::B6, "B6"},
    {FamilyKind::B7, "B7"},
}};

void require(bool ok, const std::string& what) {
  if (!ok) throw ConstraintViolation(what);
}

GR theta_sq(const Rational& theta) { return GR(theta * theta); }

// Roots of 2a t^2 + (C3 - 2a) t + 2c - C3 with C3 = 2c + theta^2.
std::vector<AlgebraicNumber> b0_roots(const Rational& theta, const PVIParams& p) {
  const auto k = exotic_constants(theta, p);
  return roots_low_degree(Poly({-theta_sq(theta), k.C1, GR(2) * p.a}));
}

// +1 if n1/d1 == n2/d2, -1 if n1/d1 == -n2/d2, 0 otherwise.
int compare_forms(const APoly& n1, const APoly& d1, const APoly& n2, const APoly& d2) {
  const APoly l = n1 * d2, r = n2 * d1;
  if ((l - r).is_zero()) return 1;
  if ((l + r).is_zero()) return -1;
  return 0;
}

APoly apoly(std::initializer_list<AlgebraicNumber> c) { return APoly(std::vector<AlgebraicNumber>(c)); }

// Phi0(lambda E) as num/den polynomials in E.
std::pair<APoly, APoly> phi0_scaled(const Rational& theta, const PVIParams& p, const AlgebraicNumber& lambda) {
  const auto k = exotic_constants(theta, p);
  const AlgebraicNumber t2(theta_sq(theta));
  return {apoly({AlgebraicNumber(0), AlgebraicNumber(GR(4)) * t2 * lambda}),
          apoly({AlgebraicNumber(1), AlgebraicNumber(k.B) * lambda, AlgebraicNumber(k.A) * lambda * lambda})};
}

std::string form_string(const APoly& n, const APoly& d, const std::string& var) {
  return "(" + to_string(n, var) + ")/(" + to_string(d, var) + ")";
}

}  // namespace

std::string to_string(FamilyKind kind) {
  for (const auto& [k, name] : kFamilyNames)
    if (k == kind) return name;
  return "?";
}

FamilyKind parse_family_kind(const std::string& s) {
  for (const auto& [k, name] : kFamilyNames)
    if (s == name) return k;
  throw ParseError("unknown family '" + s + "'");
}

bool is_exotic(FamilyKind kind) {
  return kind != FamilyKind::complicated_generic && kind != FamilyKind::complicated_equal;
}

Derivation derivation_for(const FamilySpec& f) {
  if (!is_exotic(f.kind)) return Derivation::complicated();
  require(sgn(f.theta) != 0, "exotic families need theta != 0");
  return Derivation::exotic(f.theta);
}

ExoticConstants exotic_constants(const Rational& theta, const PVIParams& p) {
  const GR t2 = theta_sq(theta);
  const GR amc = p.a - p.c;
  ExoticConstants k;
  k.A = t2 * t2 + GR(4) * (p.a + p.c) * t2 + GR(4) * amc * amc;
  k.B = GR(2) * t2 - GR(4) * amc;
  k.C1 = GR(2) * (p.c - p.a) + t2;
  return k;
}

void validate_family(const FamilySpec& f, const PVIParams& p) {
  const GR& a = p.a;
  const GR& c = p.c;
  switch (f.kind) {
    case FamilyKind::complicated_generic:
      require(!(a == c), "complicated-generic needs a != c");
      require(!a.is_zero() && !c.is_zero(), "complicated-generic needs a != 0 and c != 0");
      return;
    case FamilyKind::complicated_equal:
      require(a == c && !a.is_zero(), "complicated-equal needs a = c != 0");
      return;
    default:
      break;
  }
  require(sgn(f.theta) != 0, to_string(f.kind) + " needs theta != 0");
  const auto k = exotic_constants(f.theta, p);
  switch (f.kind) {
    case FamilyKind::exotic_generic:
      return;
    case FamilyKind::B0:
      require(!a.is_zero(), "B0 needs a != 0");
      require(!k.A.is_zero(), "B0 needs C3^2 + 4 C3 a + 4 a^2 - 16 a c != 0");
      return;
    case FamilyKind::B1:
    case FamilyKind::B2:
      require(!a.is_zero() && !c.is_zero() && !(a == c), to_string(f.kind) + " needs a != c, a != 0, c != 0");
      // sqrt(2c) -+ sqrt(2a) = +-i theta forces C1^2 + 8 a theta^2 = 0
      require(k.A.is_zero(), to_string(f.kind) + " needs (sqrt(2c) -+ sqrt(2a))^2 = -theta^2");
      return;
    case FamilyKind::B6:
      require(!a.is_zero() && c.is_zero(), "B6 needs a != 0, c = 0");
      require(a == GR(-f.theta * f.theta / 2), "B6 needs a = -theta^2/2 (C1 = -4a)");
      return;
    case FamilyKind::B7:
      require(a.is_zero(), "B7 needs a = 0");
      require(!k.C1.is_zero(), "B7 needs C1 = 2c + theta^2 != 0");
      return;
    default:
      return;
  }
}

RationalFunction phi0_rational(const FamilySpec& f, const PVIParams& p) {
  validate_family(f, p);
  const GR& a = p.a;
  const GR& c = p.c;
  if (f.kind == FamilyKind::complicated_generic) {
    const GR cma = c - a;
    return RationalFunction(Poly::monomial(GR(2) * cma, 2), Poly({cma * cma, GR(0), GR(-2) * a}));
  }
  if (f.kind == FamilyKind::complicated_equal) {
    auto s = sqrt_exact(GR(2) * a);
    if (!s) throw UnsupportedExtension("sqrt(2a) is not in Q(i) for a = " + a.str());
    return RationalFunction(Poly::monomial(s->inverse(), 1));
  }
  const auto k = exotic_constants(f.theta, p);
  return RationalFunction(Poly::monomial(GR(4) * theta_sq(f.theta), 1), Poly({GR(1), k.B, k.A}));
}

GradedSeries<RationalFunction> phi0_build(const FamilySpec& f, const PVIParams& p) {
  return GradedSeries<RationalFunction>::constant(derivation_for(f), phi0_rational(f, p));
}

RationalFunction exotic_delta_phi0(const Rational& theta, const PVIParams& p) {
  const auto k = exotic_constants(theta, p);
  const Poly g({GR(1), k.B, k.A});
  const GR lead = GR(Rational(0), Rational(-4) * theta * theta * theta);
  return RationalFunction(Poly({GR(0), -lead, GR(0), lead * k.A}), g * g);
}

FamilyCheck check_family_closed_form(const FamilySpec& f, const PVIParams& p) {
  validate_family(f, p);
  FamilyCheck out;
  out.kind = f.kind;
  if (!is_exotic(f.kind)) {
    out.matches = true;
    out.sign = 1;
    out.closed_form = phi0_rational(f, p).str("chi");
    out.note = "leading term is the closed form";
    return out;
  }
  const Rational& th = f.theta;
  const auto k = exotic_constants(th, p);
  const AlgebraicNumber t2(theta_sq(th));
  const AlgebraicNumber a(p.a), one(1), zero(0);
  const AlgebraicNumber ith(GR(Rational(0), th));
  APoly tn, td;
  AlgebraicNumber lambda;
  std::string var = "chi";
  switch (f.kind) {
    case FamilyKind::exotic_generic: {
      // -4 C0 theta^2 X / (A X^2 - 2 C1 C0 X + C0^2) with C0 = 1, X = -chi
      const AlgebraicNumber C1(k.C1), A(k.A);
      tn = apoly({zero, AlgebraicNumber(GR(-4)) * t2});
      td = apoly({one, AlgebraicNumber(GR(-2)) * C1, A});
      lambda = AlgebraicNumber(GR(-1));
      var = "X";
      out.note = "asymptotic form with X = -chi";
      break;
    }
    case FamilyKind::B6: {
      // 1/(1 + w), w = 1/(4 theta^2 chi)
      tn = apoly({zero, AlgebraicNumber(GR(4)) * t2});
      td = apoly({one, AlgebraicNumber(GR(4)) * t2});
      lambda = one;
      out.note = "1/(1+w) with w = 1/(4 theta^2 chi)";
      break;
    }
    case FamilyKind::B1:
    case FamilyKind::B2: {
      // s_a = sqrt(2a) = C1/(2 i theta); B1: s_c = s_a + i theta, B2: s_c = -(s_a + i theta)
      const AlgebraicNumber sa = AlgebraicNumber(k.C1) / (AlgebraicNumber(GR(2)) * ith);
      const bool b1 = f.kind == FamilyKind::B1;
      const AlgebraicNumber sc = b1 ? sa + ith : -(sa + ith);
      const AlgebraicNumber num = b1 ? one - sc / sa : one + sc / sa;
      const AlgebraicNumber diff = b1 ? sc - sa : -sc - sa;
      // num / (1 - w), w = -1/(4 s_a diff chi)  ->  num chi / (chi + 1/(4 s_a diff))
      tn = apoly({zero, num});
      td = apoly({one / (AlgebraicNumber(GR(4)) * sa * diff), one});
      lambda = one;
      out.note = b1 ? "(1 - sqrt(c/a))/(1 - w), w = -1/(4 sqrt(2a)(sqrt(2c) - sqrt(2a)) chi)"
                    : "(1 + sqrt(c/a))/(1 - w), w = -1/(4 sqrt(2a)(-sqrt(2c) - sqrt(2a)) chi)";
      break;
    }
    case FamilyKind::B0: {
      // alpha cos^2 u + beta sin^2 u with E = exp(2iu):
      // (2c - C3)/(2a) * 4E / ((alpha - beta)(E^2 + 1) + 2(alpha + beta) E)
      const auto r = b0_roots(th, p);
      const AlgebraicNumber& al = r.at(0);
      const AlgebraicNumber& be = r.at(1);
      const AlgebraicNumber pref = -t2 / (AlgebraicNumber(GR(2)) * a);
      tn = apoly({zero, pref * AlgebraicNumber(GR(4))});
      td = apoly({al - be, AlgebraicNumber(GR(2)) * (al + be), al - be});
      // chi = -E / (sigma sqrt(A)), sigma sqrt(A) = 2a(alpha - beta)
      lambda = -one / (AlgebraicNumber(GR(2)) * a * (al - be));
      var = "E";
      out.note = "trigonometric form with E = exp(2iu), chi = -E/(2a(alpha - beta))";
      break;
    }
    case FamilyKind::B7: {
      // (2c - C1)/C1 / sin^2 u = 4 theta^2 E / (C1 (E - 1)^2)
      const AlgebraicNumber C1(k.C1);
      tn = apoly({zero, AlgebraicNumber(GR(4)) * t2});
      td = apoly({C1, AlgebraicNumber(GR(-2)) * C1, C1});
      lambda = -one / C1;
      var = "E";
      out.note = "trigonometric form with E = exp(2iu), chi = -E/C1";
      break;
    }
    default:
      break;
  }
  auto [pn, pd] = phi0_scaled(th, p, lambda);
  out.sign = compare_forms(tn, td, pn, pd);
  out.matches = out.sign == 1;
  out.closed_form = form_string(tn, td, var);
  if (out.sign == -1) out.note += "; the printed form equals -Phi0";
  return out;
}

TruncationReport check_truncated_solution(const FamilySpec& f, const PVIParams& p) {
  const RationalFunction phi = phi0_rational(f, p);
  const Derivation der = derivation_for(f);
  const auto g = pvi_diffsum<RationalFunction>(p, der);
  const auto t = truncate_for_direction(g, Rational(0));
  const auto res = evaluate(t.sum, GradedSeries<RationalFunction>::constant(der, phi));
  for (const auto& [k, r] : res.terms()) {
    const int ord = r.order_at_zero();
    const GR lead = expand_to(r, ord + 1).coeff(ord);
    throw TruncationResidualNonzero("truncated equation at phi0 leaves grade " + std::to_string(k) + " residual " +
                                    r.str("chi") + " with leading coefficient " + lead.str() + " * chi^" +
                                    std::to_string(ord));
  }
  TruncationReport out;
  out.c = t.c;
  out.monomials = 0;
  for (const auto& [q, c] : t.sum.terms()) out.monomials += c.terms().size();
  out.phi0 = phi;
  return out;
}

}  // namespace pvi
