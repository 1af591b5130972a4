#include "pvi/fuchs.hpp"

#include <algorithm>

namespace pvi {

using GR = GaussianRational;
using RF = RationalFunction;
using AN = AlgebraicNumber;
using APoly = Polynomial<AN>;
using ASeries = LaurentSeries<AN>;

namespace {

int val(const APoly& p) { return p.is_zero() ? kExact : p.valuation(); }

bool is_integer_value(const AN& z, long* out = nullptr) {
  if (!z.is_rational()) return false;
  const GR& g = z.as_gaussian();
  if (!g.is_real() || !is_integer(g.re())) return false;
  if (out) *out = g.re().get_num().get_si();
  return true;
}

Series times_rf(const RF& m, const Series& s) {
  if (m == RF(1) || s.is_exact_zero()) return s;
  if (s.is_exact()) {
    if (!m.is_polynomial()) throw PreconditionFailed("multiplier with poles needs a truncated series");
    return Series::from_polynomial(m.num()) * s;
  }
  const int lo = s.has_nonzero() ? s.min_exp() : s.precision();
  return expand_to(m, s.precision() - lo + m.order_at_zero()) * s;
}

GR lowest_coefficient(const RF& r) {
  const int o = r.order_at_zero();
  return expand_to(r, o + 1).coeff(o);
}

// Operator written in a local variable at a point, with the right side.
struct Local {
  APoly s2, s1, s0;
  std::optional<ASeries> rhs;
  bool at_infinity = false;
};

Local localize(const LinearOperator& op, const SingularPoint& pt) {
  Local l;
  constexpr int kTerms = 64;
  if (pt.kind == SingularPoint::Kind::infinity) {
    const int n = std::max({op.P2.degree(), op.P1.degree(), op.P0.degree(), 0});
    const Poly r2 = op.P2.reversed(n), r1 = op.P1.reversed(n), r0 = op.P0.reversed(n);
    l.s2 = lift(r2.shifted(4));
    l.s1 = lift(r2.shifted(3).scaled(GR(2)) - r1.shifted(2));
    l.s0 = lift(r0);
    if (op.rhs && !op.rhs->is_zero()) l.rhs = rational_expand(*op.rhs, AtInfinity{}, kTerms).mul_pow(n);
    l.at_infinity = true;
    return l;
  }
  if (!pt.location) throw UnsupportedExtension("point " + pt.label() + " has no explicit location");
  const AN& w = *pt.location;
  l.s2 = lift(op.P2).taylor_shift(w);
  l.s1 = lift(op.P1).taylor_shift(w);
  l.s0 = lift(op.P0).taylor_shift(w);
  if (op.rhs && !op.rhs->is_zero()) l.rhs = rational_expand(*op.rhs, ExpansionPoint(w), kTerms);
  return l;
}

struct Frobenius {
  int h = 0;
  std::vector<std::array<AN, 3>> t;  // T_j coefficients

  AN T(size_t j, const AN& s) const {
    if (j >= t.size()) return AN(0);
    const auto& c = t[j];
    return c[0] * s * (s - AN(1)) + c[1] * s + c[2];
  }
};

Frobenius frobenius(const Local& l, int terms) {
  Frobenius f;
  f.h = val(l.s2) - 2;
  for (int j = 0; j < terms; ++j) {
    auto c = [&](const APoly& p, int e) { return e < 0 ? AN(0) : p.coeff(e); };
    f.t.push_back({c(l.s2, f.h + 2 + j), c(l.s1, f.h + 1 + j), c(l.s0, f.h + j)});
  }
  return f;
}

std::vector<AN> quadratic_roots(const AN& a2, const AN& a1, const AN& a0) {
  const AN b = a1 / a2, c = a0 / a2;
  if (b.is_rational() && c.is_rational()) {
    auto r = roots_low_degree(Poly({c.as_gaussian(), b.as_gaussian(), GR(1)}));
    if (r.size() == 1) r.push_back(r[0]);
    return r;
  }
  const AN disc = b * b - AN(4) * c;
  if (disc.is_zero()) return {-b / AN(2), -b / AN(2)};
  if (disc.is_rational())
    if (auto s = sqrt_exact(disc.as_gaussian())) return {(-b + AN(*s)) / AN(2), (-b - AN(*s)) / AN(2)};
  throw UnsupportedExtension("indicial roots need a second extension");
}

// Coefficient of the log obstruction at rho + n for the homogeneous series
// started at rho.
AN obstruction(const Frobenius& f, const AN& rho, int n) {
  std::vector<AN> c{AN(1)};
  for (int k = 1; k <= n; ++k) {
    AN acc(0);
    for (int j = 1; j <= k; ++j) acc += f.T(static_cast<size_t>(j), rho + AN(static_cast<long>(k - j))) * c[static_cast<size_t>(k - j)];
    if (k == n) return acc;
    c.push_back(-acc / f.T(0, rho + AN(static_cast<long>(k))));
  }
  return AN(0);
}

}  // namespace

RF LinearOperator::apply(const RF& f) const {
  const RF d1 = f.derivative();
  return RF(P2) * d1.derivative() + RF(P1) * d1 + RF(P0) * f;
}

LinearOperator normalize_operator(const LinearOperator& op) {
  Poly g = gcd(gcd(op.P2, op.P1), op.P0);
  if (op.rhs) g = op.rhs->is_polynomial() ? gcd(g, op.rhs->num()) : Poly(GR(1));
  LinearOperator out = op;
  if (g.is_zero() || g.degree() == 0) return out;
  g = g.monic();
  out.P2 = divmod(op.P2, g).first;
  out.P1 = divmod(op.P1, g).first;
  out.P0 = divmod(op.P0, g).first;
  const RF inv(Poly(GR(1)), g);
  if (out.rhs) out.rhs = *out.rhs * inv;
  out.rhs_series = times_rf(inv, op.rhs_series);
  out.multiplier = op.multiplier * inv;
  return out;
}

LinearOperator normalize_operator(const CoefficientEquation& eqn, const std::optional<RF>& exact_rhs) {
  const RF p2 = eqn.p2(), p1 = eqn.p1();
  const RF& p0 = eqn.p0();
  Poly l = lcm(lcm(p2.den(), p1.den()), p0.den());
  if (exact_rhs) l = lcm(l, exact_rhs->den());
  RF m(l);
  if (eqn.der.kind == VariableKind::exotic) {
    // make the multiplier start with -1/(16 theta^4) after the gcd is removed
    Poly g = gcd(gcd((p2 * m).num(), (p1 * m).num()), (p0 * m).num());
    if (exact_rhs) g = gcd(g, (*exact_rhs * m).num());
    g = g.monic();
    const RF reduced = m / RF(g);
    const GR th(eqn.der.theta);
    m = m.scaled(GR(-1) / (GR(16) * th * th * th * th * lowest_coefficient(reduced)));
  }
  LinearOperator op;
  op.P2 = (p2 * m).num();
  op.P1 = (p1 * m).num();
  op.P0 = (p0 * m).num();
  if (exact_rhs) op.rhs = *exact_rhs * m;
  op.rhs_series = times_rf(m, eqn.rhs);
  op.multiplier = eqn.multiplier * m;
  return normalize_operator(op);
}

std::string SingularPoint::label() const {
  switch (kind) {
    case Kind::zero: return "0";
    case Kind::infinity: return "inf";
    case Kind::finite: break;
  }
  if (location) {
    if (location->is_rational()) return location->str();
    return location->str() + " where " + location->field()->str();
  }
  return "root of " + to_string(factor, "chi");
}

std::vector<SingularPoint> singular_points(const LinearOperator& op, const std::vector<Poly>& hints) {
  std::vector<SingularPoint> zero, finite;
  for (auto [f, m] : square_free_decomposition(op.P2)) {
    if (f.degree() < 1) continue;
    f = f.monic();
    if (f.coeff(0).is_zero()) {
      zero.push_back({SingularPoint::Kind::zero, AN(0), Poly::x(), m});
      f = divmod(f, Poly::x()).first;
      if (f.degree() < 1) continue;
    }
    std::vector<Poly> pieces{f};
    for (const Poly& h : hints) {
      std::vector<Poly> next;
      for (const Poly& p : pieces) {
        const Poly g = gcd(p, h);
        if (g.degree() > 0 && g.degree() < p.degree()) {
          next.push_back(g.monic());
          next.push_back(divmod(p, g).first.monic());
        } else {
          next.push_back(p);
        }
      }
      pieces = std::move(next);
    }
    for (const Poly& p : pieces) {
      if (p.degree() > 2) {
        finite.push_back({SingularPoint::Kind::finite, std::nullopt, p, m});
        continue;
      }
      for (const AN& r : roots_low_degree(p)) {
        const Poly carrier = r.is_rational() ? Poly({-r.as_gaussian(), GR(1)}) : p;
        finite.push_back({SingularPoint::Kind::finite, r, carrier, m});
      }
    }
  }
  std::vector<SingularPoint> out = zero;
  out.insert(out.end(), finite.begin(), finite.end());
  out.push_back({SingularPoint::Kind::infinity, std::nullopt, Poly(), 0});
  return out;
}

bool fuchsian_at(const LinearOperator& op, const SingularPoint& point) {
  if (point.kind == SingularPoint::Kind::infinity) {
    const int n = op.P2.degree();
    return op.P1.degree() <= n - 1 && op.P0.degree() <= n - 2;
  }
  const Poly& g = point.factor;
  const int m = multiplicity(g, op.P2);
  if (m == 0) throw NotASingularPoint(point.label() + " is not a root of the leading coefficient");
  const bool p1 = m < 2 || divides(pow(g, static_cast<unsigned>(m - 1)), op.P1);
  const bool p0 = m < 3 || divides(pow(g, static_cast<unsigned>(m - 2)), op.P0);
  return p1 && p0;
}

bool fuchsian_at_root(const LinearOperator& op, const AN& root) {
  const APoly s2 = lift(op.P2).taylor_shift(root);
  const int m = val(s2);
  if (m == 0 || m == kExact) throw NotASingularPoint(root.str() + " is not a root of the leading coefficient");
  return val(lift(op.P1).taylor_shift(root)) >= m - 1 && val(lift(op.P0).taylor_shift(root)) >= m - 2;
}

SingularPointReport indicial_data(const LinearOperator& op, const SingularPoint& point) {
  SingularPointReport rep;
  rep.point = point;
  rep.fuchsian = fuchsian_at(op, point);
  if (!rep.fuchsian) throw NotFuchsian("operator is not Fuchsian at " + point.label());
  const Local l = localize(op, point);
  const int m = val(l.s2);
  const int h = m - 2;
  auto at = [](const APoly& p, int e) { return e < 0 ? AN(0) : p.coeff(e); };
  const AN c2 = at(l.s2, m), c1 = at(l.s1, m - 1), c0 = at(l.s0, h);
  std::vector<AN> roots = quadratic_roots(c2, c1 - c2, c0);
  const bool repeated = roots[0] == roots[1];

  long gap = 0;
  std::optional<AN> lower;
  if (repeated) {
    rep.log_flag = true;
  } else if (is_integer_value(roots[0] - roots[1], &gap)) {
    lower = gap > 0 ? roots[1] : roots[0];
    gap = std::labs(gap);
  }

  Frobenius fr = frobenius(l, static_cast<int>(gap) + 66);
  if (lower) rep.log_flag = !obstruction(fr, *lower, static_cast<int>(gap)).is_zero();

  if (l.rhs && l.rhs->has_nonzero()) {
    const ASeries& r = *l.rhs;
    const long ep = r.min_exp() - h;
    long nmax = -1;
    for (const AN& root : roots) {
      long d = 0;
      if (is_integer_value(root - AN(ep), &d) && d >= 0) nmax = std::max(nmax, d);
    }
    std::vector<AN> c;
    for (long n = 0; n <= nmax; ++n) {
      AN acc = r.coeff(static_cast<int>(h + ep + n));
      for (long j = 1; j <= n; ++j) acc -= fr.T(static_cast<size_t>(j), AN(ep + n - j)) * c[static_cast<size_t>(n - j)];
      const AN head = fr.T(0, AN(ep + n));
      if (head.is_zero()) {
        if (!acc.is_zero()) {
          if (repeated) throw HigherLogUnsupported("particular solution at " + point.label() + " needs a squared logarithm");
          rep.particular_log = true;
          break;
        }
        c.push_back(AN(0));
      } else {
        c.push_back(acc / head);
      }
    }
    rep.particular_exponent = AN(l.at_infinity ? -ep : ep);
  }

  if (l.at_infinity)
    for (auto& r : roots) r = -r;
  rep.exponents = roots;
  rep.branching = rep.log_flag || !is_integer_value(roots[0]) || !is_integer_value(roots[1]);
  return rep;
}

std::vector<std::string> LocalShapeReport::branching_points() const {
  std::vector<std::string> out;
  for (const auto& p : points)
    if (p.fuchsian && p.branching) out.push_back(p.point.label());
  return out;
}

LocalShapeReport local_shape_report(const LinearOperator& op, const std::vector<Poly>& hints) {
  LocalShapeReport rep;
  for (const SingularPoint& pt : singular_points(op, hints)) {
    if (pt.kind == SingularPoint::Kind::finite && !pt.location) {
      rep.unresolved.push_back(pt.label());
      continue;
    }
    if (!fuchsian_at(op, pt)) {
      SingularPointReport r;
      r.point = pt;
      rep.points.push_back(r);
      continue;
    }
    rep.points.push_back(indicial_data(op, pt));
  }
  return rep;
}

NewtonPolygon operator_polygon(const LinearOperator& op, const AN& point) {
  if (!op.rhs || !op.rhs->is_polynomial()) throw PreconditionFailed("operator polygon needs a polynomial right side");
  std::vector<SupportPoint> pts;
  const APoly s[3] = {lift(op.P0).taylor_shift(point), lift(op.P1).taylor_shift(point), lift(op.P2).taylor_shift(point)};
  for (int i = 0; i < 3; ++i)
    for (int n = 0; n <= s[i].degree(); ++n)
      if (!s[i].coeff(n).is_zero()) pts.push_back({Rational(n - i), 1});
  const APoly r = lift(op.rhs->num()).taylor_shift(point);
  for (int n = 0; n <= r.degree(); ++n)
    if (!r.coeff(n).is_zero()) pts.push_back({Rational(n), 0});
  return build_polygon(std::move(pts));
}

std::vector<Poly> singular_point_hints(const FamilySpec& f, const PVIParams& p) {
  if (is_exotic(f.kind)) {
    const auto k = exotic_constants(f.theta, p);
    const GR t2 = GR(f.theta) * GR(f.theta);
    return {Poly({GR(1), k.B, k.A}), Poly({GR(1), k.B - GR(4) * t2, k.A})};
  }
  const GR amc = p.a - p.c;
  return {Poly({amc * amc, GR(0), GR(-2) * p.a}), Poly({amc * amc, GR(0), GR(2) * p.a})};
}

}  // namespace pvi
