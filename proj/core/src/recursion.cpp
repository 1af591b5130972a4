#include "pvi/recursion.hpp"

#include <algorithm>

namespace pvi {

using GR = GaussianRational;
using RF = RationalFunction;

namespace {

GR coeff_at(const RF& p, int e) {
  if (p.is_zero()) return GR(0);
  return expand_to(p, e + 1).coeff(e);
}

// m * s with the precision s allows.
Series times(const RF& m, const Series& s) {
  if (m == RF(1)) return s;
  if (m.is_zero()) return Series();
  const Poly& den = m.den();
  if (den == Poly::monomial(GR(1), den.degree())) return Series::from_polynomial(m.num()).mul_pow(-den.degree()) * s;
  if (s.is_exact()) throw PreconditionFailed("multiplier with poles needs a truncated series");
  const int lo = s.has_nonzero() ? s.min_exp() : s.precision();
  return expand_to(m, s.precision() - lo + m.order_at_zero()) * s;
}

RF complicated_multiplier(const PVIParams& p) {
  const GR amc = p.a - p.c;
  GR den(1);
  for (int i = 0; i < 6; ++i) den *= amc;
  const Poly base({amc * amc, GR(0), GR(-2) * p.a});
  return RF(pow(base, 4).scaled(den.inverse()), Poly::monomial(GR(1), 4));
}

GradedSeries<Series> graded_of(const Derivation& der, const std::vector<Series>& cs, size_t count) {
  GradedSeries<Series> y(der);
  for (size_t j = 0; j < count && j < cs.size(); ++j) y.add_to(static_cast<int>(j), cs[j]);
  return y;
}

}  // namespace

OperatorHead operator_head(const RF& p2, const RF& p1, const RF& p0) {
  int h = kExact;
  if (!p2.is_zero()) h = std::min(h, p2.order_at_zero() - 2);
  if (!p1.is_zero()) h = std::min(h, p1.order_at_zero() - 1);
  if (!p0.is_zero()) h = std::min(h, p0.order_at_zero());
  if (h == kExact) throw PreconditionFailed("zero operator");
  return {h, coeff_at(p2, h + 2), coeff_at(p1, h + 1), coeff_at(p0, h)};
}

Series solve_series(const RF& p2, const RF& p1, const RF& p0, const Series& rhs, int cap) {
  const OperatorHead head = operator_head(p2, p1, p0);
  const int h = head.h;
  if (rhs.is_exact_zero()) return Series();
  int out_prec = rhs.is_exact() ? kExact : rhs.precision() - h;
  out_prec = std::min(out_prec, cap);
  if (out_prec == kExact) throw PreconditionFailed("an exact right side needs a precision cap");
  if (!rhs.has_nonzero()) return Series::zero(out_prec);
  const int r = rhs.min_exp() - h;
  const int n = out_prec - r;
  if (n <= 0) return Series::zero(out_prec);

  const Series e2 = p2.is_zero() ? Series() : expand_to(p2, h + 2 + n);
  const Series e1 = p1.is_zero() ? Series() : expand_to(p1, h + 1 + n);
  const Series e0 = p0.is_zero() ? Series() : expand_to(p0, h + n);
  auto at = [](const Series& s, int e) { return s.is_exact_zero() ? GR(0) : s.coeff(e); };
  // T_j(s) = [p2]_{h+2+j} s(s-1) + [p1]_{h+1+j} s + [p0]_{h+j}
  std::vector<std::array<GR, 3>> t(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) t[static_cast<size_t>(j)] = {at(e2, h + 2 + j), at(e1, h + 1 + j), at(e0, h + j)};
  auto T = [&](int j, long s) {
    const auto& c = t[static_cast<size_t>(j)];
    const GR gs(s);
    return c[0] * gs * GR(s - 1) + c[1] * gs + c[2];
  };

  std::vector<GR> alpha(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const long s = r + i;
    GR acc = rhs.coeff(h + r + i);
    for (int j = 1; j <= i; ++j) {
      const GR& prev = alpha[static_cast<size_t>(i - j)];
      if (!prev.is_zero()) acc -= T(j, s - j) * prev;
    }
    const GR head_s = T(0, s);
    if (head_s.is_zero()) {
      if (acc.is_zero()) throw ResonantHead("indicial factor vanishes at chi^" + std::to_string(s) + " (free coefficient)");
      throw ResonantHead("indicial factor vanishes at chi^" + std::to_string(s) + " with a nonzero right side");
    }
    alpha[static_cast<size_t>(i)] = acc / head_s;
  }
  return Series::from_coeffs(r, std::move(alpha), out_prec);
}

RF CoefficientEquation::apply(const RF& f) const {
  const RF d1 = f.derivative();
  return p2() * d1.derivative() + p1() * d1 + p0() * f;
}

bool ExpansionState::certified() const {
  if (coefficients.size() != static_cast<size_t>(K) + 1 || audit.size() != static_cast<size_t>(K) + 1) return false;
  return std::all_of(audit.begin(), audit.end(), [](const GradeAudit& g) { return g.zero; });
}

ExpansionState prepare_state(const FamilySpec& f, const PVIParams& p, int K, int J) {
  if (K < 0) throw PreconditionFailed("K must be nonnegative");
  if (J < 1) throw PreconditionFailed("J must be positive");
  validate_family(f, p);
  ExpansionState s;
  s.family = f;
  s.params = p;
  s.K = K;
  s.J = J;
  s.phi0 = phi0_rational(f, p);
  const auto form = substitute_affine(pvi_diffsum<RF>(p, derivation_for(f)), phi0_build(f, p));
  s.linear = form.linear;
  return s;
}

namespace {

// The x^k equation without the complicated-generic multiplier; k = 0 gives
// the linearization at phi_0 itself.
CoefficientEquation raw_equation(const ExpansionState& state, int k) {
  const Derivation der = state.derivation();
  const auto& [a0, a1, a2] = state.linear;
  const RF m(static_cast<long>(k - 1));
  CoefficientEquation eq;
  eq.k = k;
  eq.der = der;
  eq.q0 = a0 + m * a1 + m * m * a2;
  switch (der.kind) {
    case VariableKind::exotic: {
      const RF th{GR(der.theta)};
      const RF ith{GR(Rational(0), der.theta)};
      eq.q2 = -(th * th * a2);
      eq.q1 = ith * (a1 + RF(2) * m * a2) - th * th * a2;
      break;
    }
    case VariableKind::complicated: {
      const RF chi = RF::x();
      eq.q2 = a2 * chi * chi;
      eq.q1 = -((a1 + RF(2) * m * a2) * chi) + RF(2) * a2 * chi * chi;
      break;
    }
    case VariableKind::plain:
      throw PreconditionFailed("no expansion variable for plain sums");
  }
  return eq;
}

// Residual precision of grade k with phi_0 .. phi_k as stored.
int grade_window(const ExpansionState& s, int k) {
  const Derivation der = s.derivation();
  const auto val = evaluate(pvi_diffsum<Series>(s.params, der), graded_of(der, s.coefficients, static_cast<size_t>(k) + 1), k);
  return val.term(k).precision();
}

// Largest P such that changing phi_k at any chi^e, min_exp <= e < P, shows
// in the grade-k residual below `known`. The change enters through the raw
// operator, chi^e -> sum_n (q2_n e(e-1) + q1_n e + q0_n) chi^(e+n); for
// k >= 1 the grade-k residual is linear in phi_k, so this is exact.
int certifiable_precision(const ExpansionState& s, int k, int known) {
  const Series& phi = s.coefficients[static_cast<size_t>(k)];
  if (!phi.has_nonzero()) return phi.precision();
  const CoefficientEquation eq = raw_equation(s, k);
  const int lo = phi.min_exp();
  int nmin = kExact;
  for (const RF* q : {&eq.q2, &eq.q1, &eq.q0})
    if (!q->is_zero()) nmin = std::min(nmin, q->order_at_zero());
  if (nmin == kExact) return lo;
  auto ser = [&](const RF& q) { return q.is_zero() ? Series() : expand_to(q, std::max(known - lo, nmin + 1)); };
  const Series q2 = ser(eq.q2), q1 = ser(eq.q1), q0 = ser(eq.q0);
  for (int e = lo; e < phi.precision(); ++e) {
    const GR ge(static_cast<long>(e));
    bool seen = false;
    for (int n = nmin; e + n < known && !seen; ++n) seen = !(q2.coeff(n) * ge * (ge - GR(1)) + q1.coeff(n) * ge + q0.coeff(n)).is_zero();
    if (!seen) return e;
  }
  return phi.precision();
}

}  // namespace

CoefficientEquation build_linear_operator_k(const ExpansionState& state, int k) {
  if (k < 1) throw PreconditionFailed("coefficient index must be at least 1");
  CoefficientEquation eq = raw_equation(state, k);
  if (eq.der.kind == VariableKind::complicated && state.family.kind == FamilyKind::complicated_generic) {
    eq.multiplier = complicated_multiplier(state.params);
    eq.q2 *= eq.multiplier;
    eq.q1 *= eq.multiplier;
    eq.q0 *= eq.multiplier;
  }
  return eq;
}

Series compute_rhs_k(const ExpansionState& state, int k) {
  if (k < 1 || static_cast<size_t>(k) > state.coefficients.size())
    throw InsufficientKnownOrder("right side for k=" + std::to_string(k) + " needs phi_0 .. phi_" + std::to_string(k - 1));
  const Derivation der = state.derivation();
  const auto g = pvi_diffsum<Series>(state.params, der);
  const auto val = evaluate(g, graded_of(der, state.coefficients, static_cast<size_t>(k)), k);
  const Series rhs = -val.term(k);
  if (!rhs.is_exact() && !rhs.has_nonzero() && rhs.precision() <= 0)
    throw InsufficientKnownOrder("right side for k=" + std::to_string(k) + " has no known coefficient");
  RF mult(1);
  if (der.kind == VariableKind::complicated && state.family.kind == FamilyKind::complicated_generic)
    mult = complicated_multiplier(state.params);
  return times(mult, rhs);
}

Series solve_k(const CoefficientEquation& eqn, int cap) { return solve_series(eqn.p2(), eqn.p1(), eqn.p0(), eqn.rhs, cap); }

HeadData head_data(const ExpansionState& state, const CoefficientEquation& eqn, const Series& solution) {
  HeadData d;
  d.k = eqn.k;
  d.head = operator_head(eqn.p2(), eqn.p1(), eqn.p0());
  if (solution.has_nonzero()) {
    d.r = solution.min_exp();
    d.at_r = d.head.at(static_cast<long>(*d.r));
  }
  d.at_k = d.head.at(static_cast<long>(eqn.k));
  if (eqn.der.kind == VariableKind::exotic) {
    const auto consts = exotic_constants(eqn.der.theta, state.params);
    const GR& a = state.params.a;
    if (!a.is_zero() && !consts.B.is_zero()) {
      const GR denom = a * a * consts.B * consts.B;
      d.normalized = d.at_k / (GR(4) * denom);
      const GR th(eqn.der.theta);
      const GR kk(static_cast<long>(eqn.k));
      const GR f = kk * GR(0, 1) - kk * th + th;
      d.closed_form = GR(8) * th * th * th * th * f * f / denom;
    }
  } else if (state.family.kind == FamilyKind::complicated_generic) {
    d.normalized = d.head.at(0L);
    d.closed_form = GR(-8L * eqn.k * eqn.k);
  }
  return d;
}

ExpansionState expand(const FamilySpec& f, const PVIParams& p, int K, int J) {
  ExpansionState base = prepare_state(f, p, K, J);
  check_truncated_solution(f, p);
  int W = J + 8;
  for (int attempt = 0; attempt < 12; ++attempt) {
    ExpansionState s = base;
    s.working_precision = W;
    s.coefficients.push_back(expand_to(s.phi0, W));
    int deficit = 0;
    for (int k = 1; k <= K; ++k) {
      CoefficientEquation eq = build_linear_operator_k(s, k);
      eq.rhs = compute_rhs_k(s, k);
      Series phi = solve_k(eq, W);
      if (phi.precision() < J) {
        deficit = J - phi.precision();
        break;
      }
      s.heads.push_back(head_data(s, eq, phi));
      s.equations.push_back(std::move(eq));
      s.coefficients.push_back(std::move(phi));
    }
    if (deficit > 0) {
      W += deficit + 4;
      continue;
    }
    // keep only what the audit can certify; every phi_k must reach J
    for (int k = 0; k <= K && deficit == 0; ++k) {
      const int P = certifiable_precision(s, k, grade_window(s, k));
      if (P < J) deficit = J - P;
      else s.coefficients[static_cast<size_t>(k)] = s.coefficients[static_cast<size_t>(k)].truncated(P);
    }
    if (deficit > 0) {
      W += deficit + 4;
      continue;
    }
    s.audit = residual_orders(s);
    return s;
  }
  throw InsufficientKnownOrder("working precision did not reach J=" + std::to_string(J));
}

std::vector<GradeAudit> residual_orders(const ExpansionState& state) {
  const Derivation der = state.derivation();
  const int top = static_cast<int>(state.coefficients.size()) - 1;
  if (top < 0) return {};
  const auto val = evaluate(pvi_diffsum<Series>(state.params, der), graded_of(der, state.coefficients, state.coefficients.size()), top);
  std::vector<GradeAudit> out;
  for (int k = 0; k <= top; ++k) {
    const Series t = val.term(k);
    GradeAudit a;
    a.k = k;
    a.known_to = t.precision();
    a.zero = !t.has_nonzero();
    if (!a.zero) a.first_nonzero = t.min_exp();
    out.push_back(a);
  }
  return out;
}

RF exact_rhs_k(const ExpansionState& state, const std::vector<RF>& previous, int k) {
  if (k < 1 || previous.size() + 1 < static_cast<size_t>(k))
    throw InsufficientKnownOrder("exact right side for k=" + std::to_string(k) + " needs phi_1 .. phi_" + std::to_string(k - 1));
  const Derivation der = state.derivation();
  GradedSeries<RF> y(der);
  y.add_to(0, state.phi0);
  for (int j = 1; j < k; ++j) y.add_to(j, previous[static_cast<size_t>(j - 1)]);
  const RF rhs = -evaluate(pvi_diffsum<RF>(state.params, der), y, k).term(k);
  if (der.kind == VariableKind::complicated && state.family.kind == FamilyKind::complicated_generic)
    return rhs * complicated_multiplier(state.params);
  return rhs;
}

namespace {

std::vector<RationalityCertificate> certify(const ExpansionState& state, int kmax, int max_deg, bool strict_last) {
  if (!is_exotic(state.family.kind)) throw PreconditionFailed("rationality certificates apply to exotic expansions only");
  std::vector<RationalityCertificate> out;
  std::vector<RF> previous;
  bool chain = true;
  for (int k = 1; k <= kmax && static_cast<size_t>(k) < state.coefficients.size(); ++k) {
    RationalityCertificate c;
    c.k = k;
    const Series& phi = state.coefficients[static_cast<size_t>(k)];
    int bound = max_deg;
    const bool clamp = !(strict_last && k == kmax);
    if (clamp && phi.has_nonzero() && phi.known_order() != kExact && phi.known_order() < 2 * bound + 2) {
      bound = std::max(0, (phi.known_order() - 2) / 2);
      c.note = "degree bound lowered to " + std::to_string(bound) + " by the known terms";
    }
    c.value = pade_reconstruct(phi, bound);
    if (!c.value) {
      c.note = "no rational function with numerator plus denominator degree <= " + std::to_string(2 * bound);
      out.push_back(c);
      chain = false;
      continue;
    }
    c.series_match = !(expand_to(*c.value, phi.precision()) - phi).has_nonzero();
    if (chain) {
      const RF rhs = exact_rhs_k(state, previous, k);
      c.operator_identity = build_linear_operator_k(state, k).apply(*c.value) == rhs;
      if (!c.operator_identity) c.note = "candidate fails the exact equation";
    } else {
      c.note = "an earlier coefficient is not certified";
    }
    chain = chain && c.certified();
    previous.push_back(*c.value);
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::vector<RationalityCertificate> rationality_certificates(const ExpansionState& state, int max_deg) {
  return certify(state, state.K, max_deg, false);
}

RationalityCertificate rationality_certificate(const ExpansionState& state, int k, int max_deg) {
  if (k < 1 || k > state.K) throw PreconditionFailed("k out of range");
  const Series& phi = state.coefficients.at(static_cast<size_t>(k));
  if (phi.known_order() != kExact && phi.known_order() < 2 * max_deg + 2)
    throw InsufficientTerms("phi_" + std::to_string(k) + " has " + std::to_string(phi.known_order()) +
                            " known terms; degree bound " + std::to_string(max_deg) + " needs " + std::to_string(2 * max_deg + 2));
  // earlier coefficients only feed the exact right side
  return certify(state, k, max_deg, true).back();
}

}  // namespace pvi
