#pragma once

#include <optional>
#include <vector>

#include "pvi/pade.hpp"
#include "pvi/painleve6.hpp"

namespace pvi {

// Lowest-order behaviour of p2 d^2/dchi^2 + p1 d/dchi + p0 at chi = 0:
// chi^s is sent to I(s) chi^(s+h) + higher terms, I(s) = i2 s(s-1) + i1 s + i0.
struct OperatorHead {
  int h = 0;
  GaussianRational i2, i1, i0;

  GaussianRational at(const GaussianRational& s) const { return i2 * s * (s - GaussianRational(1)) + i1 * s + i0; }
  GaussianRational at(long s) const { return at(GaussianRational(s)); }
};

OperatorHead operator_head(const RationalFunction& p2, const RationalFunction& p1, const RationalFunction& p0);

// Laurent solution of p2 f'' + p1 f' + p0 f = rhs by forward substitution,
// starting at ord(rhs) - h. The result is known to absolute chi-order
// min(precision(rhs) - h, cap). Throws ResonantHead when I vanishes on an
// exponent that has to be solved for.
Series solve_series(const RationalFunction& p2, const RationalFunction& p1, const RationalFunction& p0, const Series& rhs,
                    int cap = kExact);

// Equation for the x^k coefficient: q2 chi^2 f'' + q1 chi f' + q0 f = rhs.
// Exotic equations carry no extra factor (q2 = -2 theta^2 Phi0^2 (Phi0 - 1));
// complicated-generic ones are multiplied by
// (-2a chi^2 + (a - c)^2)^4 / ((a - c)^6 chi^4), recorded in `multiplier`.
struct CoefficientEquation {
  int k = 0;
  Derivation der;
  RationalFunction q2, q1, q0;
  RationalFunction multiplier{1};
  Series rhs;

  RationalFunction p2() const { return q2 * RationalFunction(Poly::monomial(GaussianRational(1), 2)); }
  RationalFunction p1() const { return q1 * RationalFunction::x(); }
  const RationalFunction& p0() const { return q0; }
  // Applies the operator exactly.
  RationalFunction apply(const RationalFunction& f) const;
};

struct HeadData {
  int k = 0;
  OperatorHead head;
  std::optional<int> r;                        // leading exponent of the solution
  std::optional<GaussianRational> at_r;        // I(r_k)
  GaussianRational at_k;                       // I(k)
  std::optional<GaussianRational> normalized;  // exotic: I(k)/(4 a^2 B^2); complicated: I(0)
  std::optional<GaussianRational> closed_form; // exotic (a, B != 0): 8 theta^4 (ki - k theta + theta)^2 / (B^2 a^2); complicated: -8k^2
};

struct GradeAudit {
  int k = 0;
  bool zero = false;
  int known_to = 0;                   // absolute chi-order of certification
  std::optional<int> first_nonzero;   // chi-exponent of the first offending coefficient
};

struct ExpansionState {
  FamilySpec family;
  PVIParams params;
  int K = 0;
  int J = 0;
  int working_precision = 0;
  RationalFunction phi0;
  std::array<RationalFunction, 3> linear;  // grade-0 coefficients of u, du, d^2u
  std::vector<Series> coefficients;        // phi_0 .. phi_K, precision >= J
  std::vector<CoefficientEquation> equations;  // k = 1 .. K
  std::vector<HeadData> heads;                 // k = 1 .. K
  std::vector<GradeAudit> audit;               // grades 0 .. K

  Derivation derivation() const { return derivation_for(family); }
  bool certified() const;
};

// State with phi0 and the linear part filled in; no coefficients beyond phi0.
ExpansionState prepare_state(const FamilySpec& f, const PVIParams& p, int K, int J);

CoefficientEquation build_linear_operator_k(const ExpansionState& state, int k);

// -(x^k coefficient of the PVI sum at phi_0 + ... + phi_{k-1} x^{k-1}),
// times the equation's multiplier.
Series compute_rhs_k(const ExpansionState& state, int k);

Series solve_k(const CoefficientEquation& eqn, int cap = kExact);

HeadData head_data(const ExpansionState& state, const CoefficientEquation& eqn, const Series& solution);

// Each phi_k is stored only as far as the residual audit of grade k can
// certify it, and the working precision grows until that reaches chi^J for
// every k. Stored precisions are therefore at least J and may differ per k.
ExpansionState expand(const FamilySpec& f, const PVIParams& p, int K, int J);

// Re-evaluates the PVI sum at the stored coefficients.
std::vector<GradeAudit> residual_orders(const ExpansionState& state);

struct RationalityCertificate {
  int k = 0;
  std::optional<RationalFunction> value;
  bool series_match = false;
  bool operator_identity = false;
  std::string note;

  bool certified() const { return value && series_match && operator_identity; }
};

// Exact right side for k from rational phi_1 .. phi_{k-1}.
RationalFunction exact_rhs_k(const ExpansionState& state, const std::vector<RationalFunction>& previous, int k);

// Certificates for k = 1 .. K, each checked against its own exact equation.
// The batch form lowers the degree bound per k to what the known terms allow;
// the single form throws InsufficientTerms instead.
std::vector<RationalityCertificate> rationality_certificates(const ExpansionState& state, int max_deg);
RationalityCertificate rationality_certificate(const ExpansionState& state, int k, int max_deg);

}  // namespace pvi
