#pragma once

#include <array>
#include <map>
#include <vector>

#include "pvi/graded.hpp"

namespace pvi {

// Powers of (y, delta y, delta^2 y).
using Q2 = std::array<int, 3>;

inline int total_degree(const Q2& q) { return q[0] + q[1] + q[2]; }

struct SupportPoint {
  Rational q1;
  int q2 = 0;

  friend bool operator==(const SupportPoint& a, const SupportPoint& b) { return a.q1 == b.q1 && a.q2 == b.q2; }
  friend bool operator<(const SupportPoint& a, const SupportPoint& b) {
    if (a.q1 != b.q1) return a.q1 < b.q1;
    return a.q2 < b.q2;
  }
};

template <class R>
struct DiffMonomial {
  GradedSeries<R> coeff;
  Q2 q2{};
};

// Polynomial in y, delta y, delta^2 y whose coefficients are graded series.
template <class R>
class DiffSum {
 public:
  DiffSum() = default;
  explicit DiffSum(Derivation d) : der_(std::move(d)) {}

  // which = 0, 1, 2 for y, delta y, delta^2 y.
  static DiffSum variable(Derivation d, int which) {
    DiffSum s(d);
    Q2 q{};
    q[static_cast<size_t>(which)] = 1;
    s.add_term(q, GradedSeries<R>::constant(d, R(1)));
    return s;
  }
  static DiffSum constant(GradedSeries<R> c) {
    DiffSum s(c.derivation());
    s.add_term(Q2{}, std::move(c));
    return s;
  }
  static DiffSum constant(Derivation d, R c, int grade = 0) {
    return constant(GradedSeries<R>::constant(std::move(d), std::move(c), grade));
  }

  const Derivation& derivation() const { return der_; }
  const std::map<Q2, GradedSeries<R>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  std::vector<DiffMonomial<R>> monomials() const {
    std::vector<DiffMonomial<R>> out;
    for (const auto& [q, c] : terms_) out.push_back({c, q});
    return out;
  }

  GradedSeries<R> coefficient(const Q2& q) const {
    auto it = terms_.find(q);
    return it == terms_.end() ? GradedSeries<R>(der_) : it->second;
  }

  void add_term(const Q2& q, const GradedSeries<R>& c) {
    if (!(c.derivation() == der_)) throw Error("differential sum terms with different variable kinds");
    for (int v : q)
      if (v < 0) throw Error("negative power in a differential monomial");
    auto it = terms_.find(q);
    if (it == terms_.end()) {
      if (!c.empty() || !c.is_exact()) terms_.emplace(q, c);
      return;
    }
    it->second = it->second + c;
    if (it->second.empty() && it->second.is_exact()) terms_.erase(it);
  }

  // x^s * g
  DiffSum shifted(int s) const {
    DiffSum r(der_);
    for (const auto& [q, c] : terms_) r.terms_.emplace(q, c.shifted(s));
    return r;
  }

  DiffSum scaled(const GradedSeries<R>& c) const {
    DiffSum r(der_);
    for (const auto& [q, t] : terms_) r.add_term(q, t * c);
    return r;
  }
  DiffSum scaled(const R& c) const { return scaled(GradedSeries<R>::constant(der_, c)); }

  DiffSum operator-() const { return scaled(R(-1)); }

  friend DiffSum operator+(const DiffSum& f, const DiffSum& g) {
    DiffSum r = f;
    for (const auto& [q, c] : g.terms_) r.add_term(q, c);
    return r;
  }
  friend DiffSum operator-(const DiffSum& f, const DiffSum& g) { return f + (-g); }
  friend DiffSum operator*(const DiffSum& f, const DiffSum& g) {
    DiffSum r(f.der_);
    for (const auto& [qa, ca] : f.terms_)
      for (const auto& [qb, cb] : g.terms_)
        r.add_term({qa[0] + qb[0], qa[1] + qb[1], qa[2] + qb[2]}, ca * cb);
    return r;
  }

  friend bool operator==(const DiffSum& a, const DiffSum& b) { return a.der_ == b.der_ && a.terms_ == b.terms_; }

 private:
  Derivation der_;
  std::map<Q2, GradedSeries<R>> terms_;
};

template <class R>
DiffSum<R> pow(const DiffSum<R>& f, unsigned e) {
  DiffSum<R> r = DiffSum<R>::constant(f.derivation(), R(1));
  DiffSum<R> b = f;
  while (e) {
    if (e & 1u) r = r * b;
    e >>= 1u;
    if (e) b = b * b;
  }
  return r;
}

// g(y, delta y, delta^2 y), keeping grades <= grade_limit.
template <class R>
GradedSeries<R> evaluate(const DiffSum<R>& g, const GradedSeries<R>& y, int grade_limit = kExact) {
  if (!(g.derivation() == y.derivation())) throw Error("evaluation with different variable kinds");
  std::array<GradedSeries<R>, 3> base{y.truncated(grade_limit), {}, {}};
  base[1] = delta_apply(base[0]);
  base[2] = delta_apply(base[1]);
  std::array<std::vector<GradedSeries<R>>, 3> powers;
  for (size_t v = 0; v < 3; ++v) powers[v].push_back(GradedSeries<R>::constant(y.derivation(), R(1)));
  auto power = [&](size_t v, int e) -> const GradedSeries<R>& {
    auto& cache = powers[v];
    while (static_cast<int>(cache.size()) <= e)
      cache.push_back(GradedSeries<R>::multiply(cache.back(), base[v], grade_limit));
    return cache[static_cast<size_t>(e)];
  };
  GradedSeries<R> out(y.derivation(), grade_limit);
  for (const auto& [q, c] : g.terms()) {
    GradedSeries<R> t = c.truncated(grade_limit);
    for (size_t v = 0; v < 3; ++v)
      if (q[v] > 0) t = GradedSeries<R>::multiply(t, power(v, q[v]), grade_limit);
    out = out + t;
  }
  return out;
}

// Result of y = phi0 + x u. `shifted` is g in u; `equation` is shifted / x,
// the normal form whose grade-0 linear part is L(u) = a0 u + a1 du + a2 d^2u
// (d = delta). `higher` collects the remaining u-dependent terms and `free`
// the u-free part, so equation = L + higher + free.
template <class R>
struct AffineForm {
  DiffSum<R> shifted;
  DiffSum<R> equation;
  std::array<R, 3> linear;
  DiffSum<R> higher;
  GradedSeries<R> free;

  // Coefficients of u, x u', x^2 u'' (= u, delta u, delta^2 u - delta u).
  std::array<R, 3> standard_basis() const { return {linear[0], linear[1] + linear[2], linear[2]}; }
};

template <class R>
AffineForm<R> substitute_affine(const DiffSum<R>& g, const GradedSeries<R>& phi0) {
  const Derivation& d = g.derivation();
  for (const auto& [k, v] : phi0.terms())
    if (k != 0) throw PreconditionFailed("phi0 must be concentrated at x-grade 0");
  const R p0 = phi0.term(0);
  const R p1 = apply(d, p0);
  const R p2 = apply(d, p1);
  using S = DiffSum<R>;
  auto u = [&](int w) { return S::variable(d, w).shifted(1); };
  // delta(x u) = x(u + du); delta^2(x u) = x(u + 2 du + d^2u)
  std::array<S, 3> subst{S::constant(d, p0) + u(0), S::constant(d, p1) + u(0) + u(1),
                         S::constant(d, p2) + u(0) + u(1).scaled(R(2)) + u(2)};
  std::array<std::vector<S>, 3> powers;
  for (auto& p : powers) p.push_back(S::constant(d, R(1)));
  S shifted(d);
  for (const auto& [q, c] : g.terms()) {
    S t = S::constant(c);
    for (size_t v = 0; v < 3; ++v) {
      while (static_cast<int>(powers[v].size()) <= q[v]) powers[v].push_back(powers[v].back() * subst[v]);
      if (q[v] > 0) t = t * powers[v][static_cast<size_t>(q[v])];
    }
    shifted = shifted + t;
  }
  AffineForm<R> out{shifted, shifted.shifted(-1), {R(0), R(0), R(0)}, S(d), GradedSeries<R>(d)};
  for (const auto& [q, c] : out.equation.terms()) {
    if (total_degree(q) == 0) {
      out.free = c;
      continue;
    }
    GradedSeries<R> rest = c;
    if (total_degree(q) == 1) {
      const size_t w = q[0] ? 0 : (q[1] ? 1 : 2);
      if (c.known_x_order() >= 0) {
        out.linear[w] = c.term(0);
        rest = rest - GradedSeries<R>::constant(d, c.term(0));
      }
    }
    out.higher.add_term(q, rest);
  }
  return out;
}

// One point (q1, |q2|) per monomial grade carrying a nonzero coefficient.
template <class R>
std::vector<SupportPoint> support(const DiffSum<R>& g) {
  std::vector<SupportPoint> pts;
  for (const auto& [q, c] : g.terms())
    for (const auto& [k, v] : c.terms())
      if (has_nonzero(v)) pts.push_back({Rational(k), total_degree(q)});
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// u = x^rho v. Each delta^j u becomes x^rho (delta + rho)^j v, so a monomial
// of total degree n is regraded by rho * n. Grades must stay integral.
template <class R>
DiffSum<R> power_transform(const DiffSum<R>& g, const Rational& rho) {
  const Derivation& d = g.derivation();
  using S = DiffSum<R>;
  const R r{GaussianRational(rho)};
  std::array<S, 3> subst{S::variable(d, 0), S::variable(d, 1) + S::variable(d, 0).scaled(r),
                         S::variable(d, 2) + S::variable(d, 1).scaled(r * R(2)) + S::variable(d, 0).scaled(r * r)};
  S out(d);
  for (const auto& [q, c] : g.terms()) {
    const Rational shift = rho * total_degree(q);
    if (!is_integer(shift))
      throw NonIntegerGrade("power transformation with rho = " + to_string(rho) + " leaves the integer grade lattice");
    S t = S::constant(c.shifted(static_cast<int>(shift.get_num().get_si())));
    for (size_t v = 0; v < 3; ++v)
      if (q[v] > 0) t = t * pow(subst[v], static_cast<unsigned>(q[v]));
    out = out + t;
  }
  return out;
}

// Divide by the common factor x^c, c the lowest grade present. Returns c.
template <class R>
std::pair<int, DiffSum<R>> normalize_grades(const DiffSum<R>& g) {
  bool any = false;
  int c = 0;
  for (const auto& [q, t] : g.terms()) {
    if (t.empty()) continue;
    c = any ? std::min(c, t.low()) : t.low();
    any = true;
  }
  return {c, g.shifted(-c)};
}

}  // namespace pvi
