#pragma once

#include <algorithm>
#include <map>
#include <string>

#include "pvi/laurent.hpp"
#include "pvi/rational_function.hpp"

namespace pvi {

// How delta = x d/dx acts on the chi-dependence of a coefficient:
//   complicated  chi = 1/(ln x + C)   D = -chi^2 d/dchi
//   exotic       chi = C x^(i theta)  D = i theta chi d/dchi
//   plain        coefficients are constants in x, D = 0
enum class VariableKind { complicated, exotic, plain };

struct Derivation {
  VariableKind kind = VariableKind::plain;
  Rational theta{0};

  static Derivation complicated() { return {VariableKind::complicated, Rational(0)}; }
  static Derivation exotic(const Rational& theta);
  static Derivation plain() { return {}; }

  friend bool operator==(const Derivation& a, const Derivation& b) {
    return a.kind == b.kind && a.theta == b.theta;
  }
};

std::string to_string(VariableKind kind);

Series apply(const Derivation& d, const Series& f);
RationalFunction apply(const Derivation& d, const RationalFunction& f);

inline bool is_exact_zero(const Series& s) { return s.is_exact_zero(); }
inline bool is_exact_zero(const RationalFunction& r) { return r.is_zero(); }
inline bool has_nonzero(const Series& s) { return s.has_nonzero(); }
inline bool has_nonzero(const RationalFunction& r) { return !r.is_zero(); }

// Series in x whose x^k coefficients lie in R (Laurent series in chi or
// rational functions of chi). Grades above known_x_order() are unknown.
template <class R>
class GradedSeries {
 public:
  GradedSeries() = default;
  explicit GradedSeries(Derivation d, int known_x_order = kExact) : der_(std::move(d)), known_(known_x_order) {}

  static GradedSeries constant(Derivation d, R value, int grade = 0) {
    GradedSeries g(std::move(d));
    g.add_to(grade, value);
    return g;
  }

  const Derivation& derivation() const { return der_; }
  const std::map<int, R>& terms() const { return terms_; }
  int known_x_order() const { return known_; }
  bool is_exact() const { return known_ == kExact; }
  bool empty() const { return terms_.empty(); }

  R term(int k) const {
    if (k > known_) throw UnknownCoefficient("grade " + std::to_string(k) + " is beyond the known x-order");
    auto it = terms_.find(k);
    return it == terms_.end() ? R(0) : it->second;
  }

  void add_to(int k, const R& value) {
    if (k > known_) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      if (!is_exact_zero(value)) terms_.emplace(k, value);
      return;
    }
    it->second = it->second + value;
    if (is_exact_zero(it->second)) terms_.erase(it);
  }

  // Declare grades above K unknown.
  GradedSeries truncated(int K) const {
    GradedSeries r(der_, std::min(K, known_));
    for (const auto& [k, v] : terms_)
      if (k <= r.known_) r.terms_.emplace(k, v);
    return r;
  }

  // x^s * f
  GradedSeries shifted(int s) const {
    GradedSeries r(der_, sat_add(known_, s));
    for (const auto& [k, v] : terms_) r.terms_.emplace(k + s, v);
    return r;
  }

  GradedSeries scaled(const R& c) const {
    GradedSeries r(der_, known_);
    for (const auto& [k, v] : terms_) r.add_to(k, v * c);
    return r;
  }

  template <class F>
  auto map(F&& f) const {
    using T = decltype(f(std::declval<const R&>()));
    GradedSeries<T> r(der_, known_);
    for (const auto& [k, v] : terms_) r.add_to(k, f(v));
    return r;
  }

  GradedSeries operator-() const { return scaled(R(-1)); }

  friend GradedSeries operator+(const GradedSeries& f, const GradedSeries& g) {
    check_compatible(f, g);
    GradedSeries r(f.der_, std::min(f.known_, g.known_));
    for (const auto& [k, v] : f.terms_) r.add_to(k, v);
    for (const auto& [k, v] : g.terms_) r.add_to(k, v);
    return r;
  }
  friend GradedSeries operator-(const GradedSeries& f, const GradedSeries& g) { return f + (-g); }

  // Product keeping grades <= limit.
  static GradedSeries multiply(const GradedSeries& f, const GradedSeries& g, int limit = kExact) {
    check_compatible(f, g);
    int known = std::min(sat_add(f.low(), g.known_), sat_add(g.low(), f.known_));
    known = std::min(known, limit);
    GradedSeries r(f.der_, known);
    for (const auto& [i, a] : f.terms_) {
      if (i > known) break;
      for (const auto& [j, b] : g.terms_) {
        if (i + j > known) break;
        r.add_to(i + j, a * b);
      }
    }
    return r;
  }
  friend GradedSeries operator*(const GradedSeries& f, const GradedSeries& g) { return multiply(f, g); }

  // Lowest grade with a stored term; for an empty series, the first unknown grade.
  int low() const {
    if (!terms_.empty()) return terms_.begin()->first;
    return known_ == kExact ? 0 : known_ + 1;
  }

  // x-order: lowest grade whose coefficient has a known nonzero part.
  SeriesOrder x_order() const {
    for (const auto& [k, v] : terms_)
      if (has_nonzero(v)) return {false, k};
    if (known_ == kExact && terms_.empty()) return SeriesOrder::neg_infinity();
    throw UnknownOrder("no grade of the graded series has a known nonzero coefficient");
  }

  friend bool operator==(const GradedSeries& a, const GradedSeries& b) {
    return a.der_ == b.der_ && a.known_ == b.known_ && a.terms_ == b.terms_;
  }

 private:
  static void check_compatible(const GradedSeries& f, const GradedSeries& g) {
    if (!(f.der_ == g.der_)) throw Error("graded series with different variable kinds");
  }

  Derivation der_;
  std::map<int, R> terms_;
  int known_ = kExact;
};

// delta = x d/dx: delta(phi x^k) = (k phi + D phi) x^k.
template <class R>
GradedSeries<R> delta_apply(const GradedSeries<R>& f) {
  GradedSeries<R> r(f.derivation(), f.known_x_order());
  for (const auto& [k, v] : f.terms()) {
    r.add_to(k, v * R(static_cast<long>(k)));
    r.add_to(k, apply(f.derivation(), v));
  }
  return r;
}

template <class R>
GradedSeries<R> pow(const GradedSeries<R>& f, unsigned e, int limit = kExact) {
  GradedSeries<R> r = GradedSeries<R>::constant(f.derivation(), R(1));
  GradedSeries<R> b = f.truncated(limit);
  while (e) {
    if (e & 1u) r = GradedSeries<R>::multiply(r, b, limit);
    e >>= 1u;
    if (e) b = GradedSeries<R>::multiply(b, b, limit);
  }
  return r;
}

// Laurent expansion of every grade to absolute chi-precision prec.
GradedSeries<Series> expand_graded(const GradedSeries<RationalFunction>& f, int prec);

}  // namespace pvi
