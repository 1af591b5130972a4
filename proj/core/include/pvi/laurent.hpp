#pragma once

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "pvi/polynomial.hpp"

namespace pvi {

// Precision marker for series that are known exactly (finitely many terms).
inline constexpr int kExact = std::numeric_limits<int>::max();

inline int sat_add(int a, int b) { return (a == kExact || b == kExact) ? kExact : a + b; }

// Order of a series: an exponent, or minus infinity for the exact zero series.
struct SeriesOrder {
  bool minus_infinity = false;
  int value = 0;

  static SeriesOrder neg_infinity() { return {true, 0}; }
  friend bool operator==(const SeriesOrder&, const SeriesOrder&) = default;
};

// Truncated Laurent series sum_{e >= min_exp} c_e t^e. Coefficients with
// exponent >= precision() are unknown; every stored exponent is below it.
// Trailing zeros are not stored, so exponents between the last stored term
// and precision() are known zeros.
template <FieldElement K>
class LaurentSeries {
 public:
  LaurentSeries() = default;
  LaurentSeries(K constant) : LaurentSeries(from_coeffs(0, {std::move(constant)})) {}  // NOLINT
  LaurentSeries(long constant) : LaurentSeries(K(constant)) {}                       // NOLINT

  static LaurentSeries zero(int precision) {
    LaurentSeries s;
    s.prec_ = precision;
    s.val_ = precision == kExact ? 0 : precision;
    return s;
  }
  static LaurentSeries from_coeffs(int min_exp, std::vector<K> coeffs, int precision = kExact) {
    LaurentSeries s;
    s.val_ = min_exp;
    s.c_ = std::move(coeffs);
    s.prec_ = precision;
    s.normalize();
    return s;
  }
  static LaurentSeries monomial(K c, int e, int precision = kExact) {
    return from_coeffs(e, {std::move(c)}, precision);
  }
  static LaurentSeries from_polynomial(const Polynomial<K>& p, int precision = kExact) {
    return from_coeffs(0, p.coeffs(), precision);
  }

  int precision() const { return prec_; }
  bool is_exact() const { return prec_ == kExact; }
  bool has_nonzero() const { return !c_.empty(); }
  bool is_exact_zero() const { return c_.empty() && prec_ == kExact; }
  // Exponent of the first stored term, or precision() when nothing nonzero
  // is known (0 for the exact zero series).
  int min_exp() const { return val_; }
  // Number of known coefficients counted from min_exp (the relative order J).
  int known_order() const { return prec_ == kExact ? kExact : prec_ - val_; }
  // Highest exponent with a stored nonzero coefficient.
  int max_exp() const { return val_ + static_cast<int>(c_.size()) - 1; }
  const std::vector<K>& stored() const { return c_; }

  K coeff(int e) const {
    if (e >= prec_) throw UnknownCoefficient("coefficient of t^" + std::to_string(e) + " is beyond the known order " + std::to_string(prec_));
    if (e < val_ || e > max_exp()) return K(0);
    return c_[static_cast<size_t>(e - val_)];
  }

  SeriesOrder order() const {
    if (!c_.empty()) return {false, val_};
    if (prec_ == kExact) return SeriesOrder::neg_infinity();
    throw UnknownOrder("all " + std::to_string(prec_) + " known coefficients vanish; order undetermined");
  }

  LaurentSeries truncated(int precision) const {
    if (precision >= prec_) return *this;
    LaurentSeries s = *this;
    s.prec_ = precision;
    s.normalize();
    return s;
  }

  // t^s * f
  LaurentSeries mul_pow(int s) const {
    LaurentSeries r = *this;
    if (r.prec_ != kExact) r.prec_ += s;
    if (!r.c_.empty() || r.prec_ != kExact) r.val_ += s;
    return r;
  }

  LaurentSeries scaled(const K& k) const {
    if (k.is_zero()) return zero(prec_);
    LaurentSeries r = *this;
    for (auto& v : r.c_) v *= k;
    return r;
  }

  LaurentSeries derivative() const {
    LaurentSeries r;
    r.prec_ = prec_ == kExact ? kExact : prec_ - 1;
    r.val_ = val_ - 1;
    r.c_.reserve(c_.size());
    for (size_t n = 0; n < c_.size(); ++n) r.c_.push_back(c_[n] * K(static_cast<long>(val_) + static_cast<long>(n)));
    r.normalize();
    return r;
  }

  LaurentSeries operator-() const { return scaled(K(-1)); }

  friend LaurentSeries operator+(const LaurentSeries& f, const LaurentSeries& g) { return combine(f, g, false); }
  friend LaurentSeries operator-(const LaurentSeries& f, const LaurentSeries& g) { return combine(f, g, true); }
  LaurentSeries& operator+=(const LaurentSeries& o) { return *this = *this + o; }
  LaurentSeries& operator-=(const LaurentSeries& o) { return *this = *this - o; }

  friend LaurentSeries operator*(const LaurentSeries& f, const LaurentSeries& g) {
    if (f.is_exact_zero() || g.is_exact_zero()) return LaurentSeries();
    const int prec = std::min(sat_add(f.low(), g.prec_), sat_add(g.low(), f.prec_));
    if (f.c_.empty() || g.c_.empty()) return zero(prec);
    const int lo = f.val_ + g.val_;
    int hi = f.max_exp() + g.max_exp();
    if (prec != kExact) hi = std::min(hi, prec - 1);
    if (hi < lo) return zero(prec);
    std::vector<K> r(static_cast<size_t>(hi - lo) + 1, K(0));
    for (size_t i = 0; i < f.c_.size(); ++i) {
      if (f.c_[i].is_zero()) continue;
      const int ei = f.val_ + static_cast<int>(i);
      const int jmax = std::min(static_cast<int>(g.c_.size()) - 1, hi - ei - g.val_);
      for (int j = 0; j <= jmax; ++j) r[static_cast<size_t>(ei - f.val_ + j)] += f.c_[i] * g.c_[static_cast<size_t>(j)];
    }
    return from_coeffs(lo, std::move(r), prec);
  }
  LaurentSeries& operator*=(const LaurentSeries& o) { return *this = *this * o; }

  // Multiplicative inverse. An exact series with more than one term has an
  // infinite inverse; cap bounds the absolute precision of the result.
  LaurentSeries inverse(int cap = kExact) const {
    if (c_.empty()) throw ZeroSeries("inverse of a series with no known nonzero coefficient");
    const int v = val_;
    if (prec_ == kExact && c_.size() == 1) return monomial(K(1) / c_[0], -v);
    int prec = std::min(prec_ == kExact ? kExact : -v + (prec_ - v), cap);
    if (prec == kExact) throw InsufficientTerms("inverse of an exact series needs a precision cap");
    const int n = prec + v;  // number of coefficients
    if (n <= 0) return zero(prec);
    std::vector<K> g(static_cast<size_t>(n), K(0));
    K inv0 = K(1) / c_[0];
    g[0] = inv0;
    for (int m = 1; m < n; ++m) {
      K acc(0);
      const int jmax = std::min(m, static_cast<int>(c_.size()) - 1);
      for (int j = 1; j <= jmax; ++j) acc += c_[static_cast<size_t>(j)] * g[static_cast<size_t>(m - j)];
      g[static_cast<size_t>(m)] = -(acc * inv0);
    }
    return from_coeffs(-v, std::move(g), prec);
  }

  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    return a.prec_ == b.prec_ && a.c_ == b.c_ && (a.c_.empty() || a.val_ == b.val_);
  }

  template <class F>
  auto map(F&& f) const {
    using T = decltype(f(std::declval<const K&>()));
    std::vector<T> r;
    r.reserve(c_.size());
    for (const auto& v : c_) r.push_back(f(v));
    return LaurentSeries<T>::from_coeffs(val_, std::move(r), prec_);
  }

 private:
  int low() const { return c_.empty() ? prec_ : val_; }

  static LaurentSeries combine(const LaurentSeries& f, const LaurentSeries& g, bool subtract) {
    const int prec = std::min(f.prec_, g.prec_);
    if (g.c_.empty()) return f.truncated(prec);
    if (f.c_.empty()) return (subtract ? -g : g).truncated(prec);
    const int lo = std::min(f.val_, g.val_);
    int hi = std::max(f.max_exp(), g.max_exp());
    if (prec != kExact) hi = std::min(hi, prec - 1);
    if (hi < lo) return zero(prec);
    std::vector<K> r(static_cast<size_t>(hi - lo) + 1, K(0));
    for (size_t i = 0; i < f.c_.size(); ++i) {
      int e = f.val_ + static_cast<int>(i);
      if (e > hi) break;
      r[static_cast<size_t>(e - lo)] = f.c_[i];
    }
    for (size_t i = 0; i < g.c_.size(); ++i) {
      int e = g.val_ + static_cast<int>(i);
      if (e > hi) break;
      if (subtract)
        r[static_cast<size_t>(e - lo)] -= g.c_[i];
      else
        r[static_cast<size_t>(e - lo)] += g.c_[i];
    }
    return from_coeffs(lo, std::move(r), prec);
  }

  void normalize() {
    if (prec_ != kExact) {
      const long keep = static_cast<long>(prec_) - static_cast<long>(val_);
      if (keep <= 0)
        c_.clear();
      else if (static_cast<long>(c_.size()) > keep)
        c_.resize(static_cast<size_t>(keep));
    }
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    size_t lead = 0;
    while (lead < c_.size() && c_[lead].is_zero()) ++lead;
    if (lead) {
      c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
      val_ += static_cast<int>(lead);
    }
    if (c_.empty()) val_ = prec_ == kExact ? 0 : prec_;
  }

  int val_ = 0;
  std::vector<K> c_;
  int prec_ = kExact;
};

using Series = LaurentSeries<GaussianRational>;

template <FieldElement K>
LaurentSeries<K> pow(const LaurentSeries<K>& f, unsigned e) {
  LaurentSeries<K> r(K(1));
  LaurentSeries<K> b = f;
  while (e) {
    if (e & 1u) r *= b;
    e >>= 1u;
    if (e) b *= b;
  }
  return r;
}

template <FieldElement K>
std::string to_string(const LaurentSeries<K>& f, const std::string& var = "t") {
  std::string s;
  for (size_t n = 0; n < f.stored().size(); ++n) {
    const K& c = f.stored()[n];
    if (c.is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")*" + var + "^" + std::to_string(f.min_exp() + static_cast<int>(n));
  }
  if (s.empty()) s = "0";
  if (!f.is_exact()) s += " + O(" + var + "^" + std::to_string(f.precision()) + ")";
  return s;
}

}  // namespace pvi
