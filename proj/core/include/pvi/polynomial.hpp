#pragma once

#include <algorithm>
#include <concepts>
#include <string>
#include <utility>
#include <vector>

#include "pvi/algebraic.hpp"
#include "pvi/gaussian.hpp"

namespace pvi {

template <class K>
concept FieldElement = requires(K a, K b) {
  { a + b } -> std::convertible_to<K>;
  { a - b } -> std::convertible_to<K>;
  { a * b } -> std::convertible_to<K>;
  { a / b } -> std::convertible_to<K>;
  { -a } -> std::convertible_to<K>;
  { a == b } -> std::convertible_to<bool>;
  { a.is_zero() } -> std::convertible_to<bool>;
  K(0);
  K(1);
};

// Dense univariate polynomial, coefficients from low to high degree, with no
// trailing zeros.
template <FieldElement K>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(K constant) {  // NOLINT(google-explicit-constructor)
    if (!constant.is_zero()) c_.push_back(std::move(constant));
  }
  Polynomial(long constant) : Polynomial(K(constant)) {}  // NOLINT
  explicit Polynomial(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(K c, int n) {
    if (c.is_zero()) return {};
    std::vector<K> v(static_cast<size_t>(n) + 1, K(0));
    v.back() = std::move(c);
    return Polynomial(std::move(v));
  }
  static Polynomial x() { return monomial(K(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<K>& coeffs() const { return c_; }
  K coeff(int n) const { return n >= 0 && n < static_cast<int>(c_.size()) ? c_[static_cast<size_t>(n)] : K(0); }
  const K& leading() const { return c_.back(); }
  // Lowest power with a nonzero coefficient; -1 for the zero polynomial.
  int valuation() const {
    for (size_t n = 0; n < c_.size(); ++n)
      if (!c_[n].is_zero()) return static_cast<int>(n);
    return -1;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K(0));
    for (size_t n = 0; n < o.c_.size(); ++n) c_[n] += o.c_[n];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K(0));
    for (size_t n = 0; n < o.c_.size(); ++n) c_[n] -= o.c_[n];
    trim();
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<K> r(a.c_.size() + b.c_.size() - 1, K(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial scaled(const K& s) const {
    if (s.is_zero()) return {};
    Polynomial r = *this;
    for (auto& v : r.c_) v *= s;
    return r;
  }
  // Multiply by x^n.
  Polynomial shifted(int n) const {
    if (is_zero() || n == 0) return *this;
    std::vector<K> r(static_cast<size_t>(n), K(0));
    r.insert(r.end(), c_.begin(), c_.end());
    return Polynomial(std::move(r));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  K operator()(const K& x) const {
    K r(0);
    for (size_t n = c_.size(); n-- > 0;) r = r * x + c_[n];
    return r;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<K> r;
    r.reserve(c_.size() - 1);
    for (size_t n = 1; n < c_.size(); ++n) r.push_back(c_[n] * K(static_cast<long>(n)));
    return Polynomial(std::move(r));
  }

  Polynomial monic() const {
    if (is_zero()) return {};
    return scaled(K(1) / leading());
  }

  // p(x + a), by repeated synthetic division.
  Polynomial taylor_shift(const K& a) const {
    std::vector<K> r = c_;
    const size_t n = r.size();
    for (size_t i = 0; i + 1 < n; ++i)
      for (size_t j = n - 1; j-- > i;) r[j] += a * r[j + 1];
    return Polynomial(std::move(r));
  }

  // x^deg * p(1/x) for the given degree bound.
  Polynomial reversed(int deg) const {
    std::vector<K> r(static_cast<size_t>(deg) + 1, K(0));
    for (size_t n = 0; n < c_.size(); ++n) r[static_cast<size_t>(deg) - n] = c_[n];
    return Polynomial(std::move(r));
  }

  template <class F>
  auto map(F&& f) const {
    using T = decltype(f(std::declval<const K&>()));
    std::vector<T> r;
    r.reserve(c_.size());
    for (const auto& v : c_) r.push_back(f(v));
    return Polynomial<T>(std::move(r));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<K> c_;
};

template <FieldElement K>
std::pair<Polynomial<K>, Polynomial<K>> divmod(const Polynomial<K>& a, const Polynomial<K>& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial<K>(), a};
  std::vector<K> rem = a.coeffs();
  const int db = b.degree();
  std::vector<K> quo(static_cast<size_t>(a.degree() - db) + 1, K(0));
  K inv = K(1) / b.leading();
  for (int n = a.degree(); n >= db; --n) {
    const K& top = rem[static_cast<size_t>(n)];
    if (top.is_zero()) continue;
    K q = top * inv;
    for (int j = 0; j <= db; ++j) rem[static_cast<size_t>(n - db + j)] -= q * b.coeffs()[static_cast<size_t>(j)];
    quo[static_cast<size_t>(n - db)] = std::move(q);
  }
  return {Polynomial<K>(std::move(quo)), Polynomial<K>(std::move(rem))};
}

template <FieldElement K>
Polynomial<K> operator/(const Polynomial<K>& a, const Polynomial<K>& b) { return divmod(a, b).first; }
template <FieldElement K>
Polynomial<K> operator%(const Polynomial<K>& a, const Polynomial<K>& b) { return divmod(a, b).second; }

template <FieldElement K>
bool divides(const Polynomial<K>& d, const Polynomial<K>& a) {
  if (d.is_zero()) return a.is_zero();
  return (a % d).is_zero();
}

// Monic gcd; gcd(0, 0) = 0.
template <FieldElement K>
Polynomial<K> gcd(Polynomial<K> a, Polynomial<K> b) {
  while (!b.is_zero()) {
    Polynomial<K> r = a % b;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

template <FieldElement K>
Polynomial<K> lcm(const Polynomial<K>& a, const Polynomial<K>& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return (a / gcd(a, b) * b).monic();
}

template <FieldElement K>
Polynomial<K> pow(Polynomial<K> base, unsigned e) {
  Polynomial<K> r(K(1));
  while (e) {
    if (e & 1u) r *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return r;
}

// Multiplicity of the nonconstant factor g in p (p != 0).
template <FieldElement K>
int multiplicity(const Polynomial<K>& g, Polynomial<K> p) {
  int m = 0;
  while (!p.is_zero()) {
    auto [q, r] = divmod(p, g);
    if (!r.is_zero()) break;
    p = std::move(q);
    ++m;
  }
  return m;
}

// Yun's algorithm: p = c * prod f_m^m with f_m monic, square-free and
// pairwise coprime. Returns (f_m, m) for nonconstant f_m.
template <FieldElement K>
std::vector<std::pair<Polynomial<K>, int>> square_free_decomposition(const Polynomial<K>& p) {
  std::vector<std::pair<Polynomial<K>, int>> out;
  if (p.degree() < 1) return out;
  Polynomial<K> f = p.monic();
  Polynomial<K> df = f.derivative();
  Polynomial<K> a = gcd(f, df);
  Polynomial<K> b = f / a;
  Polynomial<K> c = df / a;
  Polynomial<K> d = c - b.derivative();
  for (int m = 1; b.degree() >= 1; ++m) {
    Polynomial<K> g = gcd(b, d);
    if (g.degree() >= 1) out.emplace_back(g, m);
    b = b / g;
    c = d / g;
    d = c - b.derivative();
  }
  return out;
}

template <FieldElement K>
Polynomial<AlgebraicNumber> lift(const Polynomial<K>& p) {
  return p.map([](const K& v) { return AlgebraicNumber(v); });
}

// Roots of a nonconstant polynomial of degree <= 2 over Q(i); quadratic
// roots outside Q(i) are returned in Q(i)(w) with w the designated root of
// the monic polynomial. Throws UnsupportedExtension for higher degrees.
std::vector<AlgebraicNumber> roots_low_degree(const Polynomial<GaussianRational>& p);

template <FieldElement K>
std::string to_string(const Polynomial<K>& p, const std::string& var = "x") {
  if (p.is_zero()) return "0";
  std::string s;
  for (int n = p.degree(); n >= 0; --n) {
    const K& c = p.coeffs()[static_cast<size_t>(n)];
    if (c.is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")";
    if (n > 0) s += "*" + var;
    if (n > 1) s += "^" + std::to_string(n);
  }
  return s;
}

}  // namespace pvi
