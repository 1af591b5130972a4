#include "pvi/gaussian.hpp"

#include <cctype>

namespace pvi {

namespace {

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool valid_integer(std::string_view s) {
  size_t k = 0;
  if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
  if (k == s.size()) return false;
  for (; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s = trim(text);
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+')
    throw ParseError("malformed rational '" + std::string(text) + "'");
  mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

std::optional<Rational> sqrt_rational(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero Gaussian rational");
  Rational n = norm();
  return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational r = re_ * o.re_ - im_ * o.im_;
  Rational m = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(m);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw DivisionByZero("division by zero Gaussian rational");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

std::string GaussianRational::str() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string s = re_.get_str();
  if (sgn(im_) < 0) {
    s += "-";
    s += Rational(-im_).get_str();
  } else {
    s += "+";
    s += im_.get_str();
  }
  s += "*i";
  return s;
}

// Accepts "p", "p/q", "p/q+r/s*i", "p/q-r/s*i", "r/s*i", "i", "-i", "p+i".
GaussianRational GaussianRational::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw ParseError("empty scalar");
  if (s.back() != 'i') return GaussianRational(parse_rational(s));
  s.pop_back();
  if (!s.empty() && s.back() == '*') s.pop_back();
  // split the real part from the imaginary coefficient at the last sign
  // that is not the leading character
  size_t split = std::string::npos;
  for (size_t k = s.size(); k-- > 1;)
    if (s[k] == '+' || s[k] == '-') {
      split = k;
      break;
    }
  std::string re_part = split == std::string::npos ? "0" : s.substr(0, split);
  std::string im_part = split == std::string::npos ? s : s.substr(split);
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  return {parse_rational(re_part), parse_rational(im_part)};
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }

GaussianRational pow(GaussianRational base, unsigned e) {
  GaussianRational r(1);
  while (e) {
    if (e & 1u) r *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return r;
}

std::optional<GaussianRational> sqrt_exact(const GaussianRational& z) {
  if (z.is_zero()) return GaussianRational(0);
  auto modulus = sqrt_rational(z.norm());
  if (!modulus) return std::nullopt;
  auto x = sqrt_rational((*modulus + z.re()) / 2);
  auto y = sqrt_rational((*modulus - z.re()) / 2);
  if (!x || !y) return std::nullopt;
  Rational im = sgn(z.im()) < 0 ? Rational(-*y) : *y;
  GaussianRational r(*x, im);
  if (sgn(r.re()) < 0 || (sgn(r.re()) == 0 && sgn(r.im()) < 0)) r = -r;
  return r;
}

}  // namespace pvi
