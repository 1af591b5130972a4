#pragma once

#include <random>

#include "pvi/algebraic.hpp"
#include "pvi/laurent.hpp"
#include "pvi/rational_function.hpp"

namespace pvi::testing {

class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  Rational rational(long span = 9, long den = 6) {
    Rational q(integer(-span, span), integer(1, den));
    q.canonicalize();
    return q;
  }
  GaussianRational gaussian(long span = 9, long den = 6) { return {rational(span, den), rational(span, den)}; }
  GaussianRational nonzero_gaussian() {
    for (;;) {
      GaussianRational z = gaussian();
      if (!z.is_zero()) return z;
    }
  }
  Poly poly(int max_deg) {
    std::vector<GaussianRational> c;
    for (int n = 0; n <= max_deg; ++n) c.push_back(gaussian(5, 3));
    return Poly(std::move(c));
  }
  RationalFunction rational_function(int max_deg) {
    for (;;) {
      Poly d = poly(max_deg);
      if (d.is_zero()) continue;
      return {poly(max_deg), d};
    }
  }
  Series series(int min_exp, int terms, int prec) {
    std::vector<GaussianRational> c;
    for (int n = 0; n < terms; ++n) c.push_back(gaussian(5, 4));
    if (!c.empty() && c[0].is_zero()) c[0] = GaussianRational(1);
    return Series::from_coeffs(min_exp, std::move(c), prec);
  }

 private:
  std::mt19937 rng_;
};

}  // namespace pvi::testing
