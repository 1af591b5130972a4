#pragma once

#include <optional>

#include "pvi/rational_function.hpp"

namespace pvi {

// Rational reconstruction of a truncated Laurent series. After factoring out
// the leading power, candidates N/D are tried by increasing total degree
// p+q <= 2*max_deg (individual degrees are not capped), smaller q first. The
// first candidate whose expansion reproduces every known coefficient of f is
// returned. Needs at least 2*max_deg+2 known coefficients counted from the
// leading exponent.
std::optional<RationalFunction> pade_reconstruct(const Series& f, int max_deg);

}  // namespace pvi
