#pragma once

#include <optional>
#include <vector>

#include "pvi/diffsum.hpp"

namespace pvi {

// Convex hull of a support set. Vertices run counterclockwise in the
// (q1, q2) plane starting from the lexicographically smallest one; a hull
// with one or two vertices is a point or a segment.
struct NewtonPolygon {
  std::vector<SupportPoint> vertices;

  std::vector<std::pair<SupportPoint, SupportPoint>> edges() const;
  // Inside or on the boundary.
  bool contains(const SupportPoint& p) const;
};

NewtonPolygon build_polygon(std::vector<SupportPoint> support);

// Vertex lists describing the same polygon regardless of starting point or
// orientation.
bool same_polygon(const NewtonPolygon& p, const std::vector<SupportPoint>& vertices);

// Near zero a direction (1, rho) selects the support points minimizing
// q1 + rho q2; near infinity the maximizing ones.
enum class Side { near_zero, near_infinity };

std::string to_string(Side side);

inline Rational scalar(const SupportPoint& p, const Rational& rho) { return p.q1 + rho * p.q2; }

struct Face {
  enum class Kind { vertex, edge };
  Kind kind = Kind::vertex;
  SupportPoint a, b;  // b == a for a vertex
  // Vertex: the open interval of rho selecting it (nullopt = unbounded).
  std::optional<Rational> rho_lo, rho_hi;
  // Edge: the single rho selecting it.
  std::optional<Rational> rho;
  // False when every point of the face has q2 = 0, so the truncation does
  // not contain the unknown.
  bool involves_unknown = false;
};

std::vector<Face> enumerate_faces(const NewtonPolygon& p, Side side);

template <class R>
struct Truncation {
  Rational c;
  DiffSum<R> sum;
};

template <class R>
Truncation<R> truncate_for_direction(const DiffSum<R>& g, const Rational& rho, Side side = Side::near_zero) {
  auto pts = support(g);
  if (pts.empty()) throw PreconditionFailed("truncation of an empty differential sum");
  Rational c = scalar(pts.front(), rho);
  for (const auto& p : pts) {
    const Rational s = scalar(p, rho);
    if (side == Side::near_zero ? s < c : s > c) c = s;
  }
  DiffSum<R> out(g.derivation());
  for (const auto& [q, coeff] : g.terms()) {
    for (const auto& [k, v] : coeff.terms()) {
      if (!has_nonzero(v)) continue;
      if (scalar({Rational(k), total_degree(q)}, rho) == c) out.add_term(q, GradedSeries<R>::constant(g.derivation(), v, k));
    }
  }
  return {c, out};
}

}  // namespace pvi
