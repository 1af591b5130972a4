#include "pvi/polygon.hpp"

#include <algorithm>
#include <set>

namespace pvi {

namespace {

Rational cross(const SupportPoint& o, const SupportPoint& a, const SupportPoint& b) {
  return (a.q1 - o.q1) * Rational(b.q2 - o.q2) - Rational(a.q2 - o.q2) * (b.q1 - o.q1);
}

}  // namespace

std::vector<std::pair<SupportPoint, SupportPoint>> NewtonPolygon::edges() const {
  std::vector<std::pair<SupportPoint, SupportPoint>> out;
  const size_t n = vertices.size();
  if (n == 2) out.emplace_back(vertices[0], vertices[1]);
  if (n > 2)
    for (size_t i = 0; i < n; ++i) out.emplace_back(vertices[i], vertices[(i + 1) % n]);
  return out;
}

bool NewtonPolygon::contains(const SupportPoint& p) const {
  const size_t n = vertices.size();
  if (n == 0) return false;
  if (n == 1) return p == vertices[0];
  if (n == 2) {
    const auto& a = vertices[0];
    const auto& b = vertices[1];
    if (sgn(cross(a, b, p)) != 0) return false;
    return !(p < std::min(a, b)) && !(std::max(a, b) < p);
  }
  for (size_t i = 0; i < n; ++i)
    if (sgn(cross(vertices[i], vertices[(i + 1) % n], p)) < 0) return false;
  return true;
}

NewtonPolygon build_polygon(std::vector<SupportPoint> pts) {
  if (pts.empty()) throw PreconditionFailed("polygon of an empty support");
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return {pts};
  // Andrew's monotone chain; collinear points are dropped.
  std::vector<SupportPoint> hull(2 * pts.size());
  size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && sgn(cross(hull[k - 2], hull[k - 1], p)) <= 0) --k;
    hull[k++] = p;
  }
  for (size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && sgn(cross(hull[k - 2], hull[k - 1], pts[i])) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return {hull};
}

bool same_polygon(const NewtonPolygon& p, const std::vector<SupportPoint>& vertices) {
  std::vector<SupportPoint> a = p.vertices, b = vertices;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) return false;
  return build_polygon(vertices).vertices == p.vertices;
}

std::string to_string(Side side) { return side == Side::near_zero ? "near-zero" : "near-infinity"; }

std::vector<Face> enumerate_faces(const NewtonPolygon& p, Side side) {
  const auto& vs = p.vertices;
  if (vs.empty()) return {};
  auto better = [side](const Rational& s, const Rational& best) { return side == Side::near_zero ? s < best : s > best; };
  auto selected = [&](const Rational& rho) {
    Rational best = scalar(vs.front(), rho);
    for (const auto& v : vs)
      if (better(scalar(v, rho), best)) best = scalar(v, rho);
    std::vector<SupportPoint> out;
    for (const auto& v : vs)
      if (scalar(v, rho) == best) out.push_back(v);
    return out;
  };

  std::set<Rational> breaks;
  for (const auto& [a, b] : p.edges())
    if (a.q2 != b.q2) breaks.insert(-(b.q1 - a.q1) / Rational(b.q2 - a.q2));

  std::vector<Face> faces;
  auto vertex_face = [&](const Rational& probe, std::optional<Rational> lo, std::optional<Rational> hi) {
    auto sel = selected(probe);
    Face f;
    f.kind = Face::Kind::vertex;
    f.a = f.b = sel.front();
    f.rho_lo = std::move(lo);
    f.rho_hi = std::move(hi);
    f.involves_unknown = f.a.q2 > 0;
    faces.push_back(std::move(f));
  };

  if (breaks.empty()) {
    vertex_face(Rational(0), std::nullopt, std::nullopt);
    return faces;
  }
  std::vector<Rational> b(breaks.begin(), breaks.end());
  vertex_face(b.front() - 1, std::nullopt, b.front());
  for (size_t i = 0; i < b.size(); ++i) {
    auto sel = selected(b[i]);
    if (sel.size() >= 2) {
      Face f;
      f.kind = Face::Kind::edge;
      f.a = *std::min_element(sel.begin(), sel.end());
      f.b = *std::max_element(sel.begin(), sel.end());
      f.rho = b[i];
      f.involves_unknown = f.a.q2 > 0 || f.b.q2 > 0;
      faces.push_back(std::move(f));
    }
    if (i + 1 < b.size()) vertex_face((b[i] + b[i + 1]) / 2, b[i], b[i + 1]);
  }
  vertex_face(b.back() + 1, b.back(), std::nullopt);
  // A breakpoint whose edge is not on the selected side leaves two adjacent
  // intervals with the same vertex; merge them.
  std::vector<Face> merged;
  for (auto& f : faces) {
    if (!merged.empty() && f.kind == Face::Kind::vertex && merged.back().kind == Face::Kind::vertex &&
        merged.back().a == f.a) {
      merged.back().rho_hi = f.rho_hi;
      continue;
    }
    merged.push_back(std::move(f));
  }
  return merged;
}

}  // namespace pvi
