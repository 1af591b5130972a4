#include <doctest.h>

#include "pvi/polygon.hpp"
#include "support/random.hpp"

using namespace pvi;
using RF = RationalFunction;
using S = DiffSum<RF>;

namespace {

SupportPoint pt(long q1, int q2) { return {Rational(q1), q2}; }

std::vector<SupportPoint> rectangle() { return {pt(0, 0), pt(0, 1), pt(8, 1), pt(8, 0), pt(3, 0), pt(5, 1), pt(4, 1)}; }

const Face* find_vertex(const std::vector<Face>& fs, const SupportPoint& v) {
  for (const auto& f : fs)
    if (f.kind == Face::Kind::vertex && f.a == v) return &f;
  return nullptr;
}

const Face* find_edge(const std::vector<Face>& fs, const SupportPoint& a, const SupportPoint& b) {
  for (const auto& f : fs)
    if (f.kind == Face::Kind::edge && f.a == std::min(a, b) && f.b == std::max(a, b)) return &f;
  return nullptr;
}

}  // namespace

TEST_CASE("hull examples") {
  auto rect = build_polygon(rectangle());
  CHECK(rect.vertices == std::vector<SupportPoint>{pt(0, 0), pt(8, 0), pt(8, 1), pt(0, 1)});
  CHECK(same_polygon(rect, {pt(0, 0), pt(0, 1), pt(8, 1), pt(8, 0)}));
  CHECK(rect.edges().size() == 4);

  auto quad = build_polygon({pt(-1, 1), pt(0, 0), pt(8, 0), pt(8, 1), pt(2, 0), pt(3, 1)});
  CHECK(same_polygon(quad, {pt(-1, 1), pt(0, 0), pt(8, 0), pt(8, 1)}));
  CHECK_FALSE(same_polygon(quad, {pt(0, 1), pt(0, 0), pt(8, 0), pt(8, 1)}));

  auto one = build_polygon({pt(2, 1)});
  CHECK(one.vertices == std::vector<SupportPoint>{pt(2, 1)});
  auto seg = build_polygon({pt(0, 0), pt(1, 1), pt(2, 2)});
  CHECK(seg.vertices == std::vector<SupportPoint>{pt(0, 0), pt(2, 2)});
  CHECK(seg.contains(pt(1, 1)));
  CHECK_FALSE(seg.contains(pt(3, 3)));
  CHECK_THROWS_AS(build_polygon({}), PreconditionFailed);
}

TEST_CASE("hull contains its support and vertices come from it") {
  testing::Gen gen(4);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<SupportPoint> pts;
    const int n = static_cast<int>(gen.integer(1, 12));
    for (int i = 0; i < n; ++i) pts.push_back({gen.rational(6, 2), static_cast<int>(gen.integer(0, 4))});
    auto p = build_polygon(pts);
    for (const auto& q : pts) CHECK(p.contains(q));
    for (const auto& v : p.vertices) CHECK(std::find(pts.begin(), pts.end(), v) != pts.end());
  }
}

TEST_CASE("truncation by direction") {
  const auto d = Derivation::plain();
  S y = S::variable(d, 0);
  S g = y + y.shifted(2) + S::constant(d, RF(1), 1);
  auto t = truncate_for_direction(g, 0);
  CHECK(t.c == 0);
  CHECK(t.sum == y);
  CHECK(truncate_for_direction(t.sum, 0).sum == t.sum);
  auto single = y.shifted(3);
  CHECK(truncate_for_direction(single, Rational(5, 2)).sum == single);
  auto inf = truncate_for_direction(g, 0, Side::near_infinity);
  CHECK(inf.c == 2);
  CHECK(inf.sum == y.shifted(2));
}

TEST_CASE("faces of the rectangle") {
  auto rect = build_polygon(rectangle());
  auto zero = enumerate_faces(rect, Side::near_zero);
  const Face* v = find_vertex(zero, pt(0, 1));
  REQUIRE(v);
  CHECK(!v->rho_lo);
  CHECK(*v->rho_hi == 0);
  const Face* e = find_edge(zero, pt(0, 0), pt(0, 1));
  REQUIRE(e);
  CHECK(*e->rho == 0);
  const Face* lo = find_vertex(zero, pt(0, 0));
  REQUIRE(lo);
  CHECK_FALSE(lo->involves_unknown);
  CHECK(zero.size() == 3);

  auto inf = enumerate_faces(rect, Side::near_infinity);
  const Face* vi = find_vertex(inf, pt(8, 1));
  REQUIRE(vi);
  CHECK(*vi->rho_lo == 0);
  CHECK(!vi->rho_hi);
  REQUIRE(find_edge(inf, pt(8, 0), pt(8, 1)));

  auto one = enumerate_faces(build_polygon({pt(2, 1)}), Side::near_zero);
  REQUIRE(one.size() == 1);
  CHECK(!one[0].rho_lo);
  CHECK(!one[0].rho_hi);
}

TEST_CASE("faces cover every direction") {
  testing::Gen gen(9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<SupportPoint> pts;
    for (int i = 0; i < 7; ++i) pts.push_back({gen.rational(6, 1), static_cast<int>(gen.integer(0, 4))});
    auto poly = build_polygon(pts);
    for (Side side : {Side::near_zero, Side::near_infinity}) {
      auto faces = enumerate_faces(poly, side);
      for (int j = -12; j <= 12; ++j) {
        Rational rho(j, 3);
        rho.canonicalize();
        // the selected set at rho is a listed face
        Rational best = scalar(poly.vertices[0], rho);
        for (const auto& v : poly.vertices) {
          Rational s = scalar(v, rho);
          if (side == Side::near_zero ? s < best : s > best) best = s;
        }
        int hits = 0;
        for (const auto& f : faces) {
          if (f.kind == Face::Kind::edge && f.rho && *f.rho == rho) {
            CHECK(scalar(f.a, rho) == best);
            CHECK(scalar(f.b, rho) == best);
            ++hits;
          }
          if (f.kind == Face::Kind::vertex && (!f.rho_lo || *f.rho_lo < rho) && (!f.rho_hi || rho < *f.rho_hi)) {
            CHECK(scalar(f.a, rho) == best);
            ++hits;
          }
        }
        CHECK(hits == 1);
      }
    }
  }
}
