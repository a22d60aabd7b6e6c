#include "doctest.h"

#include <cmath>

#include "apollo/error.hpp"
#include "apollo/geometry.hpp"

using namespace apollo;
using doctest::Approx;

namespace {

// (sum k)^2 - 2 sum k^2, relative to the larger side.
double descartes_residual(double a, double b, double c, double d) {
  const double s = a + b + c + d;
  const double q = a * a + b * b + c * c + d * d;
  return std::abs(s * s - 2.0 * q) / std::max(s * s, 2.0 * q);
}

}  // namespace

TEST_CASE("descartes curvatures of three unit circles") {
  const auto k = descartes_curvatures(1, 1, 1);
  CHECK(k.plus == Approx(3.0 + 2.0 * std::sqrt(3.0)).epsilon(1e-14));
  CHECK(k.minus == Approx(3.0 - 2.0 * std::sqrt(3.0)).epsilon(1e-14));
  CHECK(std::abs(k.plus - 6.464) < 5e-4);
}

TEST_CASE("descartes double root") {
  const auto k = descartes_curvatures(-1, 2, 2);
  CHECK(k.plus == Approx(3.0));
  CHECK(k.minus == Approx(3.0));
}

TEST_CASE("descartes quadruples satisfy the quadratic identity") {
  const auto k = descartes_curvatures(2, 2, 3);
  CHECK(k.plus == Approx(15.0));
  CHECK(k.minus == Approx(-1.0));
  CHECK(descartes_residual(2, 2, 3, k.plus) < 1e-12);
  CHECK(descartes_residual(2, 2, 3, k.minus) < 1e-12);
}

TEST_CASE("descartes rejects incompatible curvatures") {
  CHECK_THROWS_AS(descartes_curvatures(-1, 0.1, 0.1), Error);
  try {
    descartes_curvatures(-1, 0.1, 0.1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NegativeDiscriminant);
  }
}

TEST_CASE("tangent circle in the two-equal seed") {
  const Circle outer{{0, 0}, 1.0, true};
  const Circle c1{{-0.5, 0}, 0.5, false};
  const Circle c2{{0.5, 0}, 0.5, false};
  const auto cands = tangent_circle_candidates(outer, c1, c2, 3.0, 1e-9);
  REQUIRE(cands.size() == 2);
  for (const auto& c : cands) {
    CHECK(c.radius == Approx(1.0 / 3.0));
    CHECK(c.center.x == Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(c.center.y) == Approx(2.0 / 3.0));
  }
  const Circle up = solve_tangent_circle(outer, c1, c2, 3.0, 1e-9, Point{0, 1});
  CHECK(up.center.y == Approx(2.0 / 3.0));
  const Circle down = solve_tangent_circle(outer, c1, c2, 3.0, 1e-9, Point{0, -1});
  CHECK(down.center.y == Approx(-2.0 / 3.0));
}

TEST_CASE("inner soddy circle of three unit circles") {
  const double h = std::sqrt(3.0);
  const Circle a{{-1, 0}, 1, false};
  const Circle b{{1, 0}, 1, false};
  const Circle c{{0, h}, 1, false};
  const double k = 3.0 + 2.0 * std::sqrt(3.0);
  const Circle s = solve_tangent_circle(a, b, c, k, 1e-9, Point{0, h / 3});
  CHECK(s.radius == Approx(1.0 / k));
  CHECK(s.center.x == Approx(0.0).epsilon(1e-12));
  CHECK(s.center.y == Approx(h / 3.0));
  // Brute-force tangency: center distances equal radius sums.
  for (const Circle* p : {&a, &b, &c}) CHECK(distance(s.center, p->center) == Approx(1.0 + s.radius));
}

TEST_CASE("tangent circle needs positive curvature") {
  const Circle a{{-1, 0}, 1, false};
  const Circle b{{1, 0}, 1, false};
  const Circle c{{0, std::sqrt(3.0)}, 1, false};
  CHECK_THROWS_AS(solve_tangent_circle(a, b, c, 0.0, 1e-9), Error);
  CHECK_THROWS_AS(solve_tangent_circle(a, b, c, -1.0, 1e-9), Error);
}

TEST_CASE("tangency points") {
  SUBCASE("external") {
    const Point p = tangency_point({{0, 0}, 1, false}, {{3, 0}, 2, false}, 1e-12);
    CHECK(p.x == Approx(1.0));
    CHECK(p.y == Approx(0.0));
  }
  SUBCASE("internal") {
    const Point p = tangency_point({{0, 0}, 1, true}, {{0.5, 0}, 0.5, false}, 1e-12);
    CHECK(p.x == Approx(1.0));
    CHECK(p.y == Approx(0.0));
  }
  SUBCASE("seed circle and first child") {
    const Circle c1{{-0.5, 0}, 0.5, false};
    const Circle top{{0, 2.0 / 3.0}, 1.0 / 3.0, false};
    const Point p = tangency_point(c1, top, 1e-12);
    CHECK(p.x == Approx(-0.2));
    CHECK(p.y == Approx(0.4));
    CHECK(angular_position(c1, p, 1e-12).degrees() ==
          Approx(to_degrees(std::atan2(0.4, 0.3))));
  }
  SUBCASE("not tangent") {
    CHECK_THROWS_AS(tangency_point({{0, 0}, 1, false}, {{5, 0}, 1, false}, 1e-12), Error);
  }
}

TEST_CASE("angular positions") {
  const Circle c{{0, 0}, 1, false};
  CHECK(angular_position(c, {0, 1}, 1e-12).degrees() == Approx(90.0));
  CHECK(angular_position(c, {-1, 0}, 1e-12).degrees() == Approx(180.0));
  CHECK(angular_position(c, {0, -1}, 1e-12).degrees() == Approx(-90.0));
  CHECK_THROWS_AS(angular_position(c, {0.5, 0}, 1e-12), Error);
}

TEST_CASE("angle normalization") {
  CHECK(Angle(-180.0).degrees() == Approx(180.0));
  CHECK(Angle(540.0).degrees() == Approx(180.0));
  CHECK(Angle(-181.0).degrees() == Approx(179.0));
  CHECK(Angle(721.0).degrees() == Approx(1.0));
  CHECK(wrap360(-1.0) == Approx(359.0));
  CHECK(wrap360(360.0) == Approx(0.0));
}

TEST_CASE("tangency is invariant under similarity") {
  const Circle outer{{0, 0}, 1.0, true};
  const Circle c1{{-0.5, 0}, 0.5, false};
  const Circle c2{{0.5, 0}, 0.5, false};
  const double s = 37.5;
  const Point shift{3.0, -11.0};
  auto map = [&](Circle c) { return Circle{c.center * s + shift, c.radius * s, c.enclosing}; };
  const Circle a = solve_tangent_circle(outer, c1, c2, 3.0, 1e-9, Point{0, 1});
  const Circle b = solve_tangent_circle(map(outer), map(c1), map(c2), 3.0 / s, 1e-9 * s,
                                        Point{0, 1} * s + shift);
  CHECK(b.radius == Approx(a.radius * s));
  CHECK(b.center.x == Approx(a.center.x * s + shift.x));
  CHECK(b.center.y == Approx(a.center.y * s + shift.y));
}
