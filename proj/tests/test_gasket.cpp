#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "apollo/error.hpp"
#include "apollo/gasket.hpp"

using namespace apollo;
using doctest::Approx;

namespace {

NodeId find_node(const Gasket& g, Point c, double r) {
  for (const auto& n : g.nodes) {
    if (distance(n.circle.center, c) < 1e-9 && std::abs(n.circle.radius - r) < 1e-9) return n.id;
  }
  return -1;
}

double signed_k(const Gasket& g, NodeId id) { return g.node(id).circle.curvature(); }

}  // namespace

TEST_CASE("two-equal seed layout") {
  const Gasket g = initial_configuration(1.0, SeedStyle::two_equal());
  REQUIRE(g.size() == 3);
  CHECK(g.outer().enclosing);
  CHECK(g.node(1).circle.radius == Approx(0.5));
  CHECK(g.node(1).circle.center.x == Approx(-0.5));
  CHECK(g.node(1).circle.center.y == Approx(0.0).epsilon(1e-12));
  CHECK(g.node(2).circle.center.x == Approx(0.5));
  for (const auto& n : g.nodes) CHECK(n.generation == 0);
}

TEST_CASE("three-equal seed radius ratio") {
  const double ratio = 2.0 * std::sqrt(3.0) - 3.0;
  const Gasket g = initial_configuration(1.0, SeedStyle::three_equal());
  CHECK(std::abs(g.node(1).circle.radius - ratio) < 1e-12);
  CHECK(std::abs(g.node(2).circle.radius - ratio) < 1e-12);
  // Three equal curvatures k inside an enclosing -1: the Descartes minus
  // branch of (k, k, -1) must return k again.
  const double k = 1.0 / ratio;
  const auto pair = descartes_curvatures(k, k, -1.0);
  CHECK((pair.minus == Approx(k) || pair.plus == Approx(k)));

  const Gasket full = complete(g, 0.4);
  REQUIRE(full.size() >= 4);
  CHECK(full.node(3).circle.radius == Approx(ratio));
  CHECK(full.node(3).generation == 0);
  CHECK(full.seed_count == 4);
}

TEST_CASE("invalid seeds") {
  CHECK_THROWS_AS(initial_configuration(0.0, SeedStyle::two_equal()), Error);
  try {
    initial_configuration(0.0, SeedStyle::two_equal());
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidSeed);
  }
  CHECK_THROWS_AS(initial_configuration(1.0, SeedStyle::custom(0.7, 0.7, 180)), Error);
  CHECK_THROWS_AS(initial_configuration(1.0, SeedStyle::custom(-0.1, 0.5, 180)), Error);
}

TEST_CASE("custom seed circles are mutually tangent") {
  const Gasket g = initial_configuration(2.0, SeedStyle::custom(0.9, 0.4, 120));
  CHECK(is_tangent(g.node(1).circle, g.node(2).circle, 1e-9));
  CHECK(is_tangent(g.node(0).circle, g.node(1).circle, 1e-9));
  CHECK(is_tangent(g.node(0).circle, g.node(2).circle, 1e-9));
  CHECK(direction_deg(g.node(1).circle.center) == Approx(120.0));
}

TEST_CASE("five-node gasket enumerated by hand") {
  // Gaps of (outer, c1, c2) hold r = 1/3 children; the next gaps hold
  // curvature 6 (between outer, c_i, child) and 15 (between c1, c2, child).
  const Gasket g = complete(initial_configuration(1.0, SeedStyle::two_equal()), 0.2);
  REQUIRE(g.size() == 5);
  const NodeId top = find_node(g, {0, 2.0 / 3.0}, 1.0 / 3.0);
  const NodeId bottom = find_node(g, {0, -2.0 / 3.0}, 1.0 / 3.0);
  REQUIRE(top > 2);
  REQUIRE(bottom > 2);
  for (NodeId id : {top, bottom}) {
    CHECK(g.node(id).generation == 1);
    auto parents = g.node(id).parents;
    std::sort(parents.begin(), parents.end());
    CHECK(parents == std::vector<NodeId>{0, 1, 2});
  }
  for (NodeId id = 0; id < 3; ++id) CHECK(g.node(id).generation == 0);

  std::multiset<long> frontier_k;
  for (const auto& f : g.frontier) {
    CHECK(f.child_radius < 0.2);
    frontier_k.insert(std::lround(1.0 / f.child_radius));
  }
  CHECK(frontier_k == std::multiset<long>{6, 6, 6, 6, 15, 15});
}

TEST_CASE("large r_min keeps the seed") {
  const Gasket g = complete(initial_configuration(1.0, SeedStyle::two_equal()), 0.6);
  CHECK(g.size() == 3);
  CHECK(g.frontier.size() == 2);
}

TEST_CASE("r_min must be positive") {
  const Gasket seed = initial_configuration(1.0, SeedStyle::two_equal());
  CHECK_THROWS_AS(complete(seed, 0.0), Error);
  CHECK_THROWS_AS(complete(seed, -1.0), Error);
  CHECK_THROWS_AS(complete(seed, 1e-9), Error);
}

TEST_CASE("every child satisfies Descartes with its parents") {
  const Gasket g = complete(initial_configuration(1.0, SeedStyle::two_equal()), 0.01);
  // Curvature-only recursion: 169 circles with k <= 100 in the (-1, 2, 2) packing.
  CHECK(g.size() == 169);
  for (const auto& n : g.nodes) {
    if (n.parents.empty()) continue;
    REQUIRE(n.parents.size() == 3);
    double s = n.circle.curvature(), q = s * s;
    int gen = 0;
    for (NodeId p : n.parents) {
      const double k = signed_k(g, p);
      s += k;
      q += k * k;
      gen = std::max(gen, g.node(p).generation);
      CHECK(is_tangent(n.circle, g.node(p).circle, g.tolerance()));
    }
    CHECK(std::abs(s * s - 2.0 * q) / (s * s) < 1e-9);
    CHECK(n.generation == gen + 1);
    CHECK(n.circle.radius >= g.r_min);
  }
  for (const auto& f : g.frontier) CHECK(f.child_radius < g.r_min);
}

TEST_CASE("neighbor lists are symmetric and tangent") {
  const Gasket g = build_gasket(1.0, SeedStyle::three_equal(), 0.05, false);
  for (const auto& n : g.nodes) {
    for (NodeId m : n.neighbors) {
      const auto& other = g.node(m).neighbors;
      CHECK(std::find(other.begin(), other.end(), n.id) != other.end());
      CHECK(is_tangent(n.circle, g.node(m).circle, g.tolerance()));
    }
  }
}

TEST_CASE("no circle overlaps another") {
  const Gasket g = build_gasket(1.0, SeedStyle::two_equal(), 0.03, false);
  for (std::size_t i = 1; i < g.size(); ++i) {
    const Circle& a = g.nodes[i].circle;
    CHECK(norm(a.center) + a.radius <= 1.0 + 1e-9);
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      const Circle& b = g.nodes[j].circle;
      CHECK(distance(a.center, b.center) >= a.radius + b.radius - 1e-9);
    }
  }
}

TEST_CASE("smaller r_min adds circles") {
  const auto seed = initial_configuration(1.0, SeedStyle::two_equal());
  std::size_t prev = 0;
  for (double r : {0.2, 0.1, 0.05, 0.02}) {
    const std::size_t n = complete(seed, r).size();
    CHECK(n > prev);
    prev = n;
  }
}

TEST_CASE("construction is scale invariant") {
  const Gasket a = build_gasket(1.0, SeedStyle::two_equal(), 0.05, false);
  const Gasket b = build_gasket(8.0, SeedStyle::two_equal(), 0.4, false);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(b.nodes[i].circle.radius == Approx(8.0 * a.nodes[i].circle.radius));
    CHECK(b.nodes[i].generation == a.nodes[i].generation);
  }
}

TEST_CASE("two-equal gasket is mirror symmetric") {
  const Gasket g = build_gasket(1.0, SeedStyle::two_equal(), 0.03, false);
  for (const auto& n : g.nodes) {
    const Point m{n.circle.center.x, -n.circle.center.y};
    CHECK(find_node(g, m, n.circle.radius) >= 0);
  }
}

TEST_CASE("nest threshold") {
  const NestPolicy policy;
  CHECK_FALSE(policy.admits(1.0, 0.5));
  CHECK(policy.admits(1.0, 0.4));

  // Seed circles of radius 1 inside an outer circle of radius 2.
  const Gasket g = build_gasket(2.0, SeedStyle::two_equal(), 0.4, true);
  REQUIRE(g.node(1).interior);
  const Gasket& in = *g.node(1).interior;
  CHECK(in.size() == 4);
  CHECK(in.outer().radius == Approx(1.0));
  for (NodeId id = 1; id < 4; ++id) {
    CHECK(in.node(id).circle.radius == Approx(kThreeEqualRatio));
    CHECK_FALSE(in.node(id).interior);
  }
  int deepest = 0;
  for_each_gasket(g, [&](const Gasket&, int depth) { deepest = std::max(deepest, depth); });
  CHECK(deepest == 1);

  const Gasket none = build_gasket(2.0, SeedStyle::two_equal(), 0.5, true);
  CHECK_FALSE(none.node(1).interior);
}

TEST_CASE("interior main circles touch the host at 180, 60 and -60 degrees") {
  const Gasket g = build_gasket(1.0, SeedStyle::three_equal(), 0.05, true);
  REQUIRE(g.node(1).interior);
  const Gasket& in = *g.node(1).interior;
  std::vector<double> angles;
  for (NodeId id = 1; id < 4; ++id) {
    const Point t = tangency_point(in.node(id).circle, in.outer(), in.tolerance());
    angles.push_back(angular_position(in.outer(), t, in.tolerance()).degrees());
  }
  std::sort(angles.begin(), angles.end());
  CHECK(angles[0] == Approx(-60.0));
  CHECK(angles[1] == Approx(60.0));
  CHECK(angles[2] == Approx(180.0));
}

TEST_CASE("traceable node count spans the hierarchy") {
  const Gasket g = build_gasket(1.0, SeedStyle::three_equal(), 0.1, true);
  std::size_t total = 0;
  for_each_gasket(g, [&](const Gasket& gk, int) { total += gk.size() - 1; });
  CHECK(count_traceable_nodes(g) == total);
  CHECK(total > g.size() - 1);
}

TEST_CASE("seed kind names") {
  CHECK(to_string(parse_seed_kind("two-equal")) == "two-equal");
  CHECK(to_string(parse_seed_kind("three-equal")) == "three-equal");
  CHECK(to_string(parse_seed_kind("custom")) == "custom");
  CHECK_THROWS_AS(parse_seed_kind("four"), Error);
}
