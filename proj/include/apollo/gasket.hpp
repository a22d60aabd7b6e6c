#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "apollo/geometry.hpp"

namespace apollo {

using NodeId = std::int32_t;

enum class SeedKind { TwoEqual, ThreeEqual, Custom };

std::string_view to_string(SeedKind kind) noexcept;
SeedKind parse_seed_kind(std::string_view name);

// Placement of the seed circles inside the outer circle.
//
// two-equal:   c1, c2 of radius R/2 at (-R/2, 0) and (R/2, 0).
// three-equal: c1, c2 of radius (2*sqrt(3) - 3) R with centers at polar
//              angles 150 and 30 degrees; the third equal circle (below) is
//              the first circle added by complete(). `rotation_deg` rotates
//              the whole layout counter-clockwise.
// custom:      c1 of radius r1 centered at polar angle `placement_deg`, c2 of
//              radius r2 placed clockwise from c1, both tangent to the outer
//              circle and to each other.
struct SeedStyle {
  SeedKind kind = SeedKind::TwoEqual;
  double r1 = 0.0;
  double r2 = 0.0;
  double placement_deg = 180.0;
  double rotation_deg = 0.0;

  static SeedStyle two_equal() { return {}; }
  static SeedStyle three_equal(double rotation_deg = 0.0) {
    return {SeedKind::ThreeEqual, 0.0, 0.0, 150.0, rotation_deg};
  }
  static SeedStyle custom(double r1, double r2, double placement_deg) {
    return {SeedKind::Custom, r1, r2, placement_deg, 0.0};
  }
};

// Radius ratio of three equal circles inscribed in a unit circle.
inline const double kThreeEqualRatio = 2.0 * std::sqrt(3.0) - 3.0;

struct Gasket;

struct GasketNode {
  NodeId id = 0;
  Circle circle;
  std::vector<NodeId> parents;    // empty or exactly three ids
  int generation = 0;
  std::vector<NodeId> neighbors;  // every node tangent to this one
  std::shared_ptr<const Gasket> interior;
};

// A curvilinear triangle bounded by three mutually tangent circles.
struct Gap {
  std::array<NodeId, 3> ids{};
  Point witness;                   // reference point near the gap
  std::optional<NodeId> opposite;  // existing circle tangent to the same triple
  int side = 0;                    // seed gaps: side of the directed line c1 -> c2
};

struct FrontierGap {
  Gap gap;
  double child_radius = 0.0;
};

struct Gasket {
  std::vector<GasketNode> nodes;
  double r_min = 0.0;
  SeedStyle seed;
  // Nodes [0, seed_count) have generation 0. Three-equal seeds count their
  // third equal circle as a seed circle.
  int seed_count = 3;
  // Gaps left at termination; each child radius is below r_min.
  std::vector<FrontierGap> frontier;

  const Circle& outer() const { return nodes.front().circle; }
  const GasketNode& node(NodeId id) const { return nodes.at(static_cast<std::size_t>(id)); }
  std::size_t size() const { return nodes.size(); }
  double tolerance() const { return kRelTol * outer().radius; }
};

Gasket initial_configuration(double outer_radius, const SeedStyle& style);
Gasket initial_configuration(const Circle& outer, const SeedStyle& style);

// Fills every gap with its Descartes child while the child radius stays at
// or above r_min. Restarts from the seed circles of `seed`.
Gasket complete(const Gasket& seed, double r_min);

struct NestPolicy {
  // Hosts need radius >= min_host_radius. Zero means "derive from r_min":
  // the host qualifies when its interior seed circles exceed r_min.
  double min_host_radius = 0.0;

  bool admits(double host_radius, double r_min) const;
};

// Rotation applied to interior seeds so that their three main circles touch
// the host at 180, 60 and -60 degrees.
inline constexpr double kInteriorRotationDeg = 30.0;

Gasket nest(const Gasket& g, double r_min, const NestPolicy& policy = {});

// initial_configuration + complete (+ nest).
Gasket build_gasket(double outer_radius, const SeedStyle& style, double r_min, bool nested,
                    const NestPolicy& policy = {});

// Visits g and every interior below it, depth first.
void for_each_gasket(const Gasket& g, const std::function<void(const Gasket&, int depth)>& fn);

// Non-outer nodes over the whole nesting hierarchy.
std::size_t count_traceable_nodes(const Gasket& g);

}  // namespace apollo
