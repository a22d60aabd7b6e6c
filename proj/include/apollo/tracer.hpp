#pragma once

#include <compare>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "apollo/gasket.hpp"
#include "apollo/geometry.hpp"

namespace apollo {

// Entry point of the first traced circle, in degrees on c1.
inline constexpr double kEntryDeg = -179.0;
// Bridge windows considered by the inward-turn search are widened by this
// fraction on each side.
inline constexpr double kInwardClearance = 0.5;

enum class Orientation { Ccw, Cw };

constexpr int sign(Orientation o) { return o == Orientation::Ccw ? 1 : -1; }
constexpr Orientation flipped(Orientation o) {
  return o == Orientation::Ccw ? Orientation::Cw : Orientation::Ccw;
}

// A node somewhere in a nesting hierarchy. Gasket 0 is the top level; the
// others are numbered in the order the trace enters them.
struct NodeRef {
  int gasket = 0;
  NodeId node = 0;

  friend auto operator<=>(const NodeRef&, const NodeRef&) = default;
};

struct SatelliteEntry {
  NodeId id = 0;
  Point tangency;
  Angle angle;  // position of the tangency on the host
};

// Every circle tangent to `id`, including the outer circle, sorted by angular
// position in the traversal direction starting at `entry_deg`.
std::vector<SatelliteEntry> satellite_list(const Gasket& g, NodeId id,
                                           double entry_deg = kEntryDeg,
                                           Orientation direction = Orientation::Ccw);

bool is_eligible(const Gasket& g, NodeId current, NodeId satellite,
                 const std::vector<bool>& visited);

struct ArcElement {
  NodeRef node;
  Point center;
  double draw_radius = 0.0;
  // Unwrapped: end_deg = start_deg + sign(orientation) * sweep, sweep >= 0.
  double start_deg = 0.0;
  double end_deg = 0.0;
  Orientation orientation = Orientation::Ccw;

  double sweep_deg() const { return std::abs(end_deg - start_deg); }
  double length() const { return draw_radius * to_radians(sweep_deg()); }
  Point start_point() const { return on_circle(center, draw_radius, start_deg); }
  Point end_point() const { return on_circle(center, draw_radius, end_deg); }
  Point point_at_length(double s) const;
};

// One straight wall of a bridge corridor.
struct BridgeWall {
  Point start;
  Point end;

  double length() const { return distance(start, end); }
  Point start_point() const { return start; }
  Point end_point() const { return end; }
  Point point_at_length(double s) const;
};

using PathElement = std::variant<ArcElement, BridgeWall>;

Point start_point(const PathElement& e);
Point end_point(const PathElement& e);
double element_length(const PathElement& e);
Point point_at_length(const PathElement& e, double s);

struct TracePath {
  std::vector<PathElement> elements;
  double delta = 0.0;
  bool closed = false;

  Point start() const { return start_point(elements.front()); }
  Point end() const { return end_point(elements.back()); }
};

enum class ExcursionKind { Satellite, Inward };

struct Excursion {
  ExcursionKind kind = ExcursionKind::Satellite;
  int child = -1;  // index into TraceTree::nodes
  // Window on the host, unwrapped in the host's traversal direction.
  double arrive_deg = 0.0;
  double leave_deg = 0.0;
  // Where the path enters and finally leaves the child circle.
  double child_enter_deg = 0.0;
  double child_exit_deg = 0.0;
  // Satellites: tangency angle on the host. Inward: the turn angle.
  double anchor_deg = 0.0;
};

struct TraceNode {
  NodeRef ref;
  int parent = -1;
  int depth = 0;  // nesting depth of ref.gasket
  Orientation orientation = Orientation::Ccw;
  Point center;  // drawing coordinates
  double radius = 0.0;  // drawing radius before the shrink
  double draw_radius = 0.0;
  double enter_deg = 0.0;  // unwrapped; exit_deg = enter_deg + sign * span
  double exit_deg = 0.0;
  std::vector<Excursion> excursions;  // in traversal order
};

struct TraceTree {
  std::vector<TraceNode> nodes;  // nodes[0] is c1 of the top gasket
  // host of gasket i (gasket 0 has none: {-1, -1})
  std::vector<NodeRef> gasket_hosts;
};

struct TraceResult {
  TracePath path;
  TraceTree tree;
};

// Hierarchical single-line trace of the top gasket (interiors ignored).
TraceResult trace(const Gasket& g, double delta);
// As trace(), with an inward excursion into every interior.
TraceResult trace_nested(const Gasket& g, double delta);

// Angular interval swept counter-clockwise from lo_deg to hi_deg.
struct AngularWindow {
  double lo_deg = 0.0;
  double hi_deg = 0.0;

  static AngularWindow around(double center_deg, double half_width_deg) {
    return {center_deg - half_width_deg, center_deg + half_width_deg};
  }
  AngularWindow widened(double fraction) const;
};

bool overlaps(const AngularWindow& a, const AngularWindow& b);

// Chooses where a trace turns into the interior of `host`. Candidates are
// -60, 180, then -61, -62, ... The candidate window is the nominal bridge gap
// for `delta` widened by kInwardClearance; `accept`, when set, can veto a
// candidate for geometric reasons.
Angle inward_turn_angle(const Circle& host, std::span<const AngularWindow> occupied, double delta,
                        const std::function<bool(double)>& accept = {});

// Arcs flattened to chords of length <= step; closed polylines repeat no
// point at the end.
std::vector<Point> flatten(const TracePath& path, double step);

// True iff no two non-adjacent segments of the flattened path intersect.
bool is_simple(const TracePath& path, double sample_step);

}  // namespace apollo
