#include "apollo/tracer.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>

#include "apollo/error.hpp"

namespace apollo {

Point ArcElement::point_at_length(double s) const {
  const double deg = start_deg + sign(orientation) * to_degrees(s / draw_radius);
  return on_circle(center, draw_radius, deg);
}

Point BridgeWall::point_at_length(double s) const {
  const double len = length();
  if (len <= 0.0) return start;
  return start + (end - start) * (s / len);
}

Point start_point(const PathElement& e) {
  return std::visit([](const auto& x) { return x.start_point(); }, e);
}

Point end_point(const PathElement& e) {
  return std::visit([](const auto& x) { return x.end_point(); }, e);
}

double element_length(const PathElement& e) {
  return std::visit([](const auto& x) { return x.length(); }, e);
}

Point point_at_length(const PathElement& e, double s) {
  return std::visit([s](const auto& x) { return x.point_at_length(s); }, e);
}

std::vector<SatelliteEntry> satellite_list(const Gasket& g, NodeId id, double entry_deg,
                                           Orientation direction) {
  const GasketNode& host = g.node(id);
  const double tol = g.tolerance();
  std::vector<SatelliteEntry> out;
  out.reserve(host.neighbors.size());
  for (NodeId nb : host.neighbors) {
    const Point t = tangency_point(host.circle, g.node(nb).circle, tol);
    out.push_back({nb, t, angular_position(host.circle, t, tol)});
  }
  const int s = sign(direction);
  auto offset = [&](const SatelliteEntry& e) { return wrap360(s * (e.angle.degrees() - entry_deg)); };
  std::sort(out.begin(), out.end(), [&](const SatelliteEntry& a, const SatelliteEntry& b) {
    return offset(a) < offset(b);
  });
  return out;
}

bool is_eligible(const Gasket& g, NodeId current, NodeId satellite,
                 const std::vector<bool>& visited) {
  if (satellite == 0) return false;
  if (visited.at(static_cast<std::size_t>(satellite))) return false;
  const int gc = g.node(current).generation;
  const int gs = g.node(satellite).generation;
  return gc <= gs && gs <= gc + 1;
}

AngularWindow AngularWindow::widened(double fraction) const {
  const double half = 0.5 * (hi_deg - lo_deg);
  const double mid = lo_deg + half;
  return around(mid, half * (1.0 + fraction));
}

bool overlaps(const AngularWindow& a, const AngularWindow& b) {
  const double wa = a.hi_deg - a.lo_deg;
  const double wb = b.hi_deg - b.lo_deg;
  return wrap360(b.lo_deg - a.lo_deg) <= wa || wrap360(a.lo_deg - b.lo_deg) <= wb;
}

Angle inward_turn_angle(const Circle& host, std::span<const AngularWindow> occupied, double delta,
                        const std::function<bool(double)>& accept) {
  const double draw = host.radius - delta;
  if (!(draw > delta)) {
    throw Error(ErrorCode::NoInwardAngle, "host circle too small for a bridge of this width");
  }
  const double half = to_degrees(std::asin(delta / draw)) * (1.0 + kInwardClearance);
  auto clear = [&](double deg) {
    const AngularWindow cand = AngularWindow::around(deg, half);
    for (const auto& w : occupied) {
      if (overlaps(cand, w)) return false;
    }
    return !accept || accept(deg);
  };
  if (clear(-60.0)) return Angle(-60.0);
  if (clear(180.0)) return Angle(180.0);
  for (int k = 1; k < 360; ++k) {
    const double deg = Angle::normalize(-60.0 - k);
    if (deg == 180.0) continue;
    if (clear(deg)) return Angle(deg);
  }
  throw Error(ErrorCode::NoInwardAngle, "no clear inward-turn angle on the host circle");
}

namespace {

// Similarity mapping gasket coordinates into drawing coordinates.
struct Placement {
  Point src;
  Point dst;
  double scale = 1.0;

  Point map(Point p) const { return dst + (p - src) * scale; }
};

double distance_to_segment(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + ab * t);
}

struct Corridor {
  double arrive_deg = 0.0;  // host, unnormalized
  double leave_deg = 0.0;
  double enter_deg = 0.0;  // child
  double exit_deg = 0.0;
  Point walls[2][2];       // [side][host end, child end]
};

class Tracer {
 public:
  Tracer(const Gasket& top, double delta, bool nested) : delta_(delta), nested_(nested) {
    register_gasket(top, Placement{}, NodeRef{-1, -1});
  }

  TraceResult run() {
    const Gasket& top = *gaskets_.front();
    if (top.nodes.size() < 3) {
      throw Error(ErrorCode::InvalidArgument, "gasket has no seed circles to trace");
    }
    visit(0, 1, Orientation::Ccw, kEntryDeg, kEntryDeg + 360.0, -1, 0);

    const std::size_t expected =
        nested_ ? count_traceable_nodes(top) : top.nodes.size() - 1;
    if (tree_.nodes.size() != expected) {
      throw Error(ErrorCode::UnreachedNodes,
                  "trace reached " + std::to_string(tree_.nodes.size()) + " of " +
                      std::to_string(expected) + " circles");
    }

    TraceResult result;
    result.path.delta = delta_;
    emit(0, result.path.elements);
    result.path.closed = true;
    result.tree = std::move(tree_);
    return result;
  }

 private:
  int register_gasket(const Gasket& g, const Placement& pl, NodeRef host) {
    gaskets_.push_back(&g);
    placements_.push_back(pl);
    visited_.emplace_back(g.nodes.size(), false);
    tree_.gasket_hosts.push_back(host);
    return static_cast<int>(gaskets_.size()) - 1;
  }

  Circle drawn(int gk, NodeId id) const {
    const Circle& c = gaskets_[static_cast<std::size_t>(gk)]->node(id).circle;
    const Placement& pl = placements_[static_cast<std::size_t>(gk)];
    return Circle{pl.map(c.center), c.radius * pl.scale, c.enclosing};
  }

  double half_window(double draw_radius) const {
    if (!(draw_radius > delta_)) {
      throw Error(ErrorCode::DeltaTooLarge, "shrunk circle is narrower than the bridge");
    }
    return to_degrees(std::asin(delta_ / draw_radius));
  }

  int visit(int gk, NodeId id, Orientation o, double enter_deg, double exit_deg, int parent,
            int depth) {
    const Gasket& g = *gaskets_[static_cast<std::size_t>(gk)];
    visited_[static_cast<std::size_t>(gk)][static_cast<std::size_t>(id)] = true;

    const int idx = static_cast<int>(tree_.nodes.size());
    const Circle dc = drawn(gk, id);
    const double draw = dc.radius - delta_;
    const double beta = half_window(draw);
    const int s = sign(o);
    {
      TraceNode tn;
      tn.ref = {gk, id};
      tn.parent = parent;
      tn.depth = depth;
      tn.orientation = o;
      tn.center = dc.center;
      tn.radius = dc.radius;
      tn.draw_radius = draw;
      tn.enter_deg = enter_deg;
      tn.exit_deg = exit_deg;
      tree_.nodes.push_back(std::move(tn));
    }
    auto offset = [&](double deg) { return wrap360(s * (deg - enter_deg)); };
    const double exit_off = s * (exit_deg - enter_deg);

    struct Sat {
      NodeId id;
      double angle;
      double off;
    };
    std::vector<Sat> sats;
    for (NodeId nb : g.node(id).neighbors) {
      if (nb == 0) continue;
      const double ang = direction_deg(drawn(gk, nb).center - dc.center);
      sats.push_back({nb, ang, offset(ang)});
    }
    std::sort(sats.begin(), sats.end(), [](const Sat& a, const Sat& b) { return a.off < b.off; });

    std::vector<Excursion> excursions;
    double cursor = 0.0;
    for (const Sat& sat : sats) {
      if (!is_eligible(g, id, sat.id, visited_[static_cast<std::size_t>(gk)])) continue;
      const double arrive_off = sat.off - beta;
      const double leave_off = sat.off + beta;
      if (arrive_off < cursor || leave_off > exit_off) {
        throw Error(ErrorCode::WindowOverlap, "bridge windows overlap on a traced circle");
      }
      const Circle sc = drawn(gk, sat.id);
      const double beta_s = half_window(sc.radius - delta_);
      const double c_enter = sat.angle + 180.0 + s * beta_s;
      const double c_exit = c_enter + s * (360.0 - 2.0 * beta_s);
      const int child = visit(gk, sat.id, o, c_enter, c_exit, idx, depth);

      Excursion ex;
      ex.kind = ExcursionKind::Satellite;
      ex.child = child;
      ex.arrive_deg = enter_deg + s * arrive_off;
      ex.leave_deg = enter_deg + s * leave_off;
      ex.child_enter_deg = c_enter;
      ex.child_exit_deg = c_exit;
      ex.anchor_deg = sat.angle;
      excursions.push_back(ex);
      cursor = leave_off;
    }

    const GasketNode& gn = g.node(id);
    if (nested_ && gn.interior) {
      add_inward(gk, id, idx, o, dc, enter_deg, exit_deg, parent < 0 ? beta : -1.0, depth,
                 excursions);
    }
    tree_.nodes[static_cast<std::size_t>(idx)].excursions = std::move(excursions);
    return idx;
  }

  // Corridor from the host (drawn circle `host`, traversal sign s) at turn
  // angle `deg` into interior main circle `m` (drawn).
  std::optional<Corridor> inward_corridor(const Circle& host, const Circle& m, double deg,
                                          int s) const {
    const double a = host.radius - delta_;
    const double b = m.radius - delta_;
    if (!(b > delta_)) return std::nullopt;
    const Point turn = on_circle(host.center, a, deg);
    const Point u = (turn - m.center) / distance(turn, m.center);
    const Point n = perp(u);
    const double t_m = std::sqrt(b * b - delta_ * delta_);
    const double beta_m = to_degrees(std::asin(delta_ / b));
    const double dir = direction_deg(u);

    Corridor c;
    double host_deg[2];
    for (int side : {-1, 1}) {
      const Point w = m.center - host.center + n * (side * delta_);
      const double wu = dot(w, u);
      const double disc = wu * wu - dot(w, w) + a * a;
      if (disc < 0.0) return std::nullopt;
      const double t_h = -wu + std::sqrt(disc);
      if (!(t_h > t_m)) return std::nullopt;
      const Point hp = m.center + u * t_h + n * (side * delta_);
      const int k = side < 0 ? 0 : 1;
      host_deg[k] = direction_deg(hp - host.center);
      c.walls[k][0] = hp;
      c.walls[k][1] = m.center + u * t_m + n * (side * delta_);
    }
    // Arrive on the wall at side -s, leave on side +s.
    const double arrive = host_deg[s < 0 ? 1 : 0];
    const double leave = host_deg[s < 0 ? 0 : 1];
    const double span = wrap360(s * (leave - arrive));
    if (!(span > 0.0) || span > 90.0) return std::nullopt;
    c.arrive_deg = arrive;
    c.leave_deg = arrive + s * span;
    c.enter_deg = dir - s * beta_m;
    c.exit_deg = c.enter_deg - s * (360.0 - 2.0 * beta_m);
    return c;
  }

  void add_inward(int gk, NodeId id, int idx, Orientation o, const Circle& dc, double enter_deg,
                  double exit_deg, double root_beta, int depth,
                  std::vector<Excursion>& excursions) {
    const Gasket& g = *gaskets_[static_cast<std::size_t>(gk)];
    const Gasket& interior = *g.node(id).interior;
    const int s = sign(o);

    std::vector<AngularWindow> occupied;
    for (const Excursion& ex : excursions) {
      const double lo = std::min(ex.arrive_deg, ex.leave_deg);
      const double hi = std::max(ex.arrive_deg, ex.leave_deg);
      occupied.push_back(AngularWindow{lo, hi}.widened(kInwardClearance));
    }
    if (root_beta >= 0.0) {
      occupied.push_back(AngularWindow::around(enter_deg, root_beta).widened(kInwardClearance));
    } else {
      const double other = exit_deg - s * 360.0;
      occupied.push_back(
          AngularWindow{std::min(enter_deg, other), std::max(enter_deg, other)}.widened(
              kInwardClearance));
    }

    // Interior drawn inside the shrunk host line.
    Placement pl;
    pl.src = interior.outer().center;
    pl.dst = dc.center;
    pl.scale = (dc.radius - delta_) / interior.outer().radius;
    auto drawn_interior = [&](NodeId n) {
      const Circle& c = interior.node(n).circle;
      return Circle{pl.map(c.center), c.radius * pl.scale, false};
    };
    const Circle outer_drawn{dc.center, dc.radius - delta_, true};

    auto nearest_main = [&](double deg) {
      const Point turn = on_circle(dc.center, dc.radius - delta_, deg);
      NodeId best = 1;
      double best_d = std::numeric_limits<double>::infinity();
      for (NodeId n = 1; n <= 3 && n < static_cast<NodeId>(interior.nodes.size()); ++n) {
        const Circle mc = drawn_interior(n);
        const Point contact = tangency_point(outer_drawn, mc, kRelTol * 1e3 * dc.radius);
        const double d = distance(contact, turn);
        if (d < best_d) {
          best_d = d;
          best = n;
        }
      }
      return best;
    };

    auto accept = [&](double deg) {
      const NodeId m = nearest_main(deg);
      const Circle mc = drawn_interior(m);
      const auto cor = inward_corridor(dc, mc, deg, s);
      if (!cor) return false;
      const AngularWindow win =
          AngularWindow{std::min(cor->arrive_deg, cor->leave_deg),
                        std::max(cor->arrive_deg, cor->leave_deg)}
              .widened(kInwardClearance);
      for (const auto& w : occupied) {
        if (overlaps(win, w)) return false;
      }
      // Walls stay clear of every other interior circle.
      for (std::size_t j = 1; j < interior.nodes.size(); ++j) {
        if (static_cast<NodeId>(j) == m) continue;
        const Circle oc = drawn_interior(static_cast<NodeId>(j));
        for (const auto& wall : cor->walls) {
          if (distance_to_segment(oc.center, wall[0], wall[1]) <= oc.radius - 0.5 * delta_) {
            return false;
          }
        }
      }
      // The entry window on m stays clear of m's own bridge windows.
      const double beta_m = to_degrees(std::asin(delta_ / (mc.radius - delta_)));
      const AngularWindow entry =
          AngularWindow{std::min(cor->enter_deg, cor->enter_deg + 2.0 * s * beta_m),
                        std::max(cor->enter_deg, cor->enter_deg + 2.0 * s * beta_m)}
              .widened(kInwardClearance);
      for (NodeId nb : interior.node(m).neighbors) {
        if (nb == 0) continue;
        const double ang = direction_deg(drawn_interior(nb).center - mc.center);
        if (overlaps(entry, AngularWindow::around(ang, beta_m).widened(kInwardClearance))) {
          return false;
        }
      }
      return true;
    };

    const Angle turn = inward_turn_angle(dc, occupied, delta_, accept);
    const NodeId m = nearest_main(turn.degrees());
    const Circle mc = drawn_interior(m);
    const Corridor cor = *inward_corridor(dc, mc, turn.degrees(), s);

    const int igk = register_gasket(interior, pl, NodeRef{gk, id});
    const int child = visit(igk, m, flipped(o), cor.enter_deg, cor.exit_deg, idx, depth + 1);

    const double arrive_off = wrap360(s * (cor.arrive_deg - enter_deg));
    const double leave_off = arrive_off + wrap360(s * (cor.leave_deg - cor.arrive_deg));
    Excursion ex;
    ex.kind = ExcursionKind::Inward;
    ex.child = child;
    ex.arrive_deg = enter_deg + s * arrive_off;
    ex.leave_deg = enter_deg + s * leave_off;
    ex.child_enter_deg = cor.enter_deg;
    ex.child_exit_deg = cor.exit_deg;
    ex.anchor_deg = turn.degrees();

    const double exit_off = s * (exit_deg - enter_deg);
    if (leave_off > exit_off) {
      throw Error(ErrorCode::WindowOverlap, "inward bridge overlaps the entry window");
    }
    auto pos = std::find_if(excursions.begin(), excursions.end(), [&](const Excursion& e) {
      return s * (e.arrive_deg - enter_deg) > arrive_off;
    });
    if (pos != excursions.begin() && s * (std::prev(pos)->leave_deg - enter_deg) > arrive_off) {
      throw Error(ErrorCode::WindowOverlap, "inward bridge overlaps a satellite bridge");
    }
    if (pos != excursions.end() && s * (pos->arrive_deg - enter_deg) < leave_off) {
      throw Error(ErrorCode::WindowOverlap, "inward bridge overlaps a satellite bridge");
    }
    excursions.insert(pos, ex);
  }

  void emit(int idx, std::vector<PathElement>& out) const {
    const TraceNode& n = tree_.nodes[static_cast<std::size_t>(idx)];
    auto arc = [&](double from, double to) {
      if (from == to) return;
      out.push_back(ArcElement{n.ref, n.center, n.draw_radius, from, to, n.orientation});
    };
    double cursor = n.enter_deg;
    for (const Excursion& ex : n.excursions) {
      arc(cursor, ex.arrive_deg);
      const TraceNode& c = tree_.nodes[static_cast<std::size_t>(ex.child)];
      out.push_back(BridgeWall{on_circle(n.center, n.draw_radius, ex.arrive_deg),
                               on_circle(c.center, c.draw_radius, ex.child_enter_deg)});
      emit(ex.child, out);
      out.push_back(BridgeWall{on_circle(c.center, c.draw_radius, ex.child_exit_deg),
                               on_circle(n.center, n.draw_radius, ex.leave_deg)});
      cursor = ex.leave_deg;
    }
    arc(cursor, n.exit_deg);
  }

  double delta_;
  bool nested_;
  std::vector<const Gasket*> gaskets_;
  std::vector<Placement> placements_;
  std::vector<std::vector<bool>> visited_;
  TraceTree tree_;
};

void check_delta(const Gasket& g, double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  }
  double limit = g.r_min;
  if (!(limit > 0.0)) {
    limit = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < g.nodes.size(); ++i) limit = std::min(limit, g.nodes[i].circle.radius);
  }
  if (delta > 0.25 * limit * (1.0 + 1e-12)) {
    throw Error(ErrorCode::DeltaTooLarge, "delta exceeds r_min / 4");
  }
}

}  // namespace

TraceResult trace(const Gasket& g, double delta) {
  check_delta(g, delta);
  return Tracer(g, delta, false).run();
}

TraceResult trace_nested(const Gasket& g, double delta) {
  check_delta(g, delta);
  return Tracer(g, delta, true).run();
}

std::vector<Point> flatten(const TracePath& path, double step) {
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "sample step must be positive");
  std::vector<Point> pts;
  double scale = 0.0;
  for (const auto& e : path.elements) scale = std::max(scale, element_length(e));
  const double eps = 1e-12 * std::max(scale, 1.0);
  auto push = [&](Point p) {
    if (pts.empty() || distance(pts.back(), p) > eps) pts.push_back(p);
  };
  for (const auto& e : path.elements) {
    const double len = element_length(e);
    const auto pieces = static_cast<std::int64_t>(std::ceil(len / step));
    push(start_point(e));
    for (std::int64_t i = 1; i < pieces; ++i) {
      push(point_at_length(e, len * static_cast<double>(i) / static_cast<double>(pieces)));
    }
    push(end_point(e));
  }
  if (path.closed && pts.size() > 1 && distance(pts.front(), pts.back()) <= eps) pts.pop_back();
  return pts;
}

namespace {

int orient(Point a, Point b, Point c) {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

bool on_segment(Point a, Point b, Point p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_intersect(Point p1, Point p2, Point q1, Point q2) {
  if (std::max(p1.x, p2.x) < std::min(q1.x, q2.x) || std::max(q1.x, q2.x) < std::min(p1.x, p2.x) ||
      std::max(p1.y, p2.y) < std::min(q1.y, q2.y) || std::max(q1.y, q2.y) < std::min(p1.y, p2.y)) {
    return false;
  }
  const int o1 = orient(p1, p2, q1);
  const int o2 = orient(p1, p2, q2);
  const int o3 = orient(q1, q2, p1);
  const int o4 = orient(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

}  // namespace

bool is_simple(const TracePath& path, double sample_step) {
  const std::vector<Point> pts = flatten(path, sample_step);
  const std::size_t n = pts.size();
  if (n < 4) return true;
  const std::size_t segs = path.closed ? n : n - 1;

  double min_x = pts[0].x, max_x = pts[0].x, min_y = pts[0].y, max_y = pts[0].y;
  double longest = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    min_x = std::min(min_x, pts[i].x);
    max_x = std::max(max_x, pts[i].x);
    min_y = std::min(min_y, pts[i].y);
    max_y = std::max(max_y, pts[i].y);
  }
  for (std::size_t i = 0; i < segs; ++i) longest = std::max(longest, distance(pts[i], pts[(i + 1) % n]));
  const double cell = std::max({2.0 * sample_step, longest, 1e-12});
  const auto cols = static_cast<std::int64_t>((max_x - min_x) / cell) + 1;

  std::vector<std::pair<std::int64_t, std::uint32_t>> buckets;
  buckets.reserve(segs * 2);
  for (std::size_t i = 0; i < segs; ++i) {
    const Point a = pts[i];
    const Point b = pts[(i + 1) % n];
    const auto x0 = static_cast<std::int64_t>((std::min(a.x, b.x) - min_x) / cell);
    const auto x1 = static_cast<std::int64_t>((std::max(a.x, b.x) - min_x) / cell);
    const auto y0 = static_cast<std::int64_t>((std::min(a.y, b.y) - min_y) / cell);
    const auto y1 = static_cast<std::int64_t>((std::max(a.y, b.y) - min_y) / cell);
    for (auto y = y0; y <= y1; ++y) {
      for (auto x = x0; x <= x1; ++x) buckets.emplace_back(y * cols + x, static_cast<std::uint32_t>(i));
    }
  }
  std::sort(buckets.begin(), buckets.end());

  auto adjacent = [&](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    if (j - i == 1) return true;
    return path.closed && i == 0 && j == segs - 1;
  };
  for (std::size_t lo = 0; lo < buckets.size();) {
    std::size_t hi = lo;
    while (hi < buckets.size() && buckets[hi].first == buckets[lo].first) ++hi;
    for (std::size_t p = lo; p < hi; ++p) {
      for (std::size_t q = p + 1; q < hi; ++q) {
        const std::size_t i = buckets[p].second;
        const std::size_t j = buckets[q].second;
        if (i == j || adjacent(i, j)) continue;
        if (segments_intersect(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n])) return false;
      }
    }
    lo = hi;
  }
  return true;
}

}  // namespace apollo
