#include "apollo/gasket.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

#include "apollo/error.hpp"

namespace apollo {

std::string_view to_string(SeedKind kind) noexcept {
  switch (kind) {
    case SeedKind::TwoEqual: return "two-equal";
    case SeedKind::ThreeEqual: return "three-equal";
    case SeedKind::Custom: return "custom";
  }
  return "two-equal";
}

SeedKind parse_seed_kind(std::string_view name) {
  if (name == "two-equal") return SeedKind::TwoEqual;
  if (name == "three-equal") return SeedKind::ThreeEqual;
  if (name == "custom") return SeedKind::Custom;
  throw Error(ErrorCode::InvalidArgument, "unknown seed style '" + std::string(name) + "'");
}

namespace {

// Smallest r_min accepted relative to the outer radius.
constexpr double kRMinFloor = 1e-6;

struct SeedLayout {
  double r1;
  double r2;
  double placement_deg;
};

SeedLayout layout_for(const SeedStyle& style, double outer_radius) {
  switch (style.kind) {
    case SeedKind::TwoEqual:
      return {outer_radius / 2.0, outer_radius / 2.0, 180.0};
    case SeedKind::ThreeEqual: {
      const double r = kThreeEqualRatio * outer_radius;
      return {r, r, 150.0 + style.rotation_deg};
    }
    case SeedKind::Custom:
      return {style.r1, style.r2, style.placement_deg};
  }
  return {outer_radius / 2.0, outer_radius / 2.0, 180.0};
}

Point centroid_of_contacts(const Gasket& g, const std::array<NodeId, 3>& ids) {
  const Circle& a = g.node(ids[0]).circle;
  const Circle& b = g.node(ids[1]).circle;
  const Circle& c = g.node(ids[2]).circle;
  const double tol = g.tolerance();
  return (tangency_point(a, b, tol) + tangency_point(b, c, tol) + tangency_point(a, c, tol)) / 3.0;
}

// The unique Descartes child lying in `gap`.
Circle gap_child(const Gasket& g, const Gap& gap) {
  const Circle& a = g.node(gap.ids[0]).circle;
  const Circle& b = g.node(gap.ids[1]).circle;
  const Circle& c = g.node(gap.ids[2]).circle;
  const double tol = g.tolerance();
  const CurvaturePair ks = descartes_curvatures(a.curvature(), b.curvature(), c.curvature());

  std::vector<Circle> cands;
  for (double k : {ks.plus, ks.minus}) {
    if (!(k > 0.0)) continue;
    for (const Circle& cand : tangent_circle_candidates(a, b, c, k, tol)) {
      if (gap.opposite) {
        const Circle& opp = g.node(*gap.opposite).circle;
        if (distance(opp.center, cand.center) < 0.5 * std::min(opp.radius, cand.radius)) continue;
      }
      if (gap.side != 0) {
        const Circle& c1 = g.node(1).circle;
        const Circle& c2 = g.node(2).circle;
        const double s = cross(c2.center - c1.center, cand.center - c1.center);
        if ((s > 0.0 ? 1 : -1) != gap.side) continue;
      }
      cands.push_back(cand);
    }
  }
  if (cands.empty()) {
    throw Error(ErrorCode::NoValidCenter,
                "gap (" + std::to_string(gap.ids[0]) + "," + std::to_string(gap.ids[1]) + "," +
                    std::to_string(gap.ids[2]) + ") has no valid Descartes child");
  }
  return *std::min_element(cands.begin(), cands.end(), [&](const Circle& l, const Circle& r) {
    return distance(l.center, gap.witness) < distance(r.center, gap.witness);
  });
}

NodeId append_child(Gasket& g, const Circle& circle, const std::array<NodeId, 3>& parents,
                    bool seed_circle) {
  const auto id = static_cast<NodeId>(g.nodes.size());
  GasketNode node;
  node.id = id;
  node.circle = circle;
  node.parents.assign(parents.begin(), parents.end());
  int gen = 0;
  for (NodeId p : parents) gen = std::max(gen, g.node(p).generation);
  node.generation = seed_circle ? 0 : gen + 1;
  for (NodeId p : parents) {
    node.neighbors.push_back(p);
    g.nodes[static_cast<std::size_t>(p)].neighbors.push_back(id);
  }
  g.nodes.push_back(std::move(node));
  return id;
}

Gap make_gap(const Gasket& g, NodeId a, NodeId b, NodeId c, std::optional<NodeId> opposite) {
  std::array<NodeId, 3> ids{a, b, c};
  std::sort(ids.begin(), ids.end());
  Gap gap;
  gap.ids = ids;
  gap.witness = centroid_of_contacts(g, ids);
  gap.opposite = opposite;
  return gap;
}

Gap seed_gap(const Gasket& g, int side) {
  const Circle& c1 = g.node(1).circle;
  const Circle& c2 = g.node(2).circle;
  const Point dir = (c2.center - c1.center) / distance(c1.center, c2.center);
  const Point contact = tangency_point(c1, c2, g.tolerance());
  Gap gap;
  gap.ids = {0, 1, 2};
  gap.witness = contact + perp(dir) * (side * 0.5 * std::min(c1.radius, c2.radius));
  gap.side = side;
  return gap;
}

}  // namespace

Gasket initial_configuration(double outer_radius, const SeedStyle& style) {
  return initial_configuration(Circle{{0.0, 0.0}, outer_radius, true}, style);
}

Gasket initial_configuration(const Circle& outer_in, const SeedStyle& style) {
  const double big_r = outer_in.radius;
  if (!(big_r > 0.0) || !std::isfinite(big_r)) {
    throw Error(ErrorCode::InvalidSeed, "outer radius must be positive");
  }
  const Circle outer{outer_in.center, big_r, true};
  const SeedLayout lay = layout_for(style, big_r);
  const double tol = kRelTol * big_r;
  if (!(lay.r1 > 0.0) || !(lay.r2 > 0.0) || lay.r1 + lay.r2 > big_r + tol) {
    throw Error(ErrorCode::InvalidSeed, "seed radii must be positive and fit side by side");
  }
  const double d1 = big_r - lay.r1;
  const double d2 = big_r - lay.r2;
  if (!(d1 > tol) || !(d2 > tol)) {
    throw Error(ErrorCode::InvalidSeed, "seed circle would coincide with the outer circle");
  }
  double cos_sep = (d1 * d1 + d2 * d2 - (lay.r1 + lay.r2) * (lay.r1 + lay.r2)) / (2.0 * d1 * d2);
  if (cos_sep < -1.0 - 1e-12 || cos_sep > 1.0 + 1e-12) {
    throw Error(ErrorCode::InvalidSeed, "seed circles cannot be mutually tangent");
  }
  cos_sep = std::clamp(cos_sep, -1.0, 1.0);
  const double sep_deg = to_degrees(std::acos(cos_sep));

  const Circle c1{on_circle(outer.center, d1, lay.placement_deg), lay.r1, false};
  const Circle c2{on_circle(outer.center, d2, lay.placement_deg - sep_deg), lay.r2, false};
  if (!is_tangent(outer, c1, tol) || !is_tangent(outer, c2, tol) || !is_tangent(c1, c2, tol)) {
    throw Error(ErrorCode::InvalidSeed, "seed circles fail the mutual tangency check");
  }

  Gasket g;
  g.seed = style;
  g.seed_count = style.kind == SeedKind::ThreeEqual ? 4 : 3;
  g.nodes.resize(3);
  const Circle circles[3] = {outer, c1, c2};
  for (NodeId i = 0; i < 3; ++i) {
    auto& n = g.nodes[static_cast<std::size_t>(i)];
    n.id = i;
    n.circle = circles[i];
    n.generation = 0;
    for (NodeId j = 0; j < 3; ++j) {
      if (j != i) n.neighbors.push_back(j);
    }
  }
  return g;
}

Gasket complete(const Gasket& seed, double r_min) {
  if (seed.nodes.size() < 3) {
    throw Error(ErrorCode::InvalidSeed, "gasket has fewer than three seed circles");
  }
  if (!(r_min > 0.0) || !std::isfinite(r_min)) {
    throw Error(ErrorCode::InvalidArgument, "r_min must be positive");
  }
  if (r_min < kRMinFloor * seed.outer().radius) {
    throw Error(ErrorCode::InvalidArgument, "r_min is below the resolution floor");
  }

  Gasket g;
  g.seed = seed.seed;
  g.seed_count = seed.seed_count;
  g.r_min = r_min;
  g.nodes.assign(seed.nodes.begin(), seed.nodes.begin() + 3);
  for (NodeId i = 0; i < 3; ++i) {
    auto& n = g.nodes[static_cast<std::size_t>(i)];
    n.interior.reset();
    n.parents.clear();
    n.generation = 0;
    n.neighbors.clear();
    for (NodeId j = 0; j < 3; ++j) {
      if (j != i) n.neighbors.push_back(j);
    }
  }

  std::deque<Gap> queue;
  if (g.seed.kind == SeedKind::ThreeEqual) {
    const Circle third = gap_child(g, seed_gap(g, -1));
    const NodeId id = append_child(g, third, {0, 1, 2}, true);
    // Central gap, then the outer gaps counter-clockwise from the top.
    queue.push_back(make_gap(g, 1, 2, id, std::nullopt));
    queue.push_back(make_gap(g, 0, 1, 2, id));
    queue.push_back(make_gap(g, 0, 1, id, 2));
    queue.push_back(make_gap(g, 0, 2, id, 1));
  } else {
    queue.push_back(seed_gap(g, +1));
    queue.push_back(seed_gap(g, -1));
  }

  while (!queue.empty()) {
    const Gap gap = queue.front();
    queue.pop_front();
    const Circle child = gap_child(g, gap);
    if (child.radius < r_min) {
      g.frontier.push_back({gap, child.radius});
      continue;
    }
    const auto [a, b, c] = gap.ids;
    const NodeId d = append_child(g, child, gap.ids, false);
    queue.push_back(make_gap(g, a, b, d, c));
    queue.push_back(make_gap(g, a, c, d, b));
    queue.push_back(make_gap(g, b, c, d, a));
  }
  return g;
}

bool NestPolicy::admits(double host_radius, double r_min) const {
  return kThreeEqualRatio * host_radius > r_min && host_radius >= min_host_radius;
}

Gasket nest(const Gasket& g, double r_min, const NestPolicy& policy) {
  Gasket out = g;
  for (std::size_t i = 1; i < out.nodes.size(); ++i) {
    auto& node = out.nodes[i];
    node.interior.reset();
    if (!policy.admits(node.circle.radius, r_min)) continue;
    const Circle host{node.circle.center, node.circle.radius, true};
    const Gasket seed = initial_configuration(host, SeedStyle::three_equal(kInteriorRotationDeg));
    node.interior = std::make_shared<const Gasket>(nest(complete(seed, r_min), r_min, policy));
  }
  return out;
}

Gasket build_gasket(double outer_radius, const SeedStyle& style, double r_min, bool nested,
                    const NestPolicy& policy) {
  Gasket g = complete(initial_configuration(outer_radius, style), r_min);
  if (nested) g = nest(g, r_min, policy);
  return g;
}

void for_each_gasket(const Gasket& g, const std::function<void(const Gasket&, int)>& fn) {
  struct Walker {
    const std::function<void(const Gasket&, int)>& fn;
    void operator()(const Gasket& gk, int depth) const {
      fn(gk, depth);
      for (const auto& n : gk.nodes) {
        if (n.interior) (*this)(*n.interior, depth + 1);
      }
    }
  };
  Walker{fn}(g, 0);
}

std::size_t count_traceable_nodes(const Gasket& g) {
  std::size_t total = 0;
  for_each_gasket(g, [&](const Gasket& gk, int) { total += gk.nodes.size() - 1; });
  return total;
}

}  // namespace apollo
