#include "apollo/parametrize.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point.hpp>
#include <boost/geometry/index/rtree.hpp>

#include "apollo/error.hpp"

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;

namespace apollo {

SegmentTree segment_split(const TraceTree& tree) {
  SegmentTree out;
  out.nodes.resize(tree.nodes.size());
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const TraceNode& tn = tree.nodes[i];
    SegmentNode& sn = out.nodes[i];
    sn.ref = tn.ref;
    sn.segments.push_back({SegmentKind::Arc, -1});
    for (const Excursion& ex : tn.excursions) {
      sn.segments.push_back({SegmentKind::Excursion, ex.child});
      sn.segments.push_back({SegmentKind::Arc, -1});
    }
  }
  return out;
}

int locate(double t, int segments) {
  if (segments < 1) throw Error(ErrorCode::InvalidArgument, "segment count must be positive");
  if (!(t >= 0.0) || !(t < 1.0)) throw Error(ErrorCode::InvalidArgument, "t must lie in [0, 1)");
  const int idx = static_cast<int>(std::floor(segments * t));
  return std::min(idx, segments - 1);
}

double Address::width() const {
  double w = 1.0;
  for (const Digit& d : digits) w /= d.base;
  return w;
}

double Address::lower() const {
  double lo = 0.0;
  double w = 1.0;
  for (const Digit& d : digits) {
    w /= d.base;
    lo += d.digit * w;
  }
  return lo;
}

Address address_of(double t, const SegmentTree& tree, int depth) {
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "depth must be at least 1");
  if (tree.nodes.empty()) throw Error(ErrorCode::InvalidArgument, "empty segment tree");
  Address addr;
  int node = 0;
  double local = t;
  while (static_cast<int>(addr.digits.size()) < depth) {
    const SegmentNode& sn = tree.nodes[static_cast<std::size_t>(node)];
    const int base = sn.count();
    const int digit = locate(local, base);
    addr.digits.push_back({digit, base});
    local = std::clamp(local * base - digit, 0.0, std::nextafter(1.0, 0.0));
    const Segment& seg = sn.segments[static_cast<std::size_t>(digit)];
    if (seg.kind == SegmentKind::Arc) break;
    node = seg.child;
  }
  return addr;
}

ArcLengthParam::ArcLengthParam(const TracePath& path) : path_(&path) {
  if (path.elements.empty()) throw Error(ErrorCode::InvalidArgument, "empty path");
  cumulative_.reserve(path.elements.size());
  for (const auto& e : path.elements) {
    cumulative_.push_back(total_);
    total_ += element_length(e);
  }
}

Point ArcLengthParam::at(double t) const {
  if (!(t >= 0.0) || !(t <= 1.0)) throw Error(ErrorCode::InvalidArgument, "t must lie in [0, 1]");
  const double s = t * total_;
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  const auto i = static_cast<std::size_t>(std::distance(cumulative_.begin(), it)) - 1;
  const auto& e = path_->elements[i];
  return point_at_length(e, std::min(s - cumulative_[i], element_length(e)));
}

Point point_at(const TracePath& path, double t) { return ArcLengthParam(path).at(t); }

std::vector<Point> sample_path(const TracePath& path, double step) {
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "sample step must be positive");
  std::vector<Point> pts;
  for (const auto& e : path.elements) {
    const double len = element_length(e);
    const auto pieces = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(len / step)));
    for (std::int64_t i = 0; i < pieces; ++i) {
      pts.push_back(point_at_length(e, len * static_cast<double>(i) / static_cast<double>(pieces)));
    }
  }
  if (!path.elements.empty()) pts.push_back(end_point(path.elements.back()));
  return pts;
}

namespace {

using BPoint = bg::model::point<double, 2, bg::cs::cartesian>;
using Index = bgi::rtree<BPoint, bgi::rstar<16>>;

Index make_index(std::span<const Point> pts) {
  std::vector<BPoint> v;
  v.reserve(pts.size());
  for (const Point& p : pts) v.emplace_back(p.x, p.y);
  return Index(v.begin(), v.end());
}

double nearest_distance(const Index& idx, Point p) {
  std::vector<BPoint> hit;
  idx.query(bgi::nearest(BPoint(p.x, p.y), 1), std::back_inserter(hit));
  if (hit.empty()) return std::numeric_limits<double>::infinity();
  return distance(p, Point{bg::get<0>(hit[0]), bg::get<1>(hit[0])});
}

double directed_hausdorff(std::span<const Point> from, const Index& to) {
  double worst = 0.0;
  for (const Point& p : from) worst = std::max(worst, nearest_distance(to, p));
  return worst;
}

}  // namespace

double hausdorff(std::span<const Point> a, std::span<const Point> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::InvalidArgument, "empty point set");
  const Index ia = make_index(a);
  const Index ib = make_index(b);
  return std::max(directed_hausdorff(a, ib), directed_hausdorff(b, ia));
}

double hausdorff(const TracePath& a, const TracePath& b, double sample_step) {
  const auto pa = sample_path(a, sample_step);
  const auto pb = sample_path(b, sample_step);
  return hausdorff(pa, pb);
}

double density_gap(const TracePath& path, const Circle& outer, double grid_step,
                   double sample_step) {
  if (!(grid_step > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid step must be positive");
  const double step = sample_step > 0.0 ? sample_step : path.delta;
  const auto samples = sample_path(path, step);
  const Index idx = make_index(samples);

  const double r = outer.radius;
  const auto half = static_cast<std::int64_t>(std::floor(r / grid_step));
  double worst = 0.0;
  for (std::int64_t iy = -half; iy <= half; ++iy) {
    for (std::int64_t ix = -half; ix <= half; ++ix) {
      const Point p = outer.center + Point{ix * grid_step, iy * grid_step};
      if (!(distance(p, outer.center) < r)) continue;
      worst = std::max(worst, nearest_distance(idx, p));
    }
  }
  return worst;
}

}  // namespace apollo
