#pragma once

#include <span>
#include <vector>

#include "apollo/geometry.hpp"
#include "apollo/tracer.hpp"

namespace apollo {

enum class SegmentKind { Arc, Excursion };

struct Segment {
  SegmentKind kind = SegmentKind::Arc;
  int child = -1;  // excursion segments: SegmentTree node index
};

struct SegmentNode {
  NodeRef ref;
  std::vector<Segment> segments;  // 2k + 1 entries, excursions at odd indices

  int count() const { return static_cast<int>(segments.size()); }
};

// Index-aligned with the TraceTree it was split from.
struct SegmentTree {
  std::vector<SegmentNode> nodes;
};

SegmentTree segment_split(const TraceTree& tree);

// Index of the equal-width sub-interval of [0, 1) holding t.
int locate(double t, int segments);

struct Digit {
  int digit = 0;
  int base = 1;

  friend bool operator==(const Digit&, const Digit&) = default;
};

// Mixed-base address of a parameter value. The prefix of digits fixes a
// nested sub-interval of [0, 1) of width prod(1 / base).
struct Address {
  std::vector<Digit> digits;

  double width() const;
  // Left end of the sub-interval.
  double lower() const;
  std::size_t depth() const { return digits.size(); }
};

// Descends through excursion segments until `depth` digits are produced or an
// arc segment is reached.
Address address_of(double t, const SegmentTree& tree, int depth);

// Arc-length parameterization of a closed path on [0, 1].
class ArcLengthParam {
 public:
  explicit ArcLengthParam(const TracePath& path);

  Point at(double t) const;
  double total_length() const { return total_; }

 private:
  const TracePath* path_;
  std::vector<double> cumulative_;  // length before element i
  double total_ = 0.0;
};

Point point_at(const TracePath& path, double t);

// Points along the path spaced at most `step` apart (arc length).
std::vector<Point> sample_path(const TracePath& path, double step);

double hausdorff(std::span<const Point> a, std::span<const Point> b);
double hausdorff(const TracePath& a, const TracePath& b, double sample_step);

// Largest distance from a grid point strictly inside `outer` to the nearest
// path sample. `sample_step` of zero means path.delta.
double density_gap(const TracePath& path, const Circle& outer, double grid_step,
                   double sample_step = 0.0);

struct ConvergenceEntry {
  int n = 0;
  double r_min = 0.0;
  double hausdorff_prev = 0.0;  // NaN for the first entry
  double density_gap = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceEntry> entries;
};

}  // namespace apollo
